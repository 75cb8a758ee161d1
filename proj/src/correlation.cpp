#include "dimerg2/correlation.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace dimerg2::corr {

Complex two_photon_amplitude(double theta, double theta_p,
                             const greens::PathEvaluator& paths) {
  return paths.psi1(theta) * paths.psi2(theta_p) +
         paths.psi1(theta_p) * paths.psi2(theta);
}

double g2_denominator(double theta, const dynamics::CorrelatorSet& cs,
                      const greens::PathEvaluator& paths) {
  const Complex p[2] = {paths.psi1(theta), paths.psi2(theta)};
  Complex sum(0.0, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sum += std::conj(p[i]) * p[j] * cs.sigma_dag_sigma(i, j);
  return sum.real();
}

double intensity(double theta, const dynamics::CorrelatorSet& cs,
                 const greens::PathEvaluator& paths) {
  if (!paths.dimer().vertical())
    throw std::invalid_argument("intensity profile requires vertical dipoles");
  return paths.u_weight(theta) * g2_denominator(theta, cs, paths);
}

double g2_eval(double theta, double theta_p, const dynamics::CorrelatorSet& cs,
               const greens::PathEvaluator& paths) {
  const Complex psi = two_photon_amplitude(theta, theta_p, paths);
  const double d1 = g2_denominator(theta, cs, paths);
  const double d2 = g2_denominator(theta_p, cs, paths);
  return std::norm(psi) * cs.double_excitation / (d1 * d2);
}

PolarizedPsi psi_polarized(double theta, double theta_p,
                           const DimerConfig& dimer, Complex eps, double phi,
                           double phi_p, bool mirror) {
  // Per-emitter channel amplitudes A_alpha(r, z_i) = sum of U * psi products;
  // Psi_ab(r, r') = A_a(r, z1) A_b(r', z2) + A_b(r', z1) A_a(r, z2).
  auto channel = [&](double th, double ph, double z) {
    const greens::SubstrateChannels c =
        mirror ? greens::psi_mirror_components(th, z)
               : greens::psi_substrate_components(th, z, eps);
    const greens::PolarizationFactors u =
        greens::substrate_u_factors(th, ph, dimer.orientation);
    struct {
      Complex a_theta, a_phi;
    } out{u.u_theta_par * c.psi_theta_par + u.u_theta_z * c.psi_theta_z,
          u.u_phi_par * c.psi_phi_par};
    return out;
  };

  const auto a1 = channel(theta, phi, dimer.z1);
  const auto a2 = channel(theta_p, phi_p, dimer.z2);
  const auto b1 = channel(theta_p, phi_p, dimer.z1);
  const auto b2 = channel(theta, phi, dimer.z2);

  return {a1.a_theta * a2.a_theta + b1.a_theta * b2.a_theta,
          a1.a_theta * a2.a_phi + b1.a_phi * b2.a_theta,
          a1.a_phi * a2.a_theta + b1.a_theta * b2.a_phi,
          a1.a_phi * a2.a_phi + b1.a_phi * b2.a_phi};
}

double g2_channel_resolved_free(double theta, double theta_p,
                                const dynamics::CorrelatorSet& cs,
                                const DimerConfig& dimer, double phi,
                                double phi_p) {
  const Complex psi_scalar[2][2] = {
      {greens::psi_free(theta, dimer.z1), greens::psi_free(theta, dimer.z2)},
      {greens::psi_free(theta_p, dimer.z1), greens::psi_free(theta_p, dimer.z2)}};
  const greens::FreeSpaceU u = greens::free_space_u(theta, phi, dimer.orientation);
  const greens::FreeSpaceU up =
      greens::free_space_u(theta_p, phi_p, dimer.orientation);

  const Complex psi = psi_scalar[0][0] * psi_scalar[1][1] +
                      psi_scalar[1][0] * psi_scalar[0][1];
  const double u_comp[2] = {u.u_theta, u.u_phi};
  const double up_comp[2] = {up.u_theta, up.u_phi};

  double numerator = 0.0;
  for (double ua : u_comp)
    for (double ub : up_comp) numerator += std::norm(ua * ub * psi);
  numerator *= cs.double_excitation;

  auto denom = [&](const Complex* p, const double* uc) {
    Complex sum(0.0, 0.0);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        sum += std::conj(p[i]) * p[j] * cs.sigma_dag_sigma(i, j);
    return (uc[0] * uc[0] + uc[1] * uc[1]) * sum.real();
  };
  return numerator / (denom(psi_scalar[0], u_comp) * denom(psi_scalar[1], up_comp));
}

namespace {

// Static row partition; the output is schedule-independent because every
// entry depends only on its own (theta, theta') pair.
template <typename Fn>
void parallel_rows(int n, int threads, Fn&& body) {
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([=]() {
      for (int i = t; i < n; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace

AngularMap<Complex> map_psi(const MapRequest& req,
                            const greens::PathEvaluator& paths) {
  const int n = req.grid.n_theta;
  AngularMap<Complex> map;
  map.grid = req.grid;
  map.env_hash = paths.env().hash();
  map.dimer_hash = paths.dimer().hash();
  map.values.resize(n, n);

  std::vector<Complex> p1(n), p2(n);
  for (int i = 0; i < n; ++i) {
    p1[i] = paths.psi1(req.grid.theta(i));
    p2[i] = paths.psi2(req.grid.theta(i));
  }
  auto* values = &map.values;
  parallel_rows(n, req.threads, [&, values](int i) {
    for (int j = 0; j < n; ++j)
      (*values)(i, j) = p1[i] * p2[j] + p1[j] * p2[i];
  });
  return map;
}

AngularMap<double> map_real(const MapRequest& req,
                            const greens::PathEvaluator& paths,
                            const dynamics::CorrelatorSet* cs) {
  const int n = req.grid.n_theta;
  AngularMap<double> map;
  map.grid = req.grid;
  map.env_hash = paths.env().hash();
  map.dimer_hash = paths.dimer().hash();

  if (req.payload == MapPayload::Intensity) {
    if (!cs) throw std::invalid_argument("intensity map needs correlators");
    map.values.resize(n, 1);
    for (int i = 0; i < n; ++i)
      map.values(i, 0) = intensity(req.grid.theta(i), *cs, paths);
    return map;
  }

  std::vector<Complex> p1(n), p2(n);
  for (int i = 0; i < n; ++i) {
    p1[i] = paths.psi1(req.grid.theta(i));
    p2[i] = paths.psi2(req.grid.theta(i));
  }

  map.values.resize(n, n);
  auto* values = &map.values;

  if (req.payload == MapPayload::Psi2) {
    parallel_rows(n, req.threads, [&, values](int i) {
      for (int j = 0; j < n; ++j)
        (*values)(i, j) = std::norm(p1[i] * p2[j] + p1[j] * p2[i]);
    });
    return map;
  }

  if (req.payload != MapPayload::G2)
    throw std::invalid_argument("map_real: unsupported payload");
  if (!cs) throw std::invalid_argument("g2 map needs correlators");

  std::vector<double> denom(n);
  double dmax = 0.0;
  for (int i = 0; i < n; ++i) {
    denom[i] = g2_denominator(req.grid.theta(i), *cs, paths);
    dmax = std::max(dmax, denom[i]);
  }
  const double floor = req.mask_floor * dmax;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double n_ee = cs->double_excitation;
  parallel_rows(n, req.threads, [&, values](int i) {
    for (int j = 0; j < n; ++j) {
      if (denom[i] < floor || denom[j] < floor) {
        (*values)(i, j) = nan;  // masked: vanishing marginal intensity
      } else {
        const Complex psi = p1[i] * p2[j] + p1[j] * p2[i];
        (*values)(i, j) = std::norm(psi) * n_ee / (denom[i] * denom[j]);
      }
    }
  });
  return map;
}

Eigen::ArrayXd intensity_profile(const AngularGrid& grid,
                                 const dynamics::CorrelatorSet& cs,
                                 const greens::PathEvaluator& paths) {
  Eigen::ArrayXd out(grid.n_theta);
  for (int i = 0; i < grid.n_theta; ++i)
    out(i) = intensity(grid.theta(i), cs, paths);
  return out;
}

}  // namespace dimerg2::corr
