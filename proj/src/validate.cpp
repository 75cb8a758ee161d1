#include "dimerg2/validate.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dimerg2/correlation.hpp"
#include "dimerg2/couplings.hpp"
#include "dimerg2/dynamics.hpp"
#include "dimerg2/zeros.hpp"

namespace dimerg2::validate {
namespace {

constexpr double kPi = kTwoPi / 2.0;

void add(std::vector<CheckResult>& out, const std::string& suite,
         const std::string& name, double residual, double tol) {
  out.push_back({suite, name, residual, tol, residual < tol});
}

void suite_specialfns(std::vector<CheckResult>& out) {
  using namespace specialfns;
  double worst = 0.0;
  for (int l : {0, 1, 2, 5, 10, 20, 40, 60})
    for (double x : {0.1, 1.0, 10.0, 100.0}) {
      const double w = sph_bessel_j(l, x) * sph_bessel_y_deriv(l, x) -
                       sph_bessel_j_deriv(l, x) * sph_bessel_y(l, x);
      worst = std::max(worst, std::abs(w * x * x - 1.0));
    }
  add(out, "specialfns", "bessel wronskian", worst, 1e-10);

  worst = 0.0;
  for (double x : {0.5, 2.0, 30.0}) {
    const auto h = sph_hankel1_table(60, x);
    for (int l = 1; l < 60; ++l)
      worst = std::max(worst, std::abs(h[l + 1] + h[l - 1] -
                                       (2.0 * l + 1.0) / x * h[l]) /
                                  std::abs(h[l + 1]));
  }
  add(out, "specialfns", "hankel recurrence", worst, 1e-10);

  worst = 0.0;
  for (int l = 1; l <= 30; ++l)
    for (double x : {-0.9, -0.3, 0.2, 0.7}) {
      const double sign = (l % 2 == 0) ? -1.0 : 1.0;
      worst = std::max(worst, std::abs(legendre_fl(l, -x) - sign * legendre_fl(l, x)) /
                                  std::max(1.0, std::abs(legendre_fl(l, x))));
    }
  add(out, "specialfns", "legendre derivative parity", worst, 1e-11);

  const double x = 0.05;
  const double qs = (2.0 / 3.0) * x * x * x * (2.13 - 1.0) / (2.13 + 2.0);
  add(out, "specialfns", "mie quasistatic dipole",
      std::abs(std::abs(mie_rTM(1, {2.13, 0.0}, x)) - qs) / qs, 0.02);
  add(out, "specialfns", "mie large-l decay",
      std::abs(mie_rTM(30, {2.13, 0.0}, 3.04)), 1e-12);
}

void suite_couplings(std::vector<CheckResult>& out) {
  using namespace couplings;
  const Environment mirror = Environment::perfect_mirror();
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double z2 = 1.0 + 1.5 * k / 49.0;
    const CouplingSet c = couplings_mirror(0.6, z2);
    worst = std::max(worst,
                     std::abs(gamma_farfield_integral(mirror, 0.6, z2) - c.gamma12));
    worst = std::max(worst,
                     std::abs(gamma_farfield_integral(mirror, z2, z2) - c.gamma22));
  }
  add(out, "couplings", "mirror closed forms vs quadrature", worst, 1e-6);

  add(out, "couplings", "free-space purcell factor",
      std::abs(gamma_farfield_integral(Environment::free_space(), 0.4, 0.4) - 1.0),
      1e-8);

  const double R = 200.0 / (kTwoPi * kHbarC_eV_nm / 3.0);
  const double b = 300.0 / (kTwoPi * kHbarC_eV_nm / 3.0);
  const CouplingSet lo = couplings_sphere({-5.0, 0.1}, R, b, 60);
  const CouplingSet hi = couplings_sphere({-5.0, 0.1}, R, b, 120, true);
  add(out, "couplings", "sphere series truncation",
      std::abs(lo.gamma11 - hi.gamma11) + std::abs(lo.gamma12 - hi.gamma12) +
          std::abs(lo.g12 - hi.g12),
      1e-10);
  add(out, "couplings", "sphere eps->1 continuity",
      std::abs(couplings_sphere({1.0 + 1e-10, 0.0}, R, b).gamma12 -
               couplings_free(2.0 * b).gamma12),
      1e-8);
}

void suite_dynamics(std::vector<CheckResult>& out) {
  using namespace dynamics;
  const auto cpl = couplings::couplings_mirror(0.6, 0.8);
  const DriveConfig sym{cpl.g12, {1.0, 0.0}, {1.0, 0.0}};
  const DriveConfig asym{-cpl.g12, {0.1, 0.0}, {-0.1, 0.0}};

  double worst_rk4 = 0.0, worst_phys = 0.0, worst_res = 0.0;
  Matrix4 ground = Matrix4::Zero();
  ground(0, 0) = 1.0;
  for (const DriveConfig& d : {sym, asym}) {
    const auto gen = build_generator(cpl, d);
    const auto ss = steady_state(gen);
    worst_res = std::max(worst_res, ss.residual);
    worst_rk4 = std::max(worst_rk4, (ss.rho - evolve_oracle(gen, ground, 200.0, 0.002))
                                        .cwiseAbs()
                                        .maxCoeff());
    worst_phys = std::max(worst_phys, std::abs(ss.rho.trace().real() - 1.0));
    worst_phys =
        std::max(worst_phys, (ss.rho - ss.rho.adjoint()).cwiseAbs().maxCoeff());
  }
  add(out, "dynamics", "steady state vs RK4 evolution", worst_rk4, 1e-6);
  add(out, "dynamics", "generator residual at steady state", worst_res, 1e-10);
  add(out, "dynamics", "trace and hermiticity", worst_phys, 1e-10);

  DriveConfig off;
  const auto dark = steady_state(build_generator(cpl, off));
  add(out, "dynamics", "undriven steady state is |gg>",
      (dark.rho - ground).cwiseAbs().maxCoeff(), 1e-12);
}

void suite_zeros(std::vector<CheckResult>& out) {
  DimerConfig d;
  d.z1 = 0.0;
  d.z2 = 1.5;
  const greens::PathEvaluator paths(d, Environment::free_space());
  const auto locus =
      zeros::zero_locus(paths, AngularGrid::uniform(0.0, kPi, 361));
  double worst_phase = 0.0, worst_amp = 0.0, worst_res = 0.0;
  for (const auto& f : locus.expanded(zeros::ZeroClass::Interference)) {
    for (std::size_t k = 0; k < f.vertices.size(); ++k) {
      const auto& v = f.vertices[k];
      const double arg =
          kTwoPi * 1.5 * std::abs(std::cos(v.x()) - std::cos(v.y()));
      worst_phase = std::max(
          worst_phase, std::abs(arg - kPi * std::round(arg / kPi)));
      worst_amp = std::max(
          worst_amp, std::abs(std::abs(paths.psi1(v.x()) * paths.psi2(v.y())) -
                              std::abs(paths.psi1(v.y()) * paths.psi2(v.x()))));
      worst_res = std::max(worst_res, f.residuals[k]);
    }
  }
  add(out, "zeros", "free-space odd-pi phase condition", worst_phase, 1e-8);
  add(out, "zeros", "amplitude matching at vertices", worst_amp, 1e-8);
  add(out, "zeros", "vertex |Psi|^2 after refinement", worst_res, 1e-20);

  const auto pts = zeros::eps_independent_zeros(1.1);
  double worst_group = 0.0;
  int verified = 0;
  for (const auto& p : pts.points)
    if (p.verified) {
      ++verified;
      worst_group = std::max(worst_group, p.max_group_abs);
    }
  add(out, "zeros", "eps-independent group residuals", worst_group, 1e-12);
  add(out, "zeros", "eps-independent count at z12=1.1",
      std::abs(verified - 2.0), 0.5);
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (all || suite == "specialfns") suite_specialfns(out);
  if (all || suite == "couplings") suite_couplings(out);
  if (all || suite == "dynamics") suite_dynamics(out);
  if (all || suite == "zeros") suite_zeros(out);
  if (out.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
  return out;
}

std::string report_text(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "[%s] %s/%s: residual %.3e (tol %.0e)\n",
                  r.pass ? "PASS" : "FAIL", r.suite.c_str(), r.name.c_str(),
                  r.residual, r.tolerance);
    out << buf;
  }
  return out.str();
}

std::string report_json(const std::vector<CheckResult>& results) {
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& r : results)
    checks.push_back({{"suite", r.suite},
                      {"name", r.name},
                      {"residual", r.residual},
                      {"tolerance", r.tolerance},
                      {"pass", r.pass}});
  nlohmann::ordered_json j;
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

}  // namespace dimerg2::validate
