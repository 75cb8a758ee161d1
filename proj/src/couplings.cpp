#include "dimerg2/couplings.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "dimerg2/specialfns.hpp"

namespace dimerg2::couplings {
namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
struct GaussRule {
  std::vector<double> x, w;
};

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  for (int k = 0; k < n; ++k) {
    double x = std::cos(kTwoPi / 2.0 * (k + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double p = specialfns::legendre_p(n, x);
      const double dp = specialfns::legendre_fl(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dp = specialfns::legendre_fl(n, x);
    rule.x[k] = x;
    rule.w[k] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& rule20() {
  static const GaussRule r = gauss_legendre(20);
  return r;
}
const GaussRule& rule41() {
  static const GaussRule r = gauss_legendre(41);
  return r;
}

double apply_rule(const GaussRule& r, const std::function<double(double)>& f,
                  double a, double b) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t k = 0; k < r.x.size(); ++k)
    sum += r.w[k] * f(mid + half * r.x[k]);
  return half * sum;
}

double adaptive_panel(const std::function<double(double)>& f, double a,
                      double b, double tol, int depth) {
  const double coarse = apply_rule(rule20(), f, a, b);
  const double fine = apply_rule(rule41(), f, a, b);
  if (std::abs(fine - coarse) <= tol || depth >= 24) return fine;
  const double mid = 0.5 * (a + b);
  return adaptive_panel(f, a, mid, 0.5 * tol, depth + 1) +
         adaptive_panel(f, mid, b, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  return adaptive_panel(f, a, b, tol, 0);
}

}  // namespace

double gamma12_free_kernel(double x) {
  if (x < 1e-2) {
    const double x2 = x * x;  // 3(sin x - x cos x)/x^3 = 1 - x^2/10 + x^4/280 - ...
    return 1.0 - x2 / 10.0 + x2 * x2 / 280.0 - x2 * x2 * x2 / 15120.0;
  }
  return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

double g12_free_kernel(double x) {
  return -1.5 * (std::cos(x) + x * std::sin(x)) / (x * x * x);
}

CouplingSet couplings_free(double separation) {
  if (!(separation > 0.0))
    throw std::invalid_argument("couplings_free: g12 diverges at zero separation");
  const double x = kTwoPi * separation;
  return {1.0, 1.0, gamma12_free_kernel(x), g12_free_kernel(x),
          EnvKind::FreeSpace};
}

namespace {
double gamma_ii_mirror(double z) {
  const double u = 2.0 * kTwoPi * z;
  if (u == 0.0) return 2.0;
  return 1.0 + gamma12_free_kernel(u);  // image at distance 2z, equal sign
}
}  // namespace

CouplingSet couplings_mirror(double z1, double z2) {
  if (!(z1 > 0.0 && z2 > 0.0))
    throw std::invalid_argument("couplings_mirror: heights must be positive");
  if (z1 == z2)
    throw std::invalid_argument("couplings_mirror: g12 diverges at z1 = z2");
  const double xd = kTwoPi * std::abs(z2 - z1);  // direct path
  const double xs = kTwoPi * (z1 + z2);          // image path
  return {gamma_ii_mirror(z1), gamma_ii_mirror(z2),
          gamma12_free_kernel(xd) + gamma12_free_kernel(xs),
          g12_free_kernel(xd) + g12_free_kernel(xs), EnvKind::PerfectMirror};
}

CouplingSet couplings_sphere(Complex eps, double radius, double offset,
                             int lmax, bool force_full) {
  if (!(offset > radius))
    throw std::invalid_argument("couplings_sphere: emitter inside sphere");
  const double k0R = kTwoPi * radius, k0b = kTwoPi * offset;
  const auto h = specialfns::sph_hankel1_table(lmax, k0b);

  Complex sum_ii(0.0, 0.0), sum_cross(0.0, 0.0);
  double peak = 0.0;
  for (int l = 1; l <= lmax; ++l) {
    const Complex hb = h[l] / k0b;
    const Complex term =
        (2.0 * l + 1.0) * l * (l + 1.0) * specialfns::mie_rTM(l, eps, k0R) * hb * hb;
    sum_ii += term;
    sum_cross += (l % 2 == 0 ? -1.0 : 1.0) * term;  // (-1)^{l+1}
    peak = std::max(peak, std::abs(term));
    if (!force_full && l >= 4 && std::abs(term) < 1e-14 * peak) break;
  }

  const CouplingSet base = couplings_free(2.0 * offset);
  CouplingSet out;
  out.env = EnvKind::Sphere;
  out.gamma11 = out.gamma22 = 1.0 + (Complex(0.0, 1.5) * sum_ii).imag();
  out.gamma12 = base.gamma12 + (Complex(0.0, 1.5) * sum_cross).imag();
  out.g12 = base.g12 - (Complex(0.0, 0.75) * sum_cross).real();
  return out;
}

CouplingSet couplings_for(const DimerConfig& dimer, const Environment& env,
                          int lmax) {
  switch (env.kind) {
    case EnvKind::FreeSpace:
      return couplings_free(dimer.separation(env));
    case EnvKind::PerfectMirror:
      return couplings_mirror(dimer.z1, dimer.z2);
    case EnvKind::Sphere:
      return couplings_sphere(env.epsilon, env.radius, env.offset, lmax);
    case EnvKind::Substrate:
      throw std::invalid_argument(
          "couplings are not available for a finite-permittivity substrate; "
          "only |Psi|^2 minima maps are supported there");
  }
  return {};
}

double gamma_farfield_integral(const Environment& env, double zi, double zj,
                               double tol) {
  // gamma_ij/gamma0 = (3/4) Int psi_i^* psi_j (1 - u^2) du over u = cos(theta);
  // the mirror integral runs over the upper half-space only.
  if (env.kind == EnvKind::FreeSpace) {
    auto f = [&](double u) {
      const double a = kTwoPi * (zi - zj) * u;
      return std::cos(a) * (1.0 - u * u);  // Re(psi_i^* psi_j)
    };
    return 0.75 * integrate(f, -1.0, 1.0, tol);
  }
  if (env.kind == EnvKind::PerfectMirror) {
    auto f = [&](double u) {
      return 4.0 * std::cos(kTwoPi * zi * u) * std::cos(kTwoPi * zj * u) *
             (1.0 - u * u);
    };
    return 0.75 * integrate(f, 0.0, 1.0, tol);
  }
  throw std::invalid_argument(
      "gamma_farfield_integral requires a lossless environment (free space or mirror)");
}

}  // namespace dimerg2::couplings
