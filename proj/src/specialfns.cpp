#include "dimerg2/specialfns.hpp"

#include <cmath>
#include <stdexcept>

namespace dimerg2::specialfns {
namespace {

void require_positive(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("spherical Bessel argument must be > 0");
}

// Logarithmic derivative D_l(z) = psi_l'(z)/psi_l(z) of the Riccati-Bessel
// function psi_l(z) = z j_l(z), by downward recurrence.
Complex log_derivative(int l, Complex z) {
  const int nstart = static_cast<int>(std::max<double>(l, std::abs(z))) + 26;
  Complex d(0.0, 0.0);
  for (int n = nstart; n > l; --n) {
    const Complex r = static_cast<double>(n) / z;
    d = r - 1.0 / (d + r);
  }
  // One more documented step would land on l-1; stop with D_l.
  return d;
}

}  // namespace

double sph_bessel_j(int l, double x) {
  require_positive(x);
  if (l == 0) return std::sin(x) / x;
  // Downward (Miller) recurrence from above the turning point, normalized
  // against j_0. Unnormalized values can overflow for l >> x, so rescale.
  const int nstart = std::max(l, static_cast<int>(x)) + 30;
  double fp = 0.0, f = 1e-300, target = 0.0;
  for (int n = nstart; n > 0; --n) {
    double fm = (2.0 * n + 1.0) / x * f - fp;
    fp = f;
    f = fm;
    if (n - 1 == l) target = f;
    if (std::abs(f) > 1e250) {
      f *= 1e-250;
      fp *= 1e-250;
      target *= 1e-250;
    }
  }
  return target * (std::sin(x) / x) / f;
}

double sph_bessel_y(int l, double x) {
  require_positive(x);
  double ym = -std::cos(x) / x;
  if (l == 0) return ym;
  double y = (ym - std::sin(x)) / x;
  for (int n = 1; n < l; ++n) {
    const double yn = (2.0 * n + 1.0) / x * y - ym;
    ym = y;
    y = yn;
  }
  return y;
}

Complex sph_hankel1(int l, double x) {
  require_positive(x);
  // h_0 = -i e^{ix}/x; upward recurrence is stable because y_l dominates.
  const Complex eix = std::polar(1.0, x);
  Complex hm = Complex(0.0, -1.0) * eix / x;
  if (l == 0) return hm;
  Complex h = -eix * Complex(x, 1.0) / (x * x);
  for (int n = 1; n < l; ++n) {
    const Complex hn = (2.0 * n + 1.0) / x * h - hm;
    hm = h;
    h = hn;
  }
  return h;
}

std::vector<Complex> sph_hankel1_table(int lmax, double x) {
  require_positive(x);
  std::vector<Complex> h(lmax + 1);
  const Complex eix = std::polar(1.0, x);
  h[0] = Complex(0.0, -1.0) * eix / x;
  if (lmax >= 1) h[1] = -eix * Complex(x, 1.0) / (x * x);
  for (int n = 1; n < lmax; ++n)
    h[n + 1] = (2.0 * n + 1.0) / x * h[n] - h[n - 1];
  return h;
}

double sph_bessel_j_deriv(int l, double x) {
  if (l == 0) return -sph_bessel_j(1, x);
  return sph_bessel_j(l - 1, x) - (l + 1.0) / x * sph_bessel_j(l, x);
}

double sph_bessel_y_deriv(int l, double x) {
  if (l == 0) return -sph_bessel_y(1, x);
  return sph_bessel_y(l - 1, x) - (l + 1.0) / x * sph_bessel_y(l, x);
}

std::vector<double> legendre_fl_table(int lmax, double x) {
  std::vector<double> fl(lmax);
  double p_prev = 1.0, p = x, d_prev = 0.0, d = 1.0;
  for (int k = 1; k <= lmax; ++k) {
    fl[k - 1] = d;
    const double d_next = d_prev + (2 * k + 1) * p;
    const double p_next = ((2 * k + 1) * x * p - k * p_prev) / (k + 1);
    d_prev = d;
    d = d_next;
    p_prev = p;
    p = p_next;
  }
  return fl;
}

double assoc_legendre_p1(int l, double theta) {
  return -std::sin(theta) * legendre_fl(l, std::cos(theta));
}

namespace {
Complex decaying_sqrt(Complex v) {
  Complex w = std::sqrt(v);
  if (w.imag() < 0.0 || (w.imag() == 0.0 && w.real() < 0.0)) w = -w;
  return w;
}
}  // namespace

Complex fresnel_rp(Complex eps, double theta) {
  if (eps == Complex(1.0, 0.0)) return {0.0, 0.0};  // no interface
  const double s = std::sin(theta), c = std::cos(theta);
  const Complex w = decaying_sqrt(eps - s * s);
  return (eps * c - w) / (eps * c + w);
}

Complex fresnel_rs(Complex eps, double theta) {
  if (eps == Complex(1.0, 0.0)) return {0.0, 0.0};
  const double s = std::sin(theta), c = std::cos(theta);
  const Complex w = decaying_sqrt(eps - s * s);
  return (c - w) / (c + w);
}

PolarForm polar_form(Complex v) { return {std::abs(v), std::arg(v)}; }

Complex mie_rTM(int l, Complex eps, double x) {
  if (l < 1) throw std::invalid_argument("mie_rTM: l must be >= 1");
  require_positive(x);
  if (eps == Complex(1.0, 0.0)) return {0.0, 0.0};
  Complex m = std::sqrt(eps);
  if (m.imag() < 0.0) m = -m;

  const Complex d = log_derivative(l, m * x);
  const double jl = sph_bessel_j(l, x), jlm = sph_bessel_j(l - 1, x);
  const double yl = sph_bessel_y(l, x), ylm = sph_bessel_y(l - 1, x);
  const double psi = x * jl, psim = x * jlm;
  const Complex xi = x * Complex(jl, yl), xim = x * Complex(jlm, ylm);

  // Bohren-Huffman a_l in logarithmic-derivative form; r_TM = -a_l.
  const Complex factor = d / m + static_cast<double>(l) / x;
  const Complex a = (factor * psi - psim) / (factor * xi - xim);
  return -a;
}

MieCoefficientTable mie_rTM_table(int lmax, Complex eps, double x) {
  MieCoefficientTable table;
  table.l_max = lmax;
  table.rTM.resize(lmax);
  for (int l = 1; l <= lmax; ++l) table.rTM[l - 1] = mie_rTM(l, eps, x);
  return table;
}

}  // namespace dimerg2::specialfns
