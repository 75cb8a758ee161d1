#pragma once

#include <complex>
#include <vector>

#include "dimerg2/types.hpp"

// Complex-valued special functions feeding the far-field amplitudes:
// spherical Bessel/Hankel functions, Legendre derivatives, Fresnel
// coefficients, and TM Mie reflection coefficients.
namespace dimerg2::specialfns {

// Spherical Bessel function j_l(x), x > 0. Evaluated by Miller's downward
// recurrence, which is stable for l well above the turning point l ~ x.
double sph_bessel_j(int l, double x);

// Spherical Neumann function y_l(x), x > 0 (upward recurrence, stable).
double sph_bessel_y(int l, double x);

// Spherical Hankel function of the first kind, h_l^(1) = j_l + i*y_l.
Complex sph_hankel1(int l, double x);

// h_0..h_lmax in one upward sweep.
std::vector<Complex> sph_hankel1_table(int lmax, double x);

// Derivatives via f_l' = f_{l-1} - (l+1)/x * f_l.
double sph_bessel_j_deriv(int l, double x);
double sph_bessel_y_deriv(int l, double x);

// Legendre polynomial P_l(x).
template <typename Real>
Real legendre_p(int l, Real x) {
  if (l == 0) return Real(1);
  Real pm = Real(1), p = x;
  for (int k = 1; k < l; ++k) {
    const Real pn = ((2 * k + 1) * x * p - k * pm) / Real(k + 1);
    pm = p;
    p = pn;
  }
  return p;
}

// f_l(x) = dP_l/dx for l >= 1, via P'_{l+1} = P'_{l-1} + (2l+1) P_l.
template <typename Real>
Real legendre_fl(int l, Real x) {
  if (l < 1) throw std::invalid_argument("legendre_fl: l must be >= 1");
  Real p_prev = Real(1), p = x;   // P_0, P_1
  Real d_prev = Real(0), d = Real(1);  // P_0', P_1'
  for (int k = 1; k < l; ++k) {
    const Real d_next = d_prev + (2 * k + 1) * p;
    const Real p_next = ((2 * k + 1) * x * p - k * p_prev) / Real(k + 1);
    d_prev = d;
    d = d_next;
    p_prev = p;
    p = p_next;
  }
  return d;
}

// f_1..f_lmax at a single x.
std::vector<double> legendre_fl_table(int lmax, double x);

// Associated Legendre P_l^1(cos theta) = -sin(theta) f_l(cos theta)
// (Ferrers convention with the Condon-Shortley phase).
double assoc_legendre_p1(int l, double theta);

// Fresnel reflection coefficients of a planar interface,
//   r_p = (eps*cos - w) / (eps*cos + w),  r_s = (cos - w) / (cos + w),
// with w = sqrt(eps - sin^2 theta) on the branch Im(w) >= 0 so the
// transmitted wave decays. Valid for theta in [0, pi/2], Im(eps) >= 0.
Complex fresnel_rp(Complex eps, double theta);
Complex fresnel_rs(Complex eps, double theta);

struct PolarForm {
  double modulus;
  double phase;
};
PolarForm polar_form(Complex v);

// TM (electric-type) Mie reflection coefficient of a sphere with relative
// permittivity eps and size parameter x = k0*R. Defined so that a regular
// TM multipole wave of unit amplitude scatters into r_lTM times the
// outgoing wave; equals minus the textbook Mie coefficient a_l and vanishes
// identically for eps = 1. Evaluated with the logarithmic-derivative
// downward recurrence to stay bounded at large l.
Complex mie_rTM(int l, Complex eps, double x);

struct MieCoefficientTable {
  int l_max = 0;
  std::vector<Complex> rTM;  // rTM[l-1] holds order l
};
MieCoefficientTable mie_rTM_table(int lmax, Complex eps, double x);

}  // namespace dimerg2::specialfns
