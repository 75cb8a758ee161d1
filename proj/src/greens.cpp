#include "dimerg2/greens.hpp"

#include <cmath>
#include <stdexcept>

namespace dimerg2::greens {

using specialfns::fresnel_rp;
using specialfns::fresnel_rs;
using specialfns::legendre_fl_table;
using specialfns::mie_rTM;
using specialfns::sph_hankel1_table;

Complex psi_free(double theta, double z) {
  return std::polar(1.0, -kTwoPi * z * std::cos(theta));
}

Complex psi_substrate_vertical(double theta, double z, Complex eps) {
  const double phase = kTwoPi * z * std::cos(theta);
  return std::polar(1.0, -phase) + fresnel_rp(eps, theta) * std::polar(1.0, phase);
}

double psi_mirror_vertical(double theta, double z) {
  return 2.0 * std::cos(kTwoPi * z * std::cos(theta));
}

namespace {
SubstrateChannels channels_from(Complex rp, Complex rs, double theta, double z) {
  const double phase = kTwoPi * z * std::cos(theta);
  const Complex direct = std::polar(1.0, -phase);
  const Complex image = std::polar(1.0, phase);
  return {direct - rp * image, direct + rp * image, direct + rs * image};
}
}  // namespace

SubstrateChannels psi_substrate_components(double theta, double z, Complex eps) {
  return channels_from(fresnel_rp(eps, theta), fresnel_rs(eps, theta), theta, z);
}

SubstrateChannels psi_mirror_components(double theta, double z) {
  return channels_from({1.0, 0.0}, {-1.0, 0.0}, theta, z);
}

PolarizationFactors substrate_u_factors(double theta, double phi,
                                        const Eigen::Vector3d& mu) {
  const double cp = std::cos(phi), sp = std::sin(phi);
  return {
      Complex((mu.x() * cp + mu.y() * sp) * std::cos(theta), 0.0),
      Complex(-mu.z() * std::sin(theta), 0.0),
      Complex(-(mu.x() * sp - mu.y() * cp), 0.0),
  };
}

FreeSpaceU free_space_u(double theta, double phi, const Eigen::Vector3d& mu) {
  const double ct = std::cos(theta), st = std::sin(theta);
  const double cp = std::cos(phi), sp = std::sin(phi);
  const Eigen::Vector3d theta_hat(ct * cp, ct * sp, -st);
  const Eigen::Vector3d phi_hat(-sp, cp, 0.0);
  return {mu.dot(theta_hat), mu.dot(phi_hat)};
}

SphereMultipoles sphere_multipoles(Complex eps, double k0R, double k0b,
                                   int lmax, bool force_full) {
  if (!(k0b > k0R))
    throw std::invalid_argument("sphere_multipoles: emitter inside sphere");
  SphereMultipoles m;
  m.eps = eps;
  m.k0R = k0R;
  m.k0b = k0b;

  const auto h = sph_hankel1_table(lmax, k0b);
  double peak = 0.0;
  int used = 0;
  Complex il_plus_1(0.0, 1.0);  // i^{l+1} at l = 0 -> i^1
  for (int l = 1; l <= lmax; ++l) {
    il_plus_1 *= Complex(0.0, 1.0);
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;  // (-1)^l
    const Complex cl =
        sign * (2.0 * l + 1.0) * mie_rTM(l, eps, k0R) * h[l] / k0b * il_plus_1;
    m.c.push_back(cl);
    m.c_tilde.push_back(-sign * cl);  // (-1)^{l+1} c_l
    peak = std::max(peak, std::abs(cl));
    used = l;
    if (!force_full && l >= 4 && std::abs(cl) < 1e-12 * peak &&
        std::abs(m.c[l - 2]) < 1e-12 * peak)
      break;
  }
  m.l_max = used;
  m.truncation_converged =
      used < lmax || std::abs(m.c.back()) < 1e-12 * std::max(peak, 1e-300);
  return m;
}

Complex psi_sphere(double theta, SphereSide side, const SphereMultipoles& m) {
  const double c = std::cos(theta);
  const double sgn = (side == SphereSide::Upper) ? -1.0 : 1.0;
  Complex psi = std::polar(1.0, sgn * m.k0b * c);
  const auto& coeff = (side == SphereSide::Upper) ? m.c : m.c_tilde;
  const auto fl = legendre_fl_table(m.l_max, c);
  for (int l = 1; l <= m.l_max; ++l) psi += coeff[l - 1] * fl[l - 1];
  return psi;
}

PathEvaluator::PathEvaluator(const DimerConfig& dimer, const Environment& env,
                             int lmax)
    : dimer_(dimer), env_(env) {
  if (env.kind == EnvKind::Sphere)
    multipoles_ =
        sphere_multipoles(env.epsilon, kTwoPi * env.radius, kTwoPi * env.offset, lmax);
}

Complex PathEvaluator::psi(double theta, int emitter) const {
  switch (env_.kind) {
    case EnvKind::FreeSpace:
      return psi_free(theta, emitter == 0 ? dimer_.z1 : dimer_.z2);
    case EnvKind::PerfectMirror:
      return {psi_mirror_vertical(theta, emitter == 0 ? dimer_.z1 : dimer_.z2), 0.0};
    case EnvKind::Substrate:
      return psi_substrate_vertical(theta, emitter == 0 ? dimer_.z1 : dimer_.z2,
                                    env_.epsilon);
    case EnvKind::Sphere:
      return psi_sphere(theta, emitter == 0 ? SphereSide::Upper : SphereSide::Lower,
                        multipoles_);
  }
  return {0.0, 0.0};
}

double PathEvaluator::u_weight(double theta) const {
  const double s = std::sin(theta);
  return s * s;
}

}  // namespace dimerg2::greens
