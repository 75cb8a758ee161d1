#pragma once

#include <vector>

#include "dimerg2/specialfns.hpp"
#include "dimerg2/types.hpp"

// Environment-specific far-field amplitude factors. The radial envelope
// e^{ik0 r}/(4 pi r) is factored out everywhere; path amplitudes psi carry
// the optical-path phases and image/multipole weights, polarization factors
// U carry the remaining direction dependence.
namespace dimerg2::greens {

// Free space, axial emitter at height z (lambda0 units): psi = e^{-ik0 z cos}.
Complex psi_free(double theta, double z);

// Vertical dipole above a substrate: direct wave plus Fresnel-weighted image,
//   psi = e^{-ik0 z cos} + r_p(theta) e^{+ik0 z cos},
// which for a perfect mirror reduces to 2 cos(k0 z cos theta).
Complex psi_substrate_vertical(double theta, double z, Complex eps);
double psi_mirror_vertical(double theta, double z);

// Polarization-resolved channels for arbitrary dipole orientation above a
// substrate. The parallel theta-channel carries the image with a minus sign.
struct SubstrateChannels {
  Complex psi_theta_par;  // in-plane dipole, theta polarization
  Complex psi_theta_z;    // vertical dipole, theta polarization
  Complex psi_phi_par;    // in-plane dipole, phi polarization
};
SubstrateChannels psi_substrate_components(double theta, double z, Complex eps);
SubstrateChannels psi_mirror_components(double theta, double z);

// Direction/orientation factors multiplying the channels above.
struct PolarizationFactors {
  Complex u_theta_par;  // (mu_x cos phi + mu_y sin phi) cos theta
  Complex u_theta_z;    // -mu_z sin theta
  Complex u_phi_par;    // -(mu_x sin phi - mu_y cos phi)
};
PolarizationFactors substrate_u_factors(double theta, double phi,
                                        const Eigen::Vector3d& mu);

// Free-space transverse projection [mu - r(r.mu)] in the (theta, phi) basis.
struct FreeSpaceU {
  double u_theta;  // mu . theta_hat
  double u_phi;    // mu . phi_hat
};
FreeSpaceU free_space_u(double theta, double phi, const Eigen::Vector3d& mu);

// Multipole coefficient sets of the sphere-scattered field for emitters at
// +b z (c_l) and -b z (c_tilde_l); c_tilde_l = (-1)^{l+1} c_l exactly.
struct SphereMultipoles {
  std::vector<Complex> c;
  std::vector<Complex> c_tilde;
  Complex eps;
  double k0R = 0.0;
  double k0b = 0.0;
  int l_max = 0;
  bool truncation_converged = true;  // |c_l| tail below 1e-12 of the peak

  bool empty() const { return c.empty(); }
};

// c_l = (-1)^l (2l+1) r_lTM h_l^(1)(k0 b)/(k0 b) i^{l+1}, truncated once the
// running tail drops below 1e-12 of the largest coefficient (force_full
// keeps all lmax orders).
SphereMultipoles sphere_multipoles(Complex eps, double k0R, double k0b,
                                   int lmax = 60, bool force_full = false);

enum class SphereSide { Upper, Lower };  // emitter at +b z or -b z

// Total path amplitude: free-space direct phase plus the multipole series
//   psi = e^{-+ik0 b cos} + sum_l c_l f_l(cos theta).
Complex psi_sphere(double theta, SphereSide side, const SphereMultipoles& m);

// Per-dimer dispatcher caching the sphere multipole table. Immutable after
// construction; safe to share across map-sweep workers.
class PathEvaluator {
public:
  PathEvaluator(const DimerConfig& dimer, const Environment& env,
                int lmax = 60);

  Complex psi1(double theta) const { return psi(theta, 0); }
  Complex psi2(double theta) const { return psi(theta, 1); }
  Complex psi(double theta, int emitter) const;

  // |U(theta)|^2 relative to its theta = pi/2 free-space value; vertical
  // dipoles give sin^2(theta) in every supported environment.
  double u_weight(double theta) const;

  const Environment& env() const { return env_; }
  const DimerConfig& dimer() const { return dimer_; }
  const SphereMultipoles& multipoles() const { return multipoles_; }

private:
  DimerConfig dimer_;
  Environment env_;
  SphereMultipoles multipoles_;
};

}  // namespace dimerg2::greens
