#pragma once

#include "dimerg2/greens.hpp"
#include "dimerg2/types.hpp"

// Emitter decay rates and photon-mediated couplings entering the master
// equation, for vertical dipoles. All rates in gamma0 units; lengths in
// lambda0 units (k0 = 2*pi).
namespace dimerg2::couplings {

struct CouplingSet {
  double gamma11 = 1.0;
  double gamma22 = 1.0;
  double gamma12 = 0.0;
  double g12 = 0.0;
  EnvKind env = EnvKind::FreeSpace;

  // Positive-semidefinite dissipation matrix.
  bool physical() const {
    return gamma11 > 0.0 && gamma22 > 0.0 &&
           gamma12 * gamma12 <= gamma11 * gamma22 + 1e-12;
  }
};

// Free-space kernels for axially aligned vertical dipoles at distance d:
//   gamma12_0(x) =  3 (sin x - x cos x) / x^3,          x = k0 d,
//   g12_0(x)     = -(3/2) (cos x + x sin x) / x^3.
// gamma12_0 has a removable x -> 0 limit of 1 (series-evaluated); g12_0
// diverges as x -> 0 (dipole-dipole), so d = 0 is rejected.
double gamma12_free_kernel(double x);
double g12_free_kernel(double x);

CouplingSet couplings_free(double separation);

// Perfect mirror, emitters at 0 < z1 < z2: each rate is the free-space
// kernel at the direct separation plus the image contribution at z1 + z2;
// algebraically identical to the combined closed forms but free of the
// (z2^2 - z1^2)^-3 cancellation near z1 = z2.
CouplingSet couplings_mirror(double z1, double z2);

// Sphere of permittivity eps and radius R with the dimer at +-b z:
// free-space baseline at separation 2b plus TM Mie-series corrections. The
// series self-truncates once terms fall below 1e-14 of the running peak;
// force_full sums all lmax terms (used to probe the truncation tail).
CouplingSet couplings_sphere(Complex eps, double radius, double offset,
                             int lmax = 60, bool force_full = false);

// Dispatch on the environment. Finite-permittivity substrates have no
// closed-form couplings here and are rejected.
CouplingSet couplings_for(const DimerConfig& dimer, const Environment& env,
                          int lmax = 60);

// Independent oracle: gamma_ij from the far-field surface integral
//   gamma_ij / gamma0 = (3/4) Integral psi*(theta, z_i) psi(theta, z_j) sin^3 dtheta,
// over the full sphere in free space and the upper half-space above the
// mirror. Adaptive Gauss-Legendre in cos(theta).
double gamma_farfield_integral(const Environment& env, double zi, double zj,
                               double tol = 1e-12);

}  // namespace dimerg2::couplings
