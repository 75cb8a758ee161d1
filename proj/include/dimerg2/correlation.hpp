#pragma once

#include "dimerg2/dynamics.hpp"
#include "dimerg2/greens.hpp"
#include "dimerg2/types.hpp"

// Two-photon path function, intensities, and the normalized correlation
// g2(theta, theta') assembled from path amplitudes and state correlators.
namespace dimerg2::corr {

// Psi(theta, theta') = psi1(theta) psi2(theta') + psi1(theta') psi2(theta).
Complex two_photon_amplitude(double theta, double theta_p,
                             const greens::PathEvaluator& paths);

// Directional intensity in units of the single-emitter free-space reference
// I_sd (unit excited population, theta' = pi/2): sin^2(theta) *
// sum_ij psi_i^* psi_j <s_i^+ s_j>. Vertical dipoles only.
double intensity(double theta, const dynamics::CorrelatorSet& cs,
                 const greens::PathEvaluator& paths);

// Marginal denominator of g2 at one detector: sum_ij psi_i^* psi_j <s_i^+ s_j>
// (the U factors cancel between numerator and denominator).
double g2_denominator(double theta, const dynamics::CorrelatorSet& cs,
                      const greens::PathEvaluator& paths);

// |Psi|^2 <s1+ s2+ s1 s2> / (D(theta) D(theta')). No masking; map_sweep
// applies the relative intensity floor.
double g2_eval(double theta, double theta_p, const dynamics::CorrelatorSet& cs,
               const greens::PathEvaluator& paths);

// Polarization-resolved two-photon amplitudes over a substrate (or in free
// space via eps = 1) for a shared, arbitrarily oriented dipole. Components
// indexed by the detected polarization (theta/phi) at each detector.
struct PolarizedPsi {
  Complex theta_theta;
  Complex theta_phi;
  Complex phi_theta;
  Complex phi_phi;
};
PolarizedPsi psi_polarized(double theta, double theta_p,
                           const DimerConfig& dimer, Complex eps,
                           double phi = 0.0, double phi_p = 0.0,
                           bool mirror = false);

// Channel-resolved g2 for free space (oracle for the U-cancellation in
// g2_eval): numerator summed over polarization pairs, denominators summed
// over single-detector channels.
double g2_channel_resolved_free(double theta, double theta_p,
                                const dynamics::CorrelatorSet& cs,
                                const DimerConfig& dimer, double phi = 0.0,
                                double phi_p = 0.0);

enum class MapPayload { Psi, Psi2, G2, Intensity };

struct MapRequest {
  AngularGrid grid;
  MapPayload payload = MapPayload::Psi2;
  int threads = 1;
  // Relative floor under which g2 points are masked to NaN: marginal
  // intensity below 1e-14 of the map maximum.
  double mask_floor = 1e-14;
};

// Dense deterministic evaluation; identical bytes for any thread count.
AngularMap<Complex> map_psi(const MapRequest& req,
                            const greens::PathEvaluator& paths);
AngularMap<double> map_real(const MapRequest& req,
                            const greens::PathEvaluator& paths,
                            const dynamics::CorrelatorSet* cs = nullptr);

// 1-D intensity profile over the grid's theta axis, I_sd units.
Eigen::ArrayXd intensity_profile(const AngularGrid& grid,
                                 const dynamics::CorrelatorSet& cs,
                                 const greens::PathEvaluator& paths);

}  // namespace dimerg2::corr
