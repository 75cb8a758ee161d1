#pragma once

#include <optional>
#include <vector>

#include "dimerg2/correlation.hpp"
#include "dimerg2/greens.hpp"
#include "dimerg2/types.hpp"

// Geometric-antibunching structure: Psi = 0 loci, |Psi|^2 minima masks,
// analytic eps-independent zeros, and trivial (quenching) zeros.
namespace dimerg2::zeros {

enum class ZeroClass { Interference, TrivialQuenching, EpsIndependent };

const char* to_string(ZeroClass c);

struct ZeroFeature {
  ZeroClass classification = ZeroClass::Interference;
  std::vector<Eigen::Vector2d> vertices;  // (theta, theta') in radians
  std::vector<double> residuals;          // |Psi|^2 at each vertex
  // Worst | |psi1 psi2'| - |psi1' psi2| | over the vertices: a zero needs
  // matched single-photon amplitudes along the two exchanged pathways.
  double max_amplitude_mismatch = 0.0;
  // Swap-mirrored partner exists but is stored only once; false when the
  // feature maps onto itself under (theta, theta') exchange.
  bool has_unstored_partner = false;
};

struct ZeroLocus {
  std::vector<ZeroFeature> features;

  // Feature count with unstored symmetric partners re-expanded.
  int expanded_count(ZeroClass c) const;
  // All features of a class including reconstructed partners.
  std::vector<ZeroFeature> expanded(ZeroClass c) const;
};

// Extract the Psi = 0 locus over the grid. Free space and the perfect
// mirror admit an exactly real reduction of Psi, traced by marching squares
// with per-vertex bisection down to |Psi| < 1e-10; isolated machine-zero
// nodes (collapsed loci) are reported as single-vertex features. Complex
// environments fall back to |Psi|^2 valley tracing: per-component valley
// polylines plus a locally minimized vertex.
ZeroLocus zero_locus(const greens::PathEvaluator& paths,
                     const AngularGrid& grid,
                     double valley_threshold = 1e-2);

struct EpsIndependentPoint {
  int n = 0;
  int m = 0;
  double theta = 0.0;
  double theta_p = 0.0;
  bool verified = false;     // all four Psi groups < 1e-12 across the eps set
  double max_group_abs = 0;  // worst grouped-term magnitude encountered
};

struct EpsIndependentZeros {
  bool admitted = true;  // false where the geometry forbids them (sphere)
  std::vector<EpsIndependentPoint> points;
};

// Candidate angles cos(theta) = n/(2 z12), cos(theta') = m/(2 z12) with
// 0 < n, m < 2 z12 and n != m, each verified numerically by evaluating the
// four grouped terms of the substrate Psi for eps in {perfect mirror, 2.13,
// -5+0.1i}. Candidates are reported with their verification outcome rather
// than filtered by any parity rule.
EpsIndependentZeros eps_independent_zeros(double z12);

// Environment-aware wrapper: returns admitted = false for the sphere.
EpsIndependentZeros eps_independent_zeros(const DimerConfig& dimer,
                                          const Environment& env);

struct TrivialZero {
  int emitter = 0;  // 1 or 2
  int order = 0;    // n in cos(theta) = (2n+1) / (4 z_i)
  double theta = 0.0;
};

// Diagonal quenching zeros of the mirror dimer: cos(k0 z_i cos theta) = 0.
std::vector<TrivialZero> trivial_zeros(const DimerConfig& dimer);

struct MinimaMask {
  AngularGrid grid;
  double threshold = 1e-2;
  Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> mask;
  Eigen::ArrayXXi labels;  // 8-connected components, 0 = background
  int n_components = 0;

  double area_fraction() const {
    return mask.count() / static_cast<double>(mask.size());
  }
  int label_at(double theta, double theta_p) const;
};

MinimaMask minima_map(const AngularMap<double>& psi2, double threshold = 1e-2);

// Mask combinators for cross-permittivity comparisons (same grid required).
int intersection_count(const std::vector<const MinimaMask*>& masks);
int symmetric_difference_count(const MinimaMask& a, const MinimaMask& b);

}  // namespace dimerg2::zeros
