#pragma once

#include <Eigen/Dense>

#include "dimerg2/couplings.hpp"
#include "dimerg2/types.hpp"

// Two-emitter Lindblad dynamics in the product basis |gg>, |ge>, |eg>, |ee>
// (second slot = emitter 2), in the rotating frame of the drive laser.
namespace dimerg2::dynamics {

using Matrix4 = Eigen::Matrix4cd;
using Generator = Eigen::Matrix<Complex, 16, 16>;
using Vector16 = Eigen::Matrix<Complex, 16, 1>;

Matrix4 sigma1();  // |g><e| on emitter 1
Matrix4 sigma2();

// Liouvillian acting on column-major vec(rho):
//   rho' = -i [H, rho] + sum_ij (gamma_ij / 2) (2 s_j rho s_i^+ - {s_i^+ s_j, rho}),
//   H = -Delta sum_i n_i + g12 (s1^+ s2 + s2^+ s1) + sum_i (Omega_i s_i + h.c.).
// Sets *psd_warning (if given) when the dissipation matrix is not PSD.
Generator build_generator(const couplings::CouplingSet& cpl,
                          const DriveConfig& drive,
                          bool* psd_warning = nullptr);

struct SteadyState {
  Matrix4 rho;
  double residual = 0.0;        // ||L vec(rho)||
  double hermiticity_dev = 0.0; // ||rho - rho^+||_max before symmetrization
  int kernel_dim = 1;           // count of |lambda| < 1e-10 * scale
};

// Kernel element with unit trace, from the trace-replaced dense solve.
// Throws std::runtime_error when the kernel is degenerate (dark-state
// degeneracy, kernel_dim > 1).
SteadyState steady_state(const Generator& gen);

struct CorrelatorSet {
  Eigen::Matrix2cd sigma_dag_sigma;  // <s_i^+ s_j>
  double double_excitation = 0.0;    // <s1^+ s2^+ s1 s2> = rho_ee,ee
};

CorrelatorSet correlators(const Matrix4& rho);

// Fixed-step RK4 integration of rho' = L rho, the independent verification
// oracle for steady_state. Requires step * ||L|| < 1.
Matrix4 evolve_oracle(const Generator& gen, const Matrix4& rho0,
                      double horizon, double step);

struct TomographyEntry {
  const char* row;
  const char* col;
  double modulus;
  double phase;
};

// |rho_ab| and arg(rho_ab) over the 4x4 basis, row-major.
std::array<TomographyEntry, 16> tomography(const Matrix4& rho);

}  // namespace dimerg2::dynamics
