#include "dimerg2/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <stdexcept>

namespace dimerg2::dynamics {
namespace {

Matrix4 kron2(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

Generator kron4(const Matrix4& a, const Matrix4& b) {
  Generator out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
  return out;
}

Eigen::Matrix2cd lower_op() {
  Eigen::Matrix2cd s = Eigen::Matrix2cd::Zero();
  s(0, 1) = 1.0;  // |g><e| in the (g, e) single-emitter basis
  return s;
}

Vector16 vec(const Matrix4& m) {
  Vector16 v;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) v(4 * j + i) = m(i, j);
  return v;
}

Matrix4 unvec(const Vector16& v) {
  Matrix4 m;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) m(i, j) = v(4 * j + i);
  return m;
}

}  // namespace

Matrix4 sigma1() { return kron2(lower_op(), Eigen::Matrix2cd::Identity()); }
Matrix4 sigma2() { return kron2(Eigen::Matrix2cd::Identity(), lower_op()); }

Generator build_generator(const couplings::CouplingSet& cpl,
                          const DriveConfig& drive, bool* psd_warning) {
  if (psd_warning) *psd_warning = !cpl.physical();

  const Matrix4 s[2] = {sigma1(), sigma2()};
  const Matrix4 id = Matrix4::Identity();
  const Complex om[2] = {drive.omega1, drive.omega2};

  Matrix4 h = Matrix4::Zero();
  for (int i = 0; i < 2; ++i) {
    h += -drive.detuning * (s[i].adjoint() * s[i]);
    h += om[i] * s[i] + std::conj(om[i]) * s[i].adjoint();
  }
  h += cpl.g12 * (s[0].adjoint() * s[1] + s[1].adjoint() * s[0]);

  const double gamma[2][2] = {{cpl.gamma11, cpl.gamma12},
                              {cpl.gamma12, cpl.gamma22}};

  Generator gen = Complex(0.0, -1.0) * (kron4(id, h) - kron4(h.transpose(), id));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Matrix4 sisj = s[i].adjoint() * s[j];
      gen += (gamma[i][j] / 2.0) *
             (2.0 * kron4(s[i].adjoint().transpose(), s[j]) -
              kron4(id, sisj) - kron4(sisj.transpose(), id));
    }
  }
  return gen;
}

SteadyState steady_state(const Generator& gen) {
  // Degeneracy guard: the kernel must be one-dimensional.
  Eigen::ComplexEigenSolver<Generator> es(gen, /*computeEigenvectors=*/false);
  const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
  int kernel_dim = 0;
  for (int k = 0; k < 16; ++k)
    if (std::abs(es.eigenvalues()(k)) < 1e-10 * std::max(scale, 1.0)) ++kernel_dim;
  if (kernel_dim > 1)
    throw std::runtime_error("steady_state: degenerate kernel (dark-state degeneracy)");

  // Replace the first row with the trace constraint and solve.
  Generator m = gen;
  m.row(0).setZero();
  for (int i = 0; i < 4; ++i) m(0, 4 * i + i) = 1.0;
  Vector16 rhs = Vector16::Zero();
  rhs(0) = 1.0;
  const Vector16 v = m.fullPivLu().solve(rhs);

  SteadyState out;
  out.kernel_dim = kernel_dim;
  out.residual = (gen * v).norm();
  Matrix4 rho = unvec(v);
  out.hermiticity_dev = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  rho = 0.5 * (rho + rho.adjoint().eval());
  rho /= rho.trace().real();
  out.rho = rho;
  return out;
}

CorrelatorSet correlators(const Matrix4& rho) {
  const Matrix4 s[2] = {sigma1(), sigma2()};
  CorrelatorSet out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.sigma_dag_sigma(i, j) = (rho * s[i].adjoint() * s[j]).trace();
  out.double_excitation = rho(3, 3).real();  // population of |ee>
  return out;
}

Matrix4 evolve_oracle(const Generator& gen, const Matrix4& rho0,
                      double horizon, double step) {
  if (!(step > 0.0) || step * gen.norm() >= 1.0)
    throw std::invalid_argument("evolve_oracle: step too large for RK4 stability");
  Vector16 v = vec(rho0);
  const auto n_steps = static_cast<long>(horizon / step);
  for (long k = 0; k < n_steps; ++k) {
    const Vector16 k1 = gen * v;
    const Vector16 k2 = gen * (v + 0.5 * step * k1);
    const Vector16 k3 = gen * (v + 0.5 * step * k2);
    const Vector16 k4 = gen * (v + step * k3);
    v += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double remainder = horizon - n_steps * step;
  if (remainder > 0.0) {
    const Vector16 k1 = gen * v;
    const Vector16 k2 = gen * (v + 0.5 * remainder * k1);
    const Vector16 k3 = gen * (v + 0.5 * remainder * k2);
    const Vector16 k4 = gen * (v + remainder * k3);
    v += (remainder / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  Matrix4 rho = unvec(v);
  const double drift = std::abs(rho.trace().real() - 1.0);
  if (drift > 1e-9)
    throw std::runtime_error("evolve_oracle: trace drift exceeds 1e-9");
  return rho;
}

std::array<TomographyEntry, 16> tomography(const Matrix4& rho) {
  static const char* kLabels[4] = {"gg", "ge", "eg", "ee"};
  std::array<TomographyEntry, 16> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out[4 * i + j] = {kLabels[i], kLabels[j], std::abs(rho(i, j)),
                       std::arg(rho(i, j))};
  return out;
}

}  // namespace dimerg2::dynamics
