#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

// Core value types shared by every module. All lengths are stored in units
// of the emitter wavelength lambda0 and all rates in units of gamma0, so the
// axial wavenumber is k0 = 2*pi and the free-space decay rate is 1.
namespace dimerg2 {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
// hbar*c in eV*nm, used only when converting nm/eV inputs to lambda0 units.
inline constexpr double kHbarC_eV_nm = 197.3269804;

class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(key) {}
  const std::string& key() const { return key_; }

private:
  std::string key_;
};

enum class EnvKind { FreeSpace, PerfectMirror, Substrate, Sphere };

std::string to_string(EnvKind kind);

struct Environment {
  EnvKind kind = EnvKind::FreeSpace;
  Complex epsilon{1.0, 0.0};  // Substrate, Sphere
  double radius = 0.0;        // Sphere, lambda0 units
  double offset = 0.0;        // Sphere emitter offset b, lambda0 units

  static Environment free_space() { return {EnvKind::FreeSpace}; }
  static Environment perfect_mirror() { return {EnvKind::PerfectMirror}; }
  static Environment substrate(Complex eps) {
    return {EnvKind::Substrate, eps};
  }
  static Environment sphere(Complex eps, double radius, double offset) {
    return {EnvKind::Sphere, eps, radius, offset};
  }

  bool is_planar() const {
    return kind == EnvKind::PerfectMirror || kind == EnvKind::Substrate;
  }

  // Throws ConfigError on invariant violations (Im(eps) < 0, b <= R, ...).
  void validate() const;

  std::uint64_t hash() const;
  std::string canonical() const;
};

struct DimerConfig {
  double z1 = 0.0;  // axial emitter positions, lambda0 units
  double z2 = 0.0;  // (unused for Sphere, where the offset b takes over)
  Eigen::Vector3d orientation{0.0, 0.0, 1.0};  // shared unit dipole vector
  double gamma0 = 1.0;                         // sets the rate unit
  double omega0_ev = 0.0;                      // optional, 0 = unspecified

  double z12() const { return z2 - z1; }
  // Inter-emitter distance for a given environment (2b for the sphere dimer).
  double separation(const Environment& env) const {
    return env.kind == EnvKind::Sphere ? 2.0 * env.offset : z12();
  }
  bool vertical() const {
    return orientation.x() == 0.0 && orientation.y() == 0.0;
  }
  double lambda0_nm() const {
    return omega0_ev > 0.0 ? kTwoPi * kHbarC_eV_nm / omega0_ev : 0.0;
  }

  void validate(const Environment& env) const;

  std::uint64_t hash() const;
  std::string canonical() const;
};

struct DriveConfig {
  double detuning = 0.0;  // laser detuning, gamma0 units
  Complex omega1{0.0, 0.0};
  Complex omega2{0.0, 0.0};

  void validate() const;
};

struct AngularGrid {
  double theta_min = 0.0;
  double theta_max = 0.0;
  int n_theta = 0;  // nodes per axis, endpoints included

  static AngularGrid uniform(double lo, double hi, int n) {
    return {lo, hi, n};
  }
  // Default detection range: upper half-space only above a substrate.
  static AngularGrid default_for(const Environment& env, int n = 721);

  double theta(int i) const {
    return theta_min + (theta_max - theta_min) * i / (n_theta - 1);
  }

  void validate(const Environment& env) const;
};

// Dense map of a scalar payload over the (theta, theta') grid; rows index
// theta, columns theta'.
template <typename Scalar>
struct AngularMap {
  AngularGrid grid;
  Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic> values;
  std::uint64_t env_hash = 0;
  std::uint64_t dimer_hash = 0;
};

// FNV-1a, used for config provenance and output-manifest content hashes.
std::uint64_t fnv1a64(const void* data, std::size_t size);
inline std::uint64_t fnv1a64(const std::string& s) {
  return fnv1a64(s.data(), s.size());
}

std::string format_double(double v);     // shortest round-trippable decimal
std::string format_complex(Complex v);   // "a+bi"

}  // namespace dimerg2
