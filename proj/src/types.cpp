#include "dimerg2/types.hpp"

#include <cmath>
#include <cstdio>

namespace dimerg2 {

std::string to_string(EnvKind kind) {
  switch (kind) {
    case EnvKind::FreeSpace:     return "free";
    case EnvKind::PerfectMirror: return "mirror";
    case EnvKind::Substrate:     return "substrate";
    case EnvKind::Sphere:        return "sphere";
  }
  return "?";
}

void Environment::validate() const {
  if (kind == EnvKind::Substrate || kind == EnvKind::Sphere) {
    if (!(std::isfinite(epsilon.real()) && std::isfinite(epsilon.imag())))
      throw ConfigError("geometry.epsilon", "non-finite value");
    if (epsilon.imag() < 0.0)
      throw ConfigError("geometry.epsilon", "Im(epsilon) must be >= 0 (passive medium)");
  }
  if (kind == EnvKind::Sphere) {
    if (!(radius > 0.0))
      throw ConfigError("geometry.radius", "radius must be > 0");
    if (!(offset > radius))
      throw ConfigError("geometry.offset", "emitter inside sphere (offset b must exceed radius R)");
  }
}

std::uint64_t Environment::hash() const { return fnv1a64(canonical()); }

std::string Environment::canonical() const {
  std::string s = "env=" + to_string(kind);
  if (kind == EnvKind::Substrate || kind == EnvKind::Sphere)
    s += ";eps=" + format_complex(epsilon);
  if (kind == EnvKind::Sphere)
    s += ";R=" + format_double(radius) + ";b=" + format_double(offset);
  return s;
}

void DimerConfig::validate(const Environment& env) const {
  if (!(gamma0 > 0.0)) throw ConfigError("dimer.gamma0", "gamma0 must be > 0");
  const double norm = orientation.norm();
  if (!(std::abs(norm - 1.0) < 1e-12))
    throw ConfigError("dimer.orientation", "dipole orientation must be a unit vector");
  if (env.kind != EnvKind::Sphere) {
    if (!(std::isfinite(z1) && std::isfinite(z2)))
      throw ConfigError("dimer.z", "non-finite emitter position");
    if (env.is_planar()) {
      if (!(z1 >= 0.0)) throw ConfigError("dimer.z1", "z1 must be >= 0 above a substrate");
      if (!(z2 > z1)) throw ConfigError("dimer.z2", "z2 must exceed z1");
    }
  }
}

std::uint64_t DimerConfig::hash() const { return fnv1a64(canonical()); }

std::string DimerConfig::canonical() const {
  return "z1=" + format_double(z1) + ";z2=" + format_double(z2) +
         ";mu=" + format_double(orientation.x()) + "," + format_double(orientation.y()) +
         "," + format_double(orientation.z()) + ";gamma0=" + format_double(gamma0) +
         ";omega0_ev=" + format_double(omega0_ev);
}

void DriveConfig::validate() const {
  if (!std::isfinite(detuning)) throw ConfigError("drive.detuning", "non-finite value");
  for (const Complex* w : {&omega1, &omega2})
    if (!(std::isfinite(w->real()) && std::isfinite(w->imag())))
      throw ConfigError("drive.omega", "non-finite pump rate");
}

AngularGrid AngularGrid::default_for(const Environment& env, int n) {
  const double half = kTwoPi / 4.0;  // pi/2
  return env.is_planar() ? uniform(0.0, half, n) : uniform(0.0, 2.0 * half, n);
}

void AngularGrid::validate(const Environment& env) const {
  if (n_theta < 2) throw ConfigError("grid.n", "need at least 2 nodes");
  if (!(theta_min >= 0.0 && theta_min < theta_max))
    throw ConfigError("grid.theta", "require 0 <= theta_min < theta_max");
  const double pi = kTwoPi / 2.0;
  if (theta_max > pi + 1e-15)
    throw ConfigError("grid.theta_max", "theta_max must not exceed pi");
  if (env.is_planar() && theta_max > pi / 2.0 + 1e-15)
    throw ConfigError("grid.theta_max", "substrate detection is restricted to the upper half-space (theta <= pi/2)");
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < size; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  std::string s = format_double(v.real());
  s += (v.imag() < 0.0 || std::signbit(v.imag())) ? "-" : "+";
  s += format_double(std::abs(v.imag()));
  s += "i";
  return s;
}

}  // namespace dimerg2
