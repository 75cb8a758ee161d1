#include <doctest.h>

#include <cmath>
#include <random>

#include "dimerg2/correlation.hpp"
#include "dimerg2/zeros.hpp"

using namespace dimerg2;
using namespace dimerg2::corr;

namespace {
constexpr double kPi = kTwoPi / 2.0;

DimerConfig dimer(double z1, double z2) {
  DimerConfig d;
  d.z1 = z1;
  d.z2 = z2;
  return d;
}

dynamics::CorrelatorSet one_excited() {
  dynamics::CorrelatorSet cs;
  cs.sigma_dag_sigma << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
      Complex(0.0, 0.0);
  cs.double_excitation = 0.0;
  return cs;
}

dynamics::CorrelatorSet bell_symmetric() {
  dynamics::CorrelatorSet cs;
  cs.sigma_dag_sigma.setConstant(Complex(0.5, 0.0));
  cs.double_excitation = 0.0;
  return cs;
}

dynamics::CorrelatorSet generic_state() {
  // Steady state of the Fig. 2 symmetric drive; any full-rank correlator
  // set works here.
  const auto cpl = couplings::couplings_mirror(0.6, 0.8);
  DriveConfig d;
  d.detuning = cpl.g12;
  d.omega1 = d.omega2 = Complex(1.0, 0.0);
  const auto gen = dynamics::build_generator(cpl, d);
  return dynamics::correlators(dynamics::steady_state(gen).rho);
}
}  // namespace

TEST_CASE("two-photon amplitude basics") {
  // Free space, z12 = lambda0/2: phase difference pi at (0, pi/2).
  const greens::PathEvaluator free_paths(dimer(0.0, 0.5), Environment::free_space());
  CHECK(std::abs(two_photon_amplitude(0.0, kPi / 2.0, free_paths)) < 1e-14);

  // Diagonal: Psi(t, t) = 2 psi1 psi2 for any environment.
  const greens::PathEvaluator sub(dimer(0.6, 1.7), Environment::substrate({2.13, 0.0}));
  const double th = 0.77;
  CHECK(std::abs(two_photon_amplitude(th, th, sub) - 2.0 * sub.psi1(th) * sub.psi2(th)) < 1e-14);

  // Exchange symmetry.
  CHECK(std::abs(two_photon_amplitude(0.3, 1.2, sub) - two_photon_amplitude(1.2, 0.3, sub)) == 0.0);
}

TEST_CASE("perfect mirror Psi equals the cosine-product reduction") {
  const greens::PathEvaluator mirror(dimer(0.6, 0.8), Environment::perfect_mirror());
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> angle(0.0, kPi / 2.0);
  for (int k = 0; k < 40; ++k) {
    const double th = angle(rng), thp = angle(rng);
    const double c = std::cos(th), cp = std::cos(thp);
    const double reduced =
        4.0 * (std::cos(kTwoPi * 0.6 * c) * std::cos(kTwoPi * 0.8 * cp) +
               std::cos(kTwoPi * 0.6 * cp) * std::cos(kTwoPi * 0.8 * c));
    const Complex psi = two_photon_amplitude(th, thp, mirror);
    CHECK(std::abs(psi - reduced) < 1e-12 * std::max(1.0, std::abs(reduced)));
    CHECK(std::abs(psi.imag()) < 1e-14);
  }
}

TEST_CASE("intensity reference and nulls") {
  const greens::PathEvaluator free_paths(dimer(0.0, 0.5), Environment::free_space());

  dynamics::CorrelatorSet ground;
  ground.sigma_dag_sigma.setZero();
  for (double th : {0.2, 1.0, 2.4}) CHECK(intensity(th, ground, free_paths) == 0.0);

  // Vertical dipole does not radiate along its axis.
  CHECK(intensity(0.0, bell_symmetric(), free_paths) == 0.0);

  // Definition of the I_sd unit: one excited emitter, theta = pi/2.
  CHECK(intensity(kPi / 2.0, one_excited(), free_paths) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("g2 vanishes on the Psi zero set for any state") {
  const greens::PathEvaluator free_paths(dimer(0.0, 0.5), Environment::free_space());
  const auto cs = generic_state();
  REQUIRE(cs.double_excitation > 0.0);
  CHECK(g2_eval(0.0, kPi / 2.0, cs, free_paths) < 1e-25);
  CHECK(g2_eval(0.4, 1.1, cs, free_paths) >= 0.0);
}

TEST_CASE("polarized Psi components") {
  // Vertical dipole: only the theta-theta channel survives, equal to
  // sin(t) sin(t') times the scalar Psi.
  DimerConfig vert = dimer(0.6, 1.7);
  const greens::PathEvaluator sub(vert, Environment::substrate({2.13, 0.0}));
  const double th = 0.5, thp = 1.2;
  const auto pol = psi_polarized(th, thp, vert, {2.13, 0.0});
  const Complex scalar = two_photon_amplitude(th, thp, sub);
  CHECK(std::abs(pol.theta_theta - std::sin(th) * std::sin(thp) * scalar) < 1e-13);
  CHECK(std::abs(pol.theta_phi) == 0.0);
  CHECK(std::abs(pol.phi_theta) == 0.0);
  CHECK(std::abs(pol.phi_phi) == 0.0);

  // eps = 1, tilted dipole: channels factorize into U products times the
  // free-space scalar Psi.
  DimerConfig tilted = vert;
  tilted.orientation = Eigen::Vector3d(0.4, 0.3, 0.866).normalized();
  const greens::PathEvaluator free_paths(tilted, Environment::free_space());
  const double phi = 0.3, phip = 1.1;
  const auto f = psi_polarized(th, thp, tilted, {1.0, 0.0}, phi, phip);
  const Complex fs = two_photon_amplitude(th, thp, free_paths);
  const auto u = greens::free_space_u(th, phi, tilted.orientation);
  const auto up = greens::free_space_u(thp, phip, tilted.orientation);
  CHECK(std::abs(f.theta_theta - u.u_theta * up.u_theta * fs) < 1e-12);
  CHECK(std::abs(f.theta_phi - u.u_theta * up.u_phi * fs) < 1e-12);
  CHECK(std::abs(f.phi_theta - u.u_phi * up.u_theta * fs) < 1e-12);
  CHECK(std::abs(f.phi_phi - u.u_phi * up.u_phi * fs) < 1e-12);
}

TEST_CASE("all four polarized channels vanish at eps-independent points") {
  DimerConfig tilted = dimer(0.6, 1.7);  // z12 = 1.1
  tilted.orientation = Eigen::Vector3d(std::sin(kPi / 4) * std::cos(0.7),
                                       std::sin(kPi / 4) * std::sin(0.7),
                                       std::cos(kPi / 4));
  const double th = std::acos(1.0 / 2.2), thp = std::acos(2.0 / 2.2);
  for (Complex eps : {Complex(2.13, 0.0), Complex(-5.0, 0.1), Complex(-3.0, 0.01)}) {
    const auto pol = psi_polarized(th, thp, tilted, eps, 0.3, 1.1);
    for (Complex v : {pol.theta_theta, pol.theta_phi, pol.phi_theta, pol.phi_phi})
      CHECK(std::abs(v) < 1e-10);
  }
  // Perfect mirror channel set.
  const auto pol = psi_polarized(th, thp, tilted, {0.0, 0.0}, 0.3, 1.1, true);
  for (Complex v : {pol.theta_theta, pol.theta_phi, pol.phi_theta, pol.phi_phi})
    CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("g2 polarization independence in free space") {
  DimerConfig tilted = dimer(0.1, 0.9);
  tilted.orientation = Eigen::Vector3d(0.5, 0.3, 0.81).normalized();
  const greens::PathEvaluator paths(tilted, Environment::free_space());
  const auto cs = generic_state();

  std::mt19937 rng(101);
  std::uniform_real_distribution<double> angle(0.05, kPi - 0.05);
  std::uniform_real_distribution<double> azimuth(0.0, kTwoPi);
  for (int k = 0; k < 100; ++k) {
    const double th = angle(rng), thp = angle(rng);
    const double reduced = g2_eval(th, thp, cs, paths);
    const double channel =
        g2_channel_resolved_free(th, thp, cs, tilted, azimuth(rng), azimuth(rng));
    CHECK(std::abs(reduced - channel) <= 1e-10 * std::max(1.0, std::abs(reduced)));
  }
}

TEST_CASE("map sweep determinism and symmetry") {
  const greens::PathEvaluator paths(dimer(0.0, 1.5), Environment::free_space());
  MapRequest req;
  req.grid = AngularGrid::uniform(0.0, kPi, 181);
  req.payload = MapPayload::Psi2;

  req.threads = 1;
  const auto serial = map_real(req, paths);
  req.threads = 4;
  const auto parallel = map_real(req, paths);
  CHECK((serial.values == parallel.values).all());

  for (int i = 0; i < 181; i += 13)
    for (int j = 0; j < 181; j += 7)
      CHECK(serial.values(i, j) == serial.values(j, i));

  // Pointwise evaluation: the coarse grid hits the fine grid's nodes exactly.
  MapRequest fine = req;
  fine.grid = AngularGrid::uniform(0.0, kPi, 721);
  const auto dense = map_real(fine, paths);
  for (int i = 0; i < 181; ++i)
    for (int j = 0; j < 181; j += 11)
      CHECK(serial.values(i, j) == dense.values(4 * i, 4 * j));
}

TEST_CASE("g2 map masks vanishing marginal intensity") {
  // |S> correlators with z12 = 0.5: the drive-phase coherence cancels the
  // marginal intensity exactly at theta = 0, which must be masked.
  const greens::PathEvaluator paths(dimer(0.0, 0.5), Environment::free_space());
  MapRequest req;
  req.grid = AngularGrid::uniform(0.0, kPi, 91);
  req.payload = MapPayload::G2;
  auto cs = bell_symmetric();
  cs.double_excitation = 0.05;
  const auto map = map_real(req, paths, &cs);
  CHECK(std::isnan(map.values(0, 40)));
  CHECK(std::isnan(map.values(40, 0)));
  CHECK(std::isfinite(map.values(45, 30)));
}

TEST_CASE("intensity profile and map payload") {
  const greens::PathEvaluator paths(dimer(0.6, 0.8), Environment::perfect_mirror());
  const auto cs = generic_state();
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi / 2.0, 65);
  const auto profile = intensity_profile(grid, cs, paths);
  CHECK(profile.size() == 65);
  CHECK(profile(0) == 0.0);  // sin^2(0)
  for (int i = 0; i < 65; ++i) CHECK(profile(i) >= 0.0);

  MapRequest req;
  req.grid = grid;
  req.payload = MapPayload::Intensity;
  const auto map = map_real(req, paths, &cs);
  CHECK(map.values.rows() == 65);
  CHECK(map.values.cols() == 1);
  CHECK(map.values(12, 0) == profile(12));
}
