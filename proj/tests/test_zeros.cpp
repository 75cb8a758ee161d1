#include <doctest.h>

#include <cmath>
#include <set>

#include "dimerg2/zeros.hpp"

using namespace dimerg2;
using namespace dimerg2::zeros;

namespace {
constexpr double kPi = kTwoPi / 2.0;

greens::PathEvaluator free_paths(double z12) {
  DimerConfig d;
  d.z1 = 0.0;
  d.z2 = z12;
  return {d, Environment::free_space()};
}

greens::PathEvaluator mirror_paths(double z1, double z2) {
  DimerConfig d;
  d.z1 = z1;
  d.z2 = z2;
  return {d, Environment::perfect_mirror()};
}

AngularGrid full_grid(int n = 361) { return AngularGrid::uniform(0.0, kPi, n); }
AngularGrid half_grid(int n = 361) { return AngularGrid::uniform(0.0, kPi / 2.0, n); }
}  // namespace

TEST_CASE("free-space locus collapses to two corner points at z12 = 0.25") {
  const auto locus = zero_locus(free_paths(0.25), full_grid());
  const auto pts = locus.expanded(ZeroClass::Interference);
  REQUIRE(pts.size() == 2);
  std::set<std::pair<double, double>> got;
  for (const auto& f : pts) {
    REQUIRE(f.vertices.size() == 1);
    got.insert({f.vertices[0].x(), f.vertices[0].y()});
    CHECK(f.residuals[0] < 1e-20);
  }
  CHECK(got.count({0.0, kPi}) == 1);
  CHECK(got.count({kPi, 0.0}) == 1);
}

TEST_CASE("free-space locus is empty below the quarter-wavelength bound") {
  const auto locus = zero_locus(free_paths(0.2), full_grid());
  CHECK(locus.features.empty());
}

TEST_CASE("free-space vertices satisfy the odd-pi phase condition") {
  for (double z12 : {0.5, 1.0, 1.5}) {
    const auto locus = zero_locus(free_paths(z12), full_grid());
    CHECK(locus.expanded_count(ZeroClass::Interference) > 0);
    for (const auto& f : locus.expanded(ZeroClass::Interference)) {
      for (std::size_t k = 0; k < f.vertices.size(); ++k) {
        const auto& v = f.vertices[k];
        const double arg =
            kTwoPi * z12 * std::abs(std::cos(v.x()) - std::cos(v.y()));
        const double frac = arg / kPi;
        CHECK(std::abs(frac - std::round(frac)) < 1e-8);
        CHECK(static_cast<long>(std::round(frac)) % 2 == 1);
        CHECK(f.residuals[k] < 1e-20);  // refined to |Psi| < 1e-10
      }
    }
  }
}

TEST_CASE("amplitude matching holds at every extracted vertex") {
  const auto paths = mirror_paths(0.6, 0.8);
  const auto locus = zero_locus(paths, half_grid());
  for (const auto& f : locus.expanded(ZeroClass::Interference)) {
    for (const auto& v : f.vertices) {
      const double lhs = std::abs(paths.psi1(v.x()) * paths.psi2(v.y()));
      const double rhs = std::abs(paths.psi1(v.y()) * paths.psi2(v.x()));
      CHECK(std::abs(lhs - rhs) < 1e-8);
    }
  }
}

TEST_CASE("mirror branch counts") {
  // Fig. 2 geometry: exactly three interference branches in [0, pi/2]^2.
  const auto locus08 = zero_locus(mirror_paths(0.6, 0.8), half_grid());
  CHECK(locus08.expanded_count(ZeroClass::Interference) == 3);

  // Branch count is nondecreasing in z2.
  const auto locus17 = zero_locus(mirror_paths(0.6, 1.7), half_grid());
  CHECK(locus17.expanded_count(ZeroClass::Interference) >=
        locus08.expanded_count(ZeroClass::Interference));

  // No minimum z12 over a mirror: z12 = 0.2 with z2 > lambda0/4 has zeros.
  const auto tight = zero_locus(mirror_paths(0.3, 0.5), half_grid());
  CHECK(tight.expanded_count(ZeroClass::Interference) > 0);

  // Both emitters below lambda0/4: all cosines positive, no zeros.
  const auto shallow = zero_locus(mirror_paths(0.1, 0.2), half_grid());
  CHECK(shallow.expanded_count(ZeroClass::Interference) == 0);
}

TEST_CASE("eps-independent zero candidates and verification") {
  // z12 <= 1: no surviving candidates.
  CHECK(eps_independent_zeros(0.9).points.empty());
  const auto at_one = eps_independent_zeros(1.0);
  for (const auto& p : at_one.points) CHECK(!p.verified);

  // z12 = 1.1: exactly (1,2) and (2,1).
  const auto z11 = eps_independent_zeros(1.1);
  int verified = 0;
  for (const auto& p : z11.points) {
    if (!p.verified) continue;
    ++verified;
    CHECK(p.max_group_abs < 1e-12);
    const double ta = std::acos(1.0 / 2.2), tb = std::acos(2.0 / 2.2);
    if (p.n == 1) {
      CHECK(p.theta == doctest::Approx(ta).epsilon(1e-14));
      CHECK(p.theta_p == doctest::Approx(tb).epsilon(1e-14));
      CHECK(p.theta == doctest::Approx(62.96 * kPi / 180.0).epsilon(1e-4));
      CHECK(p.theta_p == doctest::Approx(24.62 * kPi / 180.0).epsilon(1e-4));
    }
  }
  CHECK(verified == 2);

  // z12 = 1.6: candidates with even n + m fail the group verification.
  const auto z16 = eps_independent_zeros(1.6);
  for (const auto& p : z16.points) {
    CHECK(p.verified == ((p.n + p.m) % 2 == 1));
  }

  // The sphere geometry does not admit eps-independent zeros.
  DimerConfig d;
  const auto sphere = eps_independent_zeros(d, Environment::sphere({2.13, 0.0}, 0.48, 0.73));
  CHECK(!sphere.admitted);
  CHECK(sphere.points.empty());
}

TEST_CASE("trivial quenching zeros") {
  DimerConfig d;
  d.z1 = 0.6;
  d.z2 = 0.8;
  const auto tz = trivial_zeros(d);
  std::set<int> emitters;
  int count2 = 0;
  for (const auto& t : tz) {
    emitters.insert(t.emitter);
    if (t.emitter == 2) {
      ++count2;
      const double c = std::cos(t.theta);
      CHECK((std::abs(c - 0.3125) < 1e-12 || std::abs(c - 0.9375) < 1e-12));
    }
  }
  CHECK(count2 == 2);
  CHECK(emitters.count(1) == 1);

  // Shallow emitter: no quench angles.
  DimerConfig shallow;
  shallow.z1 = 0.1;
  shallow.z2 = 0.2;
  CHECK(trivial_zeros(shallow).empty());

  // Count is nondecreasing in z2 over [0.8, 1.7].
  int prev = 0;
  for (double z2 = 0.8; z2 <= 1.7 + 1e-9; z2 += 0.1) {
    DimerConfig cfg;
    cfg.z1 = 0.6;
    cfg.z2 = z2;
    int count = 0;
    for (const auto& t : trivial_zeros(cfg))
      if (t.emitter == 2) ++count;
    CHECK(count >= prev);
    prev = count;
  }
}

TEST_CASE("mirror locus carries trivial and eps-independent point features") {
  const auto locus = zero_locus(mirror_paths(0.6, 1.7), half_grid());
  CHECK(locus.expanded_count(ZeroClass::TrivialQuenching) > 0);
  CHECK(locus.expanded_count(ZeroClass::EpsIndependent) == 2);
  for (const auto& f : locus.features) {
    for (std::size_t k = 0; k < f.vertices.size(); ++k) {
      if (f.classification != ZeroClass::Interference) CHECK(f.residuals[k] < 1e-12);
    }
  }
}

TEST_CASE("minima mask: monotonicity, containment, components") {
  const auto paths = mirror_paths(0.6, 0.8);
  corr::MapRequest req;
  req.grid = half_grid(241);
  req.payload = corr::MapPayload::Psi2;
  const auto psi2 = corr::map_real(req, paths);

  const auto loose = minima_map(psi2, 1e-2);
  const auto tight = minima_map(psi2, 1e-4);
  // Nonincreasing as the threshold decreases.
  for (int i = 0; i < 241; i += 7)
    for (int j = 0; j < 241; j += 5)
      if (tight.mask(i, j)) CHECK(loose.mask(i, j));

  // The mask contains every extracted zero vertex.
  const auto locus = zero_locus(paths, req.grid);
  for (const auto& f : locus.expanded(ZeroClass::Interference))
    for (const auto& v : f.vertices) CHECK(loose.label_at(v.x(), v.y()) > 0);

  CHECK(loose.n_components > 0);
  CHECK(loose.area_fraction() > 0.0);
  CHECK(loose.area_fraction() < 0.5);
}

TEST_CASE("valley tracing over a lossy substrate") {
  DimerConfig d;
  d.z1 = 0.6;
  d.z2 = 1.7;
  const greens::PathEvaluator paths(d, Environment::substrate({2.13, 0.0}));
  const auto locus = zero_locus(paths, half_grid(241));

  CHECK(locus.expanded_count(ZeroClass::Interference) > 0);
  for (const auto& f : locus.expanded(ZeroClass::Interference)) {
    REQUIRE(!f.vertices.empty());
    for (double r : f.residuals) CHECK(r < 1e-2);  // within the valley threshold
  }
  // The analytic eps-independent points ride along as exact point features.
  CHECK(locus.expanded_count(ZeroClass::EpsIndependent) == 2);
  for (const auto& f : locus.expanded(ZeroClass::EpsIndependent)) {
    CHECK(f.residuals[0] < 1e-20);
    CHECK(f.max_amplitude_mismatch < 1e-8);
  }
}

TEST_CASE("every stored feature records its amplitude mismatch") {
  const auto locus = zero_locus(mirror_paths(0.6, 0.8), half_grid(241));
  REQUIRE(!locus.features.empty());
  for (const auto& f : locus.features) CHECK(f.max_amplitude_mismatch < 1e-8);
}

TEST_CASE("substrate masks contain the eps-independent points") {
  DimerConfig d;
  d.z1 = 0.6;
  d.z2 = 1.7;
  const double ta = std::acos(1.0 / 2.2), tb = std::acos(2.0 / 2.2);
  for (Complex eps : {Complex(2.13, 0.0), Complex(-5.0, 0.1), Complex(-3.0, 0.01)}) {
    const greens::PathEvaluator paths(d, Environment::substrate(eps));
    corr::MapRequest req;
    req.grid = half_grid(241);
    req.payload = corr::MapPayload::Psi2;
    const auto mask = minima_map(corr::map_real(req, paths), 1e-2);
    CHECK(mask.label_at(ta, tb) > 0);
    CHECK(mask.label_at(tb, ta) > 0);
  }
}

TEST_CASE("mask combinators") {
  const auto paths = mirror_paths(0.6, 0.8);
  corr::MapRequest req;
  req.grid = half_grid(101);
  req.payload = corr::MapPayload::Psi2;
  const auto psi2 = corr::map_real(req, paths);
  const auto a = minima_map(psi2, 1e-2);
  const auto b = minima_map(psi2, 1e-4);
  CHECK(symmetric_difference_count(a, a) == 0);
  CHECK(intersection_count({&a, &b}) == static_cast<int>(b.mask.count()));
  CHECK(symmetric_difference_count(a, b) ==
        static_cast<int>(a.mask.count() - b.mask.count()));
}
