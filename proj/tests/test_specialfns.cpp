#include <doctest.h>

#include <cmath>
#include <random>

#include "dimerg2/specialfns.hpp"

using namespace dimerg2;
using namespace dimerg2::specialfns;

namespace {
constexpr double kPi = kTwoPi / 2.0;

// Exact finite-sum form of h_l^(1), usable as an independent oracle at
// moderate l: h_l = (-i)^{l+1} e^{ix}/x sum_m (i/2x)^m (l+m)!/(m!(l-m)!).
Complex hankel_closed_form(int l, double x) {
  Complex sum(0.0, 0.0);
  for (int m = 0; m <= l; ++m) {
    double c = 1.0;
    for (int k = 1; k <= m; ++k) c *= (l + k) * (l - k + 1.0) / k;
    sum += c * std::pow(Complex(0.0, 1.0 / (2.0 * x)), m);
  }
  return std::pow(Complex(0.0, -1.0), l + 1) * std::polar(1.0 / x, x) * sum;
}
}  // namespace

TEST_CASE("spherical hankel closed forms") {
  // h_0(pi) = i/pi
  const Complex h0 = sph_hankel1(0, kPi);
  CHECK(std::abs(h0 - Complex(0.0, 1.0 / kPi)) < 1e-15);

  // h_1(1) = -e^{i}(1+i)
  const Complex expect = -std::polar(1.0, 1.0) * Complex(1.0, 1.0);
  CHECK(std::abs(sph_hankel1(1, 1.0) - expect) < 1e-15);
  CHECK(sph_hankel1(1, 1.0).real() == doctest::Approx(0.30116867893975674).epsilon(1e-12));
  CHECK(sph_hankel1(1, 1.0).imag() == doctest::Approx(-1.3817732906760363).epsilon(1e-12));
}

TEST_CASE("hankel recurrence identity at l=5, x=2") {
  const Complex h4 = sph_hankel1(4, 2.0), h5 = sph_hankel1(5, 2.0),
                h6 = sph_hankel1(6, 2.0);
  CHECK(std::abs(h6 - (5.5 * h5 - h4)) / std::abs(h6) < 1e-12);
}

TEST_CASE("hankel against finite-sum oracle") {
  for (int l : {2, 3, 5, 8}) {
    for (double x : {0.1, 0.7, 2.0, 10.0, 60.0}) {
      const Complex ref = hankel_closed_form(l, x);
      CHECK(std::abs(sph_hankel1(l, x) - ref) / std::abs(ref) < 1e-12);
    }
  }
}

TEST_CASE("wronskian j_l y_l' - j_l' y_l = 1/x^2") {
  for (int l : {0, 1, 2, 5, 10, 20, 40, 60}) {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 100.0}) {
      const double w = sph_bessel_j(l, x) * sph_bessel_y_deriv(l, x) -
                       sph_bessel_j_deriv(l, x) * sph_bessel_y(l, x);
      CHECK(std::abs(w * x * x - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("hankel recurrence consistency over l <= 60") {
  for (double x : {0.5, 3.0, 25.0, 100.0}) {
    const auto h = sph_hankel1_table(60, x);
    for (int l = 1; l < 60; ++l) {
      const Complex lhs = h[l + 1] + h[l - 1];
      const Complex rhs = (2.0 * l + 1.0) / x * h[l];
      CHECK(std::abs(lhs - rhs) / std::abs(rhs) < 1e-11);
    }
  }
}

TEST_CASE("spherical bessel j underflow and preconditions") {
  CHECK(sph_bessel_j(0, 2.0) == doctest::Approx(std::sin(2.0) / 2.0));
  CHECK_THROWS(sph_bessel_j(3, 0.0));
  CHECK_THROWS(sph_hankel1(2, -1.0));
}

TEST_CASE("legendre derivative values") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 10; ++k) CHECK(legendre_fl(1, dist(rng)) == 1.0);
  CHECK(legendre_fl(2, 0.5) == doctest::Approx(1.5).epsilon(1e-14));
  // P_3 = (5x^3 - 3x)/2 so f_3(0.2) = (15*0.04 - 3)/2 = -1.2
  CHECK(legendre_fl(3, 0.2) == doctest::Approx(-1.2).epsilon(1e-14));
  CHECK_THROWS(legendre_fl(0, 0.3));
}

TEST_CASE("legendre parity and endpoint identities") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int l = 1; l <= 25; ++l) {
    const double x = dist(rng);
    const double sign = (l % 2 == 0) ? -1.0 : 1.0;  // (-1)^{l+1}
    CHECK(legendre_fl(l, -x) == doctest::Approx(sign * legendre_fl(l, x)).epsilon(1e-11));
    CHECK(legendre_fl(l, 1.0) == doctest::Approx(l * (l + 1) / 2.0).epsilon(1e-12));
  }
}

TEST_CASE("associated legendre via -sin(theta) f_l") {
  const double theta = 0.83;
  for (int l : {1, 2, 3, 7}) {
    const double expect = -std::sin(theta) * legendre_fl(l, std::cos(theta));
    CHECK(assoc_legendre_p1(l, theta) == doctest::Approx(expect));
  }
  // P_1^1(cos t) = -sin t
  CHECK(assoc_legendre_p1(1, 0.4) == doctest::Approx(-std::sin(0.4)));
}

TEST_CASE("fresnel coefficients") {
  // No interface
  CHECK(std::abs(fresnel_rp({1.0, 0.0}, 0.3)) == 0.0);
  CHECK(std::abs(fresnel_rs({1.0, 0.0}, 1.1)) == 0.0);

  // Mirror limit eps -> -1e8
  CHECK(std::abs(fresnel_rp({-1e8, 0.0}, 0.7) - 1.0) < 1e-3);
  CHECK(std::abs(fresnel_rs({-1e8, 0.0}, 0.7) + 1.0) < 1e-3);

  // Normal incidence reduces to (sqrt(eps) - 1)/(sqrt(eps) + 1)
  const double n = std::sqrt(2.13);
  CHECK(std::abs(fresnel_rp({2.13, 0.0}, 0.0) - (n - 1) / (n + 1)) < 1e-14);
  CHECK(std::abs(fresnel_rs({2.13, 0.0}, 0.0) + (n - 1) / (n + 1)) < 1e-14);
  CHECK(fresnel_rp({2.13, 0.0}, 0.0).real() == doctest::Approx(0.18681).epsilon(1e-3));
}

TEST_CASE("fresnel passivity bound |r| <= 1") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(0.0, 5.0);
  for (int k = 0; k < 50; ++k) {
    const Complex eps(re(rng), im(rng));
    for (int j = 0; j <= 20; ++j) {
      const double theta = j * (kPi / 2.0) / 20.0;
      CHECK(std::abs(fresnel_rp(eps, theta)) <= 1.0 + 1e-12);
      CHECK(std::abs(fresnel_rs(eps, theta)) <= 1.0 + 1e-12);
    }
  }
  // Lossless low-index medium beyond the critical angle: unit modulus.
  CHECK(std::abs(fresnel_rp({0.5, 0.0}, kPi / 3.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mie rTM: no scatterer, quasistatic dipole, large-l decay") {
  CHECK(mie_rTM(3, {1.0, 0.0}, 2.0) == Complex(0.0, 0.0));

  // Quasistatic oracle: r_1TM ~ (2i/3) x^3 (eps-1)/(eps+2)
  const double x = 0.05, eps = 2.13;
  const double qs = (2.0 / 3.0) * x * x * x * (eps - 1.0) / (eps + 2.0);
  const Complex r1 = mie_rTM(1, {eps, 0.0}, x);
  CHECK(std::abs(std::abs(r1) - qs) / qs < 0.02);
  CHECK(r1.imag() > 0.0);                  // pins the sign convention
  CHECK(std::abs(r1.real()) < 0.01 * qs);  // near-lossless: almost pure phase shift

  CHECK(std::abs(mie_rTM(30, {2.13, 0.0}, 3.04)) < 1e-12);
}

TEST_CASE("mie rTM bounded for passive media") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> re(-10.0, 8.0), im(0.0, 2.0);
  for (int k = 0; k < 30; ++k) {
    const Complex eps(re(rng), im(rng));
    for (int l = 1; l <= 12; ++l)
      CHECK(std::abs(mie_rTM(l, eps, 3.0)) <= 1.0 + 1e-9);
  }
}
