#include <doctest.h>

#include <cmath>

#include "dimerg2/config.hpp"

using namespace dimerg2;

TEST_CASE("mirror configuration parses to lambda0 units") {
  const auto cfg = parse_config(
      "geometry.env = mirror\n"
      "dimer.z1 = 0.6\n"
      "dimer.z2 = 0.8\n"
      "drive.omega1 = 1\n"
      "drive.omega2 = 1\n");
  CHECK(cfg.env.kind == EnvKind::PerfectMirror);
  CHECK(cfg.dimer.z12() == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(cfg.grid.theta_max == doctest::Approx(kTwoPi / 4.0));  // upper half-space
  CHECK(cfg.drive.omega1 == Complex(1.0, 0.0));
}

TEST_CASE("sphere configuration from nm and eV inputs") {
  const auto cfg = parse_config(
      "geometry.env = sphere\n"
      "geometry.epsilon = 2.13\n"
      "geometry.radius_nm = 200\n"
      "geometry.gap_nm = 100\n"
      "dimer.energy_ev = 3\n");
  // Independent unit conversion: lambda0 = 2 pi hbar c / E.
  const double lam = kTwoPi * 197.3269804 / 3.0;
  CHECK(lam == doctest::Approx(413.28).epsilon(1e-4));
  CHECK(cfg.env.radius == doctest::Approx(200.0 / lam).epsilon(1e-12));
  CHECK(cfg.env.offset == doctest::Approx(300.0 / lam).epsilon(1e-12));
  CHECK(cfg.env.offset == doctest::Approx(0.7259).epsilon(1e-4));
  CHECK(cfg.env.radius == doctest::Approx(0.4839).epsilon(1e-4));
  CHECK(cfg.grid.theta_max == doctest::Approx(kTwoPi / 2.0));  // full range
}

TEST_CASE("configuration errors carry the key path") {
  // Emitter inside the sphere.
  CHECK_THROWS_WITH_AS(parse_config("geometry.env = sphere\n"
                                    "geometry.epsilon = 2\n"
                                    "geometry.radius = 0.5\n"
                                    "geometry.offset = 0.3\n"),
                       doctest::Contains("emitter inside sphere"), ConfigError);

  CHECK_THROWS_WITH_AS(parse_config("geometry.env = mirror\ndimer.z2 = 0.8\n"),
                       doctest::Contains("dimer.z1"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("geometry.env = mirror\n"
                                    "dimer.z1 = 0.6\ndimer.z2 = zzz\n"),
                       doctest::Contains("malformed"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("geometry.env = volcano\n"),
                       doctest::Contains("unknown environment"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("geometry.env = free\nbogus.key = 1\n"),
                       doctest::Contains("unknown key"), ConfigError);
  // nm lengths without an energy scale.
  CHECK_THROWS_AS(parse_config("geometry.env = sphere\n"
                               "geometry.epsilon = 2\n"
                               "geometry.radius_nm = 200\n"
                               "geometry.offset_nm = 300\n"),
                  ConfigError);
  // Passivity.
  CHECK_THROWS_AS(parse_config("geometry.env = substrate\n"
                               "geometry.epsilon = 2-0.5i\n"
                               "dimer.z1 = 0.1\ndimer.z2 = 0.4\n"),
                  ConfigError);
}

TEST_CASE("complex literal forms") {
  CHECK(parse_complex("2.13") == Complex(2.13, 0.0));
  CHECK(parse_complex("-5+0.1i") == Complex(-5.0, 0.1));
  CHECK(parse_complex("-3e-2-0.01i") == Complex(-0.03, -0.01));
  CHECK(parse_complex("0.1i") == Complex(0.0, 0.1));
  CHECK(parse_complex("1+i") == Complex(1.0, 1.0));
  CHECK(parse_complex("1-i") == Complex(1.0, -1.0));
  CHECK_THROWS(parse_complex(""));
  CHECK_THROWS(parse_complex("1+2j banana"));
}

TEST_CASE("serialization round-trips bit-for-bit") {
  const char* samples[] = {
      "geometry.env = mirror\ndimer.z1 = 0.6\ndimer.z2 = 0.8\n"
      "drive.detuning = -1.25\ndrive.omega1 = 1\ndrive.omega2 = -1i\n",
      "geometry.env = sphere\ngeometry.epsilon = -5+0.1i\n"
      "geometry.radius_nm = 200\ngeometry.gap_nm = 100\ndimer.energy_ev = 3\n"
      "grid.n = 181\n",
      "geometry.env = free\ndimer.z1 = 0.1\ndimer.z2 = 1.7320508075688772\n"
      "dimer.orientation = 0.5,0.25,0.8291561975888499\n",
  };
  for (const char* text : samples) {
    const auto cfg = parse_config(text);
    const std::string canon = serialize_config(cfg);
    const auto again = parse_config(canon);
    CHECK(again.dimer.z1 == cfg.dimer.z1);
    CHECK(again.dimer.z2 == cfg.dimer.z2);
    CHECK(again.dimer.orientation == cfg.dimer.orientation);
    CHECK(again.dimer.gamma0 == cfg.dimer.gamma0);
    CHECK(again.dimer.omega0_ev == cfg.dimer.omega0_ev);
    CHECK(again.env.kind == cfg.env.kind);
    CHECK(again.env.epsilon == cfg.env.epsilon);
    CHECK(again.env.radius == cfg.env.radius);
    CHECK(again.env.offset == cfg.env.offset);
    CHECK(again.drive.detuning == cfg.drive.detuning);
    CHECK(again.drive.omega1 == cfg.drive.omega1);
    CHECK(again.drive.omega2 == cfg.drive.omega2);
    CHECK(again.grid.theta_min == cfg.grid.theta_min);
    CHECK(again.grid.theta_max == cfg.grid.theta_max);
    CHECK(again.grid.n_theta == cfg.grid.n_theta);
    // Canonical text is a fixed point.
    CHECK(serialize_config(again) == canon);
  }
}

TEST_CASE("hashes reflect configuration identity") {
  const auto a = parse_config("geometry.env = free\ndimer.z1 = 0\ndimer.z2 = 1\n");
  const auto b = parse_config("geometry.env = free\ndimer.z1 = 0\ndimer.z2 = 1.5\n");
  CHECK(a.dimer.hash() != b.dimer.hash());
  CHECK(a.env.hash() == b.env.hash());
  CHECK(a.dimer.hash() == parse_config(serialize_config(a)).dimer.hash());
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(parse_config("geometry.env = substrate\ngeometry.epsilon = 2\n"
                               "dimer.z1 = 0.1\ndimer.z2 = 0.5\ngrid.theta_max = 3\n"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config("geometry.env = free\ngrid.n = 1\n"
                               "dimer.z1 = 0\ndimer.z2 = 1\n"),
                  ConfigError);
}
