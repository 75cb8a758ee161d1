#include <doctest.h>

#include <nlohmann/json.hpp>

#include "dimerg2/io.hpp"
#include "dimerg2/svg.hpp"

using namespace dimerg2;

namespace {
AngularMap<double> small_map() {
  AngularMap<double> m;
  m.grid = AngularGrid::uniform(0.0, kTwoPi / 2.0, 3);
  m.values.resize(3, 3);
  m.values << 1.0, 0.25, 0.0, 0.25, 4.0 / 3.0, 0.5, 0.0, 0.5, 2.0;
  return m;
}
}  // namespace

TEST_CASE("fnv1a reference value") {
  CHECK(fnv1a64(std::string("abc")) == 0xe71fa2190541574bull);
}

TEST_CASE("map csv format") {
  const std::string csv = io::map_csv(small_map());
  CHECK(csv.find("theta\\theta_prime,0.000000000,1.570796327,3.141592654\n") == 0);
  CHECK(csv.find("\n1.570796327,0.25,1.3333333333333333,0.5\n") != std::string::npos);
  // Deterministic.
  CHECK(io::map_csv(small_map()) == csv);
}

TEST_CASE("locus json is valid and typed") {
  zeros::ZeroLocus locus;
  zeros::ZeroFeature f;
  f.classification = zeros::ZeroClass::EpsIndependent;
  f.vertices.push_back({0.4, 1.1});
  f.residuals.push_back(1e-30);
  f.has_unstored_partner = true;
  locus.features.push_back(f);

  const auto j = nlohmann::json::parse(io::locus_json(locus));
  CHECK(j["type"] == "zero-locus");
  CHECK(j["features"][0]["classification"] == "eps-independent");
  CHECK(j["features"][0]["has_unstored_partner"] == true);
  CHECK(j["features"][0]["vertices"][0][1] == 1.1);
}

TEST_CASE("mask csv is 0/1 cells") {
  zeros::MinimaMask mask;
  mask.grid = AngularGrid::uniform(0.0, 1.0, 2);
  mask.mask.resize(2, 2);
  mask.mask << true, false, false, true;
  CHECK(io::mask_csv(mask) == "1,0\n0,1\n");
}

TEST_CASE("manifest records hashes") {
  io::RunManifest manifest;
  manifest.command = "figure fig1b";
  io::write_file("build_test_artifact.csv", "a,b\n1,2\n", &manifest);
  REQUIRE(manifest.files.size() == 1);
  CHECK(manifest.files[0].second == fnv1a64(std::string("a,b\n1,2\n")));
  const auto j = nlohmann::json::parse(io::manifest_json(manifest));
  CHECK(j["command"] == "figure fig1b");
  CHECK(j["files"][0]["path"] == "build_test_artifact.csv");
}

TEST_CASE("couplings table header matches the documented interface") {
  const std::string csv = io::couplings_csv({{1.0, -0.076, 0.01}});
  CHECK(csv.rfind("z2_over_lambda0,gamma12_over_gamma0,g12_over_gamma0\n", 0) == 0);
}

TEST_CASE("svg rendering basics") {
  CHECK(svg::viridis_hex(0.0) == "#440154");
  CHECK(svg::viridis_hex(1.0) == "#fde725");

  const std::string heat =
      svg::heatmap(small_map(), 0.0, 2.0, false, {}, {{0.5, 0.5}}, "test");
  CHECK(heat.rfind("<svg", 0) == 0);
  CHECK(heat.find("</svg>") != std::string::npos);
  CHECK(heat.find("<rect") != std::string::npos);
  CHECK(heat.find("<circle") != std::string::npos);
  // Deterministic bytes.
  CHECK(svg::heatmap(small_map(), 0.0, 2.0, false, {}, {{0.5, 0.5}}, "test") == heat);

  svg::Curve c;
  c.points = {{0.0, 0.0}, {1.0, 1.0}};
  const std::string chart = svg::chart({c}, {}, 0, 1, 0, 1, "x", "y", "t");
  CHECK(chart.find("<path") != std::string::npos);

  svg::Curve prof;
  for (int i = 0; i <= 32; ++i)
    prof.points.push_back({kTwoPi / 2.0 * i / 32.0, 1.0});
  const std::string polar = svg::polar({prof}, 1.5, "p");
  CHECK(polar.find("<circle") != std::string::npos);
}
