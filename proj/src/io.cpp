#include "dimerg2/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dimerg2::io {
namespace {

using ordered_json = nlohmann::ordered_json;

std::string angle9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

template <typename Getter>
std::string grid_csv(const AngularGrid& grid, Eigen::Index rows,
                     Eigen::Index cols, Getter get) {
  std::ostringstream out;
  out << "theta\\theta_prime";
  for (Eigen::Index j = 0; j < cols; ++j) out << "," << angle9(grid.theta(j));
  out << "\n";
  for (Eigen::Index i = 0; i < rows; ++i) {
    out << angle9(grid.theta(i));
    for (Eigen::Index j = 0; j < cols; ++j) out << "," << format_double(get(i, j));
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string map_csv(const AngularMap<double>& map) {
  return grid_csv(map.grid, map.values.rows(), map.values.cols(),
                  [&](Eigen::Index i, Eigen::Index j) { return map.values(i, j); });
}

std::string map_csv_complex_part(const AngularMap<Complex>& map, bool real_part) {
  return grid_csv(map.grid, map.values.rows(), map.values.cols(),
                  [&](Eigen::Index i, Eigen::Index j) {
                    return real_part ? map.values(i, j).real()
                                     : map.values(i, j).imag();
                  });
}

std::string profile_csv(const AngularGrid& grid, const Eigen::ArrayXd& values,
                        const std::string& value_name) {
  std::ostringstream out;
  out << "theta," << value_name << "\n";
  for (Eigen::Index i = 0; i < values.size(); ++i)
    out << angle9(grid.theta(static_cast<int>(i))) << ","
        << format_double(values(i)) << "\n";
  return out.str();
}

std::string map_sidecar_json(const AngularGrid& grid, const Environment& env,
                             const DimerConfig& dimer,
                             const std::string& payload,
                             const std::vector<std::string>& files) {
  ordered_json j;
  j["payload"] = payload;
  j["grid"] = {{"theta_min", grid.theta_min},
               {"theta_max", grid.theta_max},
               {"n_theta", grid.n_theta}};
  j["environment"] = env.canonical();
  j["dimer"] = dimer.canonical();
  j["env_hash"] = env.hash();
  j["dimer_hash"] = dimer.hash();
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::string locus_json(const zeros::ZeroLocus& locus) {
  ordered_json features = ordered_json::array();
  for (const auto& f : locus.features) {
    ordered_json jf;
    jf["classification"] = zeros::to_string(f.classification);
    jf["has_unstored_partner"] = f.has_unstored_partner;
    ordered_json verts = ordered_json::array();
    for (const auto& v : f.vertices) verts.push_back({v.x(), v.y()});
    jf["vertices"] = verts;
    jf["residuals_psi2"] = f.residuals;
    jf["max_amplitude_mismatch"] = f.max_amplitude_mismatch;
    features.push_back(jf);
  }
  ordered_json j;
  j["type"] = "zero-locus";
  j["features"] = features;
  return j.dump(2) + "\n";
}

std::string mask_csv(const zeros::MinimaMask& mask) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < mask.mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < mask.mask.cols(); ++j) {
      if (j) out << ",";
      out << (mask.mask(i, j) ? 1 : 0);
    }
    out << "\n";
  }
  return out.str();
}

std::string tomography_csv(const dynamics::Matrix4& rho) {
  std::ostringstream out;
  out << "row,col,modulus,phase\n";
  for (const auto& e : dynamics::tomography(rho))
    out << e.row << "," << e.col << "," << format_double(e.modulus) << ","
        << format_double(e.phase) << "\n";
  return out.str();
}

std::string tomography_json(const dynamics::Matrix4& rho) {
  ordered_json entries = ordered_json::array();
  for (const auto& e : dynamics::tomography(rho))
    entries.push_back({{"row", e.row},
                       {"col", e.col},
                       {"modulus", e.modulus},
                       {"phase", e.phase}});
  ordered_json j;
  j["type"] = "tomography";
  j["basis"] = {"gg", "ge", "eg", "ee"};
  j["entries"] = entries;
  return j.dump(2) + "\n";
}

std::string couplings_csv(const std::vector<CouplingsRow>& rows) {
  std::ostringstream out;
  out << "z2_over_lambda0,gamma12_over_gamma0,g12_over_gamma0\n";
  for (const auto& r : rows)
    out << format_double(r.z2) << "," << format_double(r.gamma12) << ","
        << format_double(r.g12) << "\n";
  return out.str();
}

std::string manifest_json(const RunManifest& manifest) {
  ordered_json files = ordered_json::array();
  for (const auto& [path, hash] : manifest.files)
    files.push_back({{"path", path}, {"fnv1a64", hash}});
  ordered_json j;
  j["command"] = manifest.command;
  j["version"] = kVersion;
  j["config"] = manifest.config_text;
  j["files"] = files;
  j["wall_seconds"] = manifest.wall_seconds;
  return j.dump(2) + "\n";
}

void write_file(const std::string& path, const std::string& content,
                RunManifest* manifest) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (manifest) manifest->files.emplace_back(path, fnv1a64(content));
}

}  // namespace dimerg2::io
