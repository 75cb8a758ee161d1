#pragma once

#include <string>
#include <vector>

#include "dimerg2/config.hpp"
#include "dimerg2/dynamics.hpp"
#include "dimerg2/types.hpp"
#include "dimerg2/zeros.hpp"

// File emission. All writers produce byte-stable output: fixed float
// formatting, deterministic ordering, '\n' line endings.
namespace dimerg2::io {

// Map CSV: header row of theta' angles (radians, 9 decimals), one row per
// theta starting with its angle; values as %.17g. Complex maps are written
// as a pair of _re/_im files by the caller.
std::string map_csv(const AngularMap<double>& map);
std::string map_csv_complex_part(const AngularMap<Complex>& map, bool real_part);

std::string profile_csv(const AngularGrid& grid, const Eigen::ArrayXd& values,
                        const std::string& value_name);

// JSON sidecar with grid spec, environment, and provenance hashes.
std::string map_sidecar_json(const AngularGrid& grid, const Environment& env,
                             const DimerConfig& dimer,
                             const std::string& payload,
                             const std::vector<std::string>& files);

// Zero locus as a JSON feature collection.
std::string locus_json(const zeros::ZeroLocus& locus);

// MinimaMask as a 0/1 CSV grid.
std::string mask_csv(const zeros::MinimaMask& mask);

std::string tomography_csv(const dynamics::Matrix4& rho);
std::string tomography_json(const dynamics::Matrix4& rho);

struct CouplingsRow {
  double z2;
  double gamma12;
  double g12;
};
std::string couplings_csv(const std::vector<CouplingsRow>& rows);

// Run manifest: command, resolved configuration, emitted files with FNV-1a
// content hashes, wall time, library version.
struct RunManifest {
  std::string command;
  std::string config_text;
  std::vector<std::pair<std::string, std::uint64_t>> files;
  double wall_seconds = 0.0;
};
std::string manifest_json(const RunManifest& manifest);

inline constexpr const char* kVersion = "0.1.0";

// Writes content and records (path, hash) into the manifest.
void write_file(const std::string& path, const std::string& content,
                RunManifest* manifest = nullptr);

}  // namespace dimerg2::io
