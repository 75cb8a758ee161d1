#pragma once

#include <string>
#include <vector>

#include "dimerg2/io.hpp"

// Figure-reproduction pipelines. Every command writes CSV/JSON data plus an
// SVG rendering into its own directory and returns a manifest of emitted
// files. Parameter presets are embedded below and recorded in the manifest.
namespace dimerg2::figures {

struct FigureOptions {
  std::string out_dir = "out";
  int grid_n = 0;          // 0 = figure default (721)
  double threshold = 0.0;  // 0 = default 1e-2 minima threshold
  int lmax = 60;
  int threads = 1;
  std::string format = "all";  // csv | json | svg | all
  std::string state = "both";  // fig2: symmetric | antisymmetric | both
  std::string panel = "all";   // sm2: a | b | c | all
};

inline constexpr const char* kPresetVersion = "presets-1";

std::vector<std::string> figure_names();

// Runs one of {fig1b, fig2, fig3a, fig3b, fig4b, fig4c, fig4d, sm2}.
// Throws std::invalid_argument for unknown names or unsatisfiable options.
io::RunManifest run_figure(const std::string& name, const FigureOptions& opt);

}  // namespace dimerg2::figures
