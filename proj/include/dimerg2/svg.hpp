#pragma once

#include <string>
#include <vector>

#include "dimerg2/types.hpp"
#include "dimerg2/zeros.hpp"

// Self-contained SVG rendering: heatmap cells as rectangles, curves as
// polyline paths, polar plots as closed paths. No plotting dependency, so
// figure output is hermetically reproducible.
namespace dimerg2::svg {

struct Curve {
  std::vector<Eigen::Vector2d> points;  // data coordinates
  std::string color = "#1f77b4";
  double width = 1.5;
  bool dashed = false;
};

struct Marker {
  double x = 0.0, y = 0.0;
  std::string color = "#d62728";
  bool filled = true;
};

// Heatmap of a (possibly strided) map with overlay curves/markers. Values
// are clipped to [vmin, vmax] and colored with a built-in
// perceptually-uniform map; NaNs render light gray. log_scale colors
// log10(value).
std::string heatmap(const AngularMap<double>& map, double vmin, double vmax,
                    bool log_scale, const std::vector<Curve>& overlays,
                    const std::vector<Marker>& markers,
                    const std::string& title);

// Curves in a square axis box (used for zero-locus overlays and coefficient
// plots).
std::string chart(const std::vector<Curve>& curves,
                  const std::vector<Marker>& markers, double xmin, double xmax,
                  double ymin, double ymax, const std::string& xlabel,
                  const std::string& ylabel, const std::string& title);

// Polar plot of r(theta) profiles, theta in [0, pi] mirrored to a full disc.
std::string polar(const std::vector<Curve>& profiles, double rmax,
                  const std::string& title);

std::string viridis_hex(double t);  // t in [0, 1]

}  // namespace dimerg2::svg
