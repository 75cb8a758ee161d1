#include "dimerg2/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dimerg2::svg {
namespace {

constexpr int kPlot = 560;    // plot box in px
constexpr int kMargin = 60;
constexpr int kCanvas = kPlot + 2 * kMargin;

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

// viridis anchor colors, linearly interpolated.
constexpr double kViridis[][3] = {
    {0.267004, 0.004874, 0.329415}, {0.282623, 0.140926, 0.457517},
    {0.253935, 0.265254, 0.529983}, {0.206756, 0.371758, 0.553117},
    {0.163625, 0.471133, 0.558148}, {0.127568, 0.566949, 0.550556},
    {0.134692, 0.658636, 0.517649}, {0.266941, 0.748751, 0.440573},
    {0.477504, 0.821444, 0.318195}, {0.741388, 0.873449, 0.149561},
    {0.993248, 0.906157, 0.143936}};

struct Frame {
  double xmin, xmax, ymin, ymax;
  double sx(double x) const {
    return kMargin + (x - xmin) / (xmax - xmin) * kPlot;
  }
  double sy(double y) const {
    return kMargin + kPlot - (y - ymin) / (ymax - ymin) * kPlot;
  }
};

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas
      << "\" height=\"" << kCanvas << "\" viewBox=\"0 0 " << kCanvas << " "
      << kCanvas << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty())
    out << "<text x=\"" << kCanvas / 2 << "\" y=\"30\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << title
        << "</text>\n";
}

void draw_curve(std::ostringstream& out, const Frame& fr, const Curve& c) {
  if (c.points.empty()) return;
  out << "<path d=\"";
  for (std::size_t k = 0; k < c.points.size(); ++k)
    out << (k == 0 ? "M" : "L") << px(fr.sx(c.points[k].x())) << " "
        << px(fr.sy(c.points[k].y()));
  out << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\""
      << c.width << "\"";
  if (c.dashed) out << " stroke-dasharray=\"6 4\"";
  out << "/>\n";
}

void draw_marker(std::ostringstream& out, const Frame& fr, const Marker& m) {
  out << "<circle cx=\"" << px(fr.sx(m.x)) << "\" cy=\"" << px(fr.sy(m.y))
      << "\" r=\"5\" stroke=\"" << m.color << "\" stroke-width=\"1.5\" fill=\""
      << (m.filled ? m.color : std::string("white")) << "\"/>\n";
}

void draw_axes(std::ostringstream& out, const Frame& fr,
               const std::string& xlabel, const std::string& ylabel) {
  out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kPlot << "\" height=\"" << kPlot
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double fx = fr.xmin + (fr.xmax - fr.xmin) * k / 4.0;
    const double fy = fr.ymin + (fr.ymax - fr.ymin) * k / 4.0;
    out << "<text x=\"" << px(fr.sx(fx)) << "\" y=\"" << kMargin + kPlot + 22
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << px(fx) << "</text>\n";
    out << "<text x=\"" << kMargin - 8 << "\" y=\"" << px(fr.sy(fy) + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
           "font-size=\"11\">"
        << px(fy) << "</text>\n";
  }
  out << "<text x=\"" << kMargin + kPlot / 2 << "\" y=\"" << kCanvas - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">"
      << xlabel << "</text>\n";
  out << "<text x=\"16\" y=\"" << kMargin + kPlot / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\" transform=\"rotate(-90 16 "
      << kMargin + kPlot / 2 << ")\">" << ylabel << "</text>\n";
}

}  // namespace

std::string viridis_hex(double t) {
  t = std::clamp(t, 0.0, 1.0);
  constexpr int n = sizeof(kViridis) / sizeof(kViridis[0]);
  const double pos = t * (n - 1);
  const int lo = std::min(n - 2, static_cast<int>(pos));
  const double w = pos - lo;
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(255 * (kViridis[lo][0] * (1 - w) + kViridis[lo + 1][0] * w))),
                static_cast<int>(std::lround(255 * (kViridis[lo][1] * (1 - w) + kViridis[lo + 1][1] * w))),
                static_cast<int>(std::lround(255 * (kViridis[lo][2] * (1 - w) + kViridis[lo + 1][2] * w))));
  return buf;
}

std::string heatmap(const AngularMap<double>& map, double vmin, double vmax,
                    bool log_scale, const std::vector<Curve>& overlays,
                    const std::vector<Marker>& markers,
                    const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  const auto& g = map.grid;
  const Frame fr{g.theta_min, g.theta_max, g.theta_min, g.theta_max};

  // Decimate to at most ~240 cells per axis; pointwise striding keeps the
  // rendered values exact at shared nodes.
  const int n = g.n_theta;
  const int stride = std::max(1, (n + 239) / 240);
  const double lo = log_scale ? std::log10(vmin) : vmin;
  const double hi = log_scale ? std::log10(vmax) : vmax;
  const double cell = kPlot * static_cast<double>(stride) / (n - 1);

  for (int i = 0; i < n; i += stride) {
    for (int j = 0; j < n; j += stride) {
      const double raw = map.values(i, j);
      std::string color = "#dddddd";
      if (std::isfinite(raw)) {
        double v = log_scale ? std::log10(std::max(raw, 1e-300)) : raw;
        color = viridis_hex((std::clamp(v, lo, hi) - lo) / (hi - lo));
      }
      // theta on the x axis, theta' on y.
      const double x = fr.sx(g.theta(i)) - cell / 2;
      const double y = fr.sy(g.theta(j)) - cell / 2;
      out << "<rect x=\"" << px(x) << "\" y=\"" << px(y) << "\" width=\""
          << px(cell + 0.5) << "\" height=\"" << px(cell + 0.5) << "\" fill=\""
          << color << "\"/>\n";
    }
  }
  for (const auto& c : overlays) draw_curve(out, fr, c);
  for (const auto& m : markers) draw_marker(out, fr, m);
  draw_axes(out, fr, "theta (rad)", "theta' (rad)");
  out << "</svg>\n";
  return out.str();
}

std::string chart(const std::vector<Curve>& curves,
                  const std::vector<Marker>& markers, double xmin, double xmax,
                  double ymin, double ymax, const std::string& xlabel,
                  const std::string& ylabel, const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  const Frame fr{xmin, xmax, ymin, ymax};
  for (const auto& c : curves) draw_curve(out, fr, c);
  for (const auto& m : markers) draw_marker(out, fr, m);
  draw_axes(out, fr, xlabel, ylabel);
  out << "</svg>\n";
  return out.str();
}

std::string polar(const std::vector<Curve>& profiles, double rmax,
                  const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  const Frame fr{-rmax, rmax, -rmax, rmax};
  for (int k = 1; k <= 3; ++k) {
    const double r = rmax * k / 3.0;
    out << "<circle cx=\"" << px(fr.sx(0)) << "\" cy=\"" << px(fr.sy(0))
        << "\" r=\"" << px(kPlot / 2.0 * k / 3.0)
        << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
    out << "<text x=\"" << px(fr.sx(0) + 4) << "\" y=\"" << px(fr.sy(r) - 4)
        << "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#888888\">"
        << px(r) << "</text>\n";
  }
  // profiles give r(theta) sampled on theta in [0, pi]; the axial symmetry
  // fills the other half disc with the phi -> phi + pi copy.
  for (const auto& p : profiles) {
    Curve c = p;
    c.points.clear();
    for (const auto& q : p.points)
      c.points.push_back({q.y() * std::sin(q.x()), q.y() * std::cos(q.x())});
    for (auto it = p.points.rbegin(); it != p.points.rend(); ++it)
      c.points.push_back({-it->y() * std::sin(it->x()), it->y() * std::cos(it->x())});
    draw_curve(out, fr, c);
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace dimerg2::svg
