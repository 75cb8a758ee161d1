#include "dimerg2/figures.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "dimerg2/correlation.hpp"
#include "dimerg2/couplings.hpp"
#include "dimerg2/dynamics.hpp"
#include "dimerg2/svg.hpp"
#include "dimerg2/zeros.hpp"

namespace dimerg2::figures {
namespace {

using nlohmann::ordered_json;
constexpr double kPi = kTwoPi / 2.0;

// Caption parameter sets.
const double kMirrorZ1 = 0.6;
const double kMirrorZ2 = 0.8;
const double kMirrorZ2Far = 1.7;
const double kFig1bSeparations[] = {0.25, 0.5, 1.0, 1.5};
const Complex kSubstrateEps[] = {{-5.0, 0.1}, {-3.0, 0.01}, {2.13, 0.0}};
const double kSphereEnergyEv = 3.0;
const double kSphereRadiusNm = 200.0;
const double kSphereGapNm = 100.0;
const double kSm2Separations[] = {1.45, 1.21, 0.99};

double sphere_radius_lambda0() {
  return kSphereRadiusNm / (kTwoPi * kHbarC_eV_nm / kSphereEnergyEv);
}
double sphere_offset_lambda0() {
  return (kSphereRadiusNm + kSphereGapNm) /
         (kTwoPi * kHbarC_eV_nm / kSphereEnergyEv);
}

std::string eps_color(Complex eps) {
  if (eps == Complex(-5.0, 0.1)) return "#1f77b4";   // metal, blue
  if (eps == Complex(-3.0, 0.01)) return "#9467bd";  // metal, violet
  if (eps == Complex(2.13, 0.0)) return "#2ca02c";   // dielectric, green
  return "#ff7f0e";                                  // vacuum reference
}

std::string eps_tag(Complex eps) {
  char buf[48];
  if (eps.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "eps_%g", eps.real());
  else
    std::snprintf(buf, sizeof buf, "eps_%g%+gi", eps.real(), eps.imag());
  return buf;
}

struct Emitter {
  io::RunManifest manifest;
  FigureOptions opt;
  std::string dir;

  bool want(const std::string& fmt) const {
    return opt.format == "all" || opt.format == fmt;
  }
  void emit(const std::string& name, const std::string& content,
            const std::string& fmt) {
    if (want(fmt)) io::write_file(dir + "/" + name, content, &manifest);
  }
};

std::string locus_csv(const zeros::ZeroLocus& locus) {
  std::string out = "feature,classification,vertex,theta,theta_prime,psi2\n";
  int id = 0;
  for (const auto& f : locus.features) {
    for (std::size_t k = 0; k < f.vertices.size(); ++k) {
      out += std::to_string(id) + "," + zeros::to_string(f.classification) +
             "," + std::to_string(k) + "," + format_double(f.vertices[k].x()) +
             "," + format_double(f.vertices[k].y()) + "," +
             format_double(f.residuals[k]) + "\n";
    }
    ++id;
  }
  return out;
}

std::vector<svg::Curve> locus_curves(const zeros::ZeroLocus& locus,
                                     const std::string& color, bool dashed) {
  std::vector<svg::Curve> curves;
  for (const auto& f : locus.expanded(zeros::ZeroClass::Interference)) {
    svg::Curve c;
    c.points = f.vertices;
    c.color = color;
    c.dashed = dashed;
    if (f.vertices.size() == 1) {  // collapsed point: draw a small cross
      c.points.push_back(f.vertices[0] + Eigen::Vector2d(0.02, 0.02));
      c.points.push_back(f.vertices[0] - Eigen::Vector2d(0.02, 0.02));
    }
    curves.push_back(std::move(c));
  }
  return curves;
}

std::vector<svg::Marker> point_markers(const zeros::ZeroLocus& locus,
                                       zeros::ZeroClass cls,
                                       const std::string& color, bool filled) {
  std::vector<svg::Marker> out;
  for (const auto& f : locus.expanded(cls))
    for (const auto& v : f.vertices) out.push_back({v.x(), v.y(), color, filled});
  return out;
}

ordered_json mask_summary(const zeros::MinimaMask& mask) {
  ordered_json j;
  j["threshold"] = mask.threshold;
  j["n_components"] = mask.n_components;
  j["area_fraction"] = mask.area_fraction();
  std::vector<int> sizes(mask.n_components, 0);
  for (Eigen::Index i = 0; i < mask.labels.rows(); ++i)
    for (Eigen::Index jj = 0; jj < mask.labels.cols(); ++jj)
      if (mask.labels(i, jj) > 0) ++sizes[mask.labels(i, jj) - 1];
  j["component_sizes"] = sizes;
  return j;
}

// Mask cells rendered as translucent squares in one color.
std::string masks_svg(const std::vector<zeros::MinimaMask>& masks,
                      const std::vector<std::string>& colors,
                      const AngularGrid& grid,
                      const std::vector<svg::Marker>& markers,
                      const std::vector<svg::Curve>& curves,
                      const std::string& title) {
  std::ostringstream out;
  const int canvas = 680, margin = 60, plot = 560;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << canvas
      << "\" height=\"" << canvas << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << canvas / 2
      << "\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << title << "</text>\n";
  const double span = grid.theta_max - grid.theta_min;
  auto sx = [&](double v) { return margin + (v - grid.theta_min) / span * plot; };
  auto sy = [&](double v) { return margin + plot - (v - grid.theta_min) / span * plot; };
  const int n = grid.n_theta;
  const int stride = std::max(1, (n + 239) / 240);
  const double cell = plot * static_cast<double>(stride) / (n - 1);
  for (std::size_t m = 0; m < masks.size(); ++m) {
    for (int i = 0; i < n; i += stride) {
      for (int j = 0; j < n; j += stride) {
        if (!masks[m].mask(i, j)) continue;
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
                      "fill=\"%s\" fill-opacity=\"0.45\"/>\n",
                      sx(grid.theta(i)) - cell / 2, sy(grid.theta(j)) - cell / 2,
                      cell + 0.5, cell + 0.5, colors[m].c_str());
        out << buf;
      }
    }
  }
  for (const auto& c : curves) {
    out << "<path d=\"";
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s%.2f %.2f", k == 0 ? "M" : "L",
                    sx(c.points[k].x()), sy(c.points[k].y()));
      out << buf;
    }
    out << "\" fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\""
        << (c.dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
  }
  for (const auto& m : markers) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"5\" stroke=\"%s\" "
                  "stroke-width=\"1.5\" fill=\"%s\"/>\n",
                  sx(m.x), sy(m.y), m.color.c_str(),
                  m.filled ? m.color.c_str() : "white");
    out << buf;
  }
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << plot
      << "\" height=\"" << plot << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "</svg>\n";
  return out.str();
}

void fig1b(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi, n);
  std::vector<svg::Curve> curves;
  const char* colors[] = {"#1f77b4", "#2ca02c", "#9467bd", "#d62728"};
  int idx = 0;
  for (double z12 : kFig1bSeparations) {
    DimerConfig d;
    d.z1 = 0.0;
    d.z2 = z12;
    const greens::PathEvaluator paths(d, Environment::free_space());
    const auto locus = zeros::zero_locus(paths, grid);
    char tag[32];
    std::snprintf(tag, sizeof tag, "z12_%g", z12);
    em.emit(std::string("locus_") + tag + ".json", io::locus_json(locus), "json");
    em.emit(std::string("locus_") + tag + ".csv", locus_csv(locus), "csv");
    for (auto& c : locus_curves(locus, colors[idx % 4], false))
      curves.push_back(std::move(c));
    ++idx;
  }
  em.emit("fig1b.svg",
          svg::chart(curves, {}, 0.0, kPi, 0.0, kPi, "theta (rad)",
                     "theta' (rad)", "free-space geometric zeros"),
          "svg");
}

void fig2(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi / 2.0, n);
  DimerConfig d;
  d.z1 = kMirrorZ1;
  d.z2 = kMirrorZ2;
  const Environment env = Environment::perfect_mirror();
  const greens::PathEvaluator paths(d, env);
  const auto cpl = couplings::couplings_mirror(d.z1, d.z2);
  const auto locus = zeros::zero_locus(paths, grid);
  const auto zero_curves = locus_curves(locus, "#2ca02c", true);

  struct State {
    const char* name;
    DriveConfig drive;
  };
  std::vector<State> states;
  if (em.opt.state == "symmetric" || em.opt.state == "both")
    states.push_back({"symmetric", {cpl.g12, {1.0, 0.0}, {1.0, 0.0}}});
  if (em.opt.state == "antisymmetric" || em.opt.state == "both")
    states.push_back({"antisymmetric", {-cpl.g12, {0.1, 0.0}, {-0.1, 0.0}}});
  if (states.empty())
    throw std::invalid_argument("fig2: unknown state '" + em.opt.state + "'");

  for (const auto& st : states) {
    const auto ss = dynamics::steady_state(dynamics::build_generator(cpl, st.drive));
    const auto cs = dynamics::correlators(ss.rho);

    corr::MapRequest req;
    req.grid = grid;
    req.payload = corr::MapPayload::G2;
    req.threads = em.opt.threads;
    const auto g2 = corr::map_real(req, paths, &cs);
    const std::string prefix = std::string("g2_") + st.name;
    em.emit(prefix + ".csv", io::map_csv(g2), "csv");
    em.emit(prefix + ".json",
            io::map_sidecar_json(grid, env, d, "g2", {prefix + ".csv"}), "json");
    em.emit(prefix + ".svg",
            svg::heatmap(g2, 0.0, 2.0, false, zero_curves,
                         point_markers(locus, zeros::ZeroClass::TrivialQuenching,
                                       "#ffffff", false),
                         std::string("g2, ") + st.name + " drive"),
            "svg");

    const auto profile = corr::intensity_profile(grid, cs, paths);
    em.emit(std::string("intensity_") + st.name + ".csv",
            io::profile_csv(grid, profile, "intensity_over_Isd"), "csv");
    svg::Curve pc;
    for (int i = 0; i < n; ++i) pc.points.push_back({grid.theta(i), profile(i)});
    pc.color = "#1f77b4";
    em.emit(std::string("intensity_") + st.name + ".svg",
            svg::chart({pc}, {}, 0.0, kPi / 2.0, 0.0,
                       std::max(1.0, profile.maxCoeff() * 1.05), "theta' (rad)",
                       "I / I_sd", std::string("intensity, ") + st.name),
            "svg");

    em.emit(std::string("tomography_") + st.name + ".csv",
            io::tomography_csv(ss.rho), "csv");
    em.emit(std::string("tomography_") + st.name + ".json",
            io::tomography_json(ss.rho), "json");
  }
  em.emit("locus.json", io::locus_json(locus), "json");
}

void fig3a(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi / 2.0, n);
  std::vector<svg::Curve> curves;
  std::vector<svg::Marker> markers;
  const struct {
    double z2;
    const char* color;
    const char* tag;
  } cases[] = {{kMirrorZ2, "#d62728", "z2_0.8"}, {kMirrorZ2Far, "#1f77b4", "z2_1.7"}};
  for (const auto& c : cases) {
    DimerConfig d;
    d.z1 = kMirrorZ1;
    d.z2 = c.z2;
    const greens::PathEvaluator paths(d, Environment::perfect_mirror());
    const auto locus = zeros::zero_locus(paths, grid);
    em.emit(std::string("locus_") + c.tag + ".json", io::locus_json(locus), "json");
    em.emit(std::string("locus_") + c.tag + ".csv", locus_csv(locus), "csv");
    for (auto& curve : locus_curves(locus, c.color, false))
      curves.push_back(std::move(curve));
    for (auto& m : point_markers(locus, zeros::ZeroClass::TrivialQuenching, c.color, false))
      markers.push_back(m);
    for (auto& m : point_markers(locus, zeros::ZeroClass::EpsIndependent, "#d62728", true))
      markers.push_back(m);
  }
  em.emit("fig3a.svg",
          svg::chart(curves, markers, 0.0, kPi / 2.0, 0.0, kPi / 2.0,
                     "theta (rad)", "theta' (rad)", "mirror geometric zeros"),
          "svg");
}

void fig3b(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const double threshold = em.opt.threshold ? em.opt.threshold : 1e-2;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi / 2.0, n);
  DimerConfig d;
  d.z1 = kMirrorZ1;
  d.z2 = kMirrorZ2Far;

  std::vector<zeros::MinimaMask> masks;
  std::vector<std::string> colors;
  ordered_json summary;
  for (Complex eps : kSubstrateEps) {
    const greens::PathEvaluator paths(d, Environment::substrate(eps));
    corr::MapRequest req;
    req.grid = grid;
    req.payload = corr::MapPayload::Psi2;
    req.threads = em.opt.threads;
    const auto psi2 = corr::map_real(req, paths);
    const auto mask = zeros::minima_map(psi2, threshold);
    const std::string tag = eps_tag(eps);
    em.emit("psi2_" + tag + ".csv", io::map_csv(psi2), "csv");
    em.emit("mask_" + tag + ".csv", io::mask_csv(mask), "csv");
    summary[tag] = mask_summary(mask);
    masks.push_back(mask);
    colors.push_back(eps_color(eps));
  }

  std::vector<svg::Marker> markers;
  for (const auto& p : zeros::eps_independent_zeros(d.z12()).points)
    if (p.verified) markers.push_back({p.theta, p.theta_p, "#d62728", true});
  em.emit("components.json", summary.dump(2) + "\n", "json");
  em.emit("fig3b.svg",
          masks_svg(masks, colors, grid, markers, {},
                    "substrate |Psi|^2 minima (threshold 1e-2)"),
          "svg");
}

greens::PathEvaluator sphere_paths(Complex eps, double z12, int lmax) {
  DimerConfig d;
  const double b = z12 / 2.0;
  d.z1 = -b;
  d.z2 = b;
  if (eps == Complex(1.0, 0.0))
    return {d, Environment::free_space()};
  return {d, Environment::sphere(eps, sphere_radius_lambda0(), b), lmax};
}

void fig4b(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi, n);
  const double b = sphere_offset_lambda0();

  std::vector<svg::Curve> g2_curves, int_curves;
  double g2_max = 0.0, int_max = 0.0;
  for (Complex eps : kSubstrateEps) {
    const auto paths = sphere_paths(eps, 2.0 * b, em.opt.lmax);
    const auto cpl =
        couplings::couplings_sphere(eps, sphere_radius_lambda0(), b, em.opt.lmax);
    DriveConfig drive;
    drive.detuning = 0.0;
    drive.omega1 = drive.omega2 = Complex(1.0, 0.0);
    const auto ss = dynamics::steady_state(dynamics::build_generator(cpl, drive));
    const auto cs = dynamics::correlators(ss.rho);

    std::string csv = "theta,g2_diag,intensity_over_Isd\n";
    svg::Curve cg, ci;
    cg.color = ci.color = eps_color(eps);
    for (int i = 0; i < n; ++i) {
      const double th = grid.theta(i);
      const double g2 = corr::g2_eval(th, th, cs, paths);
      const double inten = corr::intensity(th, cs, paths);
      csv += format_double(th) + "," + format_double(g2) + "," +
             format_double(inten) + "\n";
      cg.points.push_back({th, g2});
      ci.points.push_back({th, inten});
      if (std::isfinite(g2)) g2_max = std::max(g2_max, g2);
      int_max = std::max(int_max, inten);
    }
    em.emit("polar_" + eps_tag(eps) + ".csv", csv, "csv");
    g2_curves.push_back(std::move(cg));
    int_curves.push_back(std::move(ci));
  }
  em.emit("fig4b_g2.svg", svg::polar(g2_curves, g2_max * 1.05, "g2(theta, theta)"), "svg");
  em.emit("fig4b_intensity.svg",
          svg::polar(int_curves, int_max * 1.05, "intensity / I_sd"), "svg");
}

void fig4c(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const double threshold = em.opt.threshold ? em.opt.threshold : 1e-2;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi, n);
  const double z12 = 2.0 * sphere_offset_lambda0();

  std::vector<zeros::MinimaMask> masks;
  std::vector<std::string> colors;
  ordered_json summary;
  for (Complex eps : kSubstrateEps) {
    const auto paths = sphere_paths(eps, z12, em.opt.lmax);
    corr::MapRequest req;
    req.grid = grid;
    req.payload = corr::MapPayload::Psi2;
    req.threads = em.opt.threads;
    const auto psi2 = corr::map_real(req, paths);
    const auto mask = zeros::minima_map(psi2, threshold);
    const std::string tag = eps_tag(eps);
    em.emit("mask_" + tag + ".csv", io::mask_csv(mask), "csv");
    summary[tag] = mask_summary(mask);
    masks.push_back(mask);
    colors.push_back(eps_color(eps));
  }

  // Exact geometric zeros of the free-standing dimer (eps = 1).
  const auto free_locus = zeros::zero_locus(sphere_paths({1.0, 0.0}, z12, 0), grid);
  em.emit("locus_eps_1.json", io::locus_json(free_locus), "json");
  em.emit("components.json", summary.dump(2) + "\n", "json");
  em.emit("fig4c.svg",
          masks_svg(masks, colors, grid, {},
                    locus_curves(free_locus, eps_color({1.0, 0.0}), false),
                    "sphere |Psi|^2 minima and free-space zeros"),
          "svg");
}

void fig4d(Emitter& em) {
  const double k0R = kTwoPi * sphere_radius_lambda0();
  const double k0b = kTwoPi * sphere_offset_lambda0();
  std::vector<svg::Curve> curves;
  double lmax_seen = 0.0;
  std::string csv = "eps,l,abs_cl,abs_cl_normalized,re_cl,im_cl\n";
  for (Complex eps : kSubstrateEps) {
    const auto m = greens::sphere_multipoles(eps, k0R, k0b, em.opt.lmax);
    double peak = 0.0;
    for (const auto& c : m.c) peak = std::max(peak, std::abs(c));
    svg::Curve curve;
    curve.color = eps_color(eps);
    for (int l = 1; l <= m.l_max; ++l) {
      const Complex c = m.c[l - 1];
      csv += eps_tag(eps) + "," + std::to_string(l) + "," +
             format_double(std::abs(c)) + "," + format_double(std::abs(c) / peak) +
             "," + format_double(c.real()) + "," + format_double(c.imag()) + "\n";
      if (l <= 10) curve.points.push_back({static_cast<double>(l), std::abs(c) / peak});
    }
    lmax_seen = std::max(lmax_seen, 10.0);
    curves.push_back(std::move(curve));
  }
  em.emit("multipoles.csv", csv, "csv");
  em.emit("fig4d.svg",
          svg::chart(curves, {}, 1.0, lmax_seen, 0.0, 1.05, "l",
                     "|c_l| / max|c_l|", "sphere multipole amplitudes"),
          "svg");
}

void sm2(Emitter& em) {
  const int n = em.opt.grid_n ? em.opt.grid_n : 721;
  const double threshold = em.opt.threshold ? em.opt.threshold : 1e-2;
  const AngularGrid grid = AngularGrid::uniform(0.0, kPi, n);
  const char* panel_names[] = {"a", "b", "c"};
  for (int p = 0; p < 3; ++p) {
    if (em.opt.panel != "all" && em.opt.panel != panel_names[p]) continue;
    const double z12 = kSm2Separations[p];
    std::vector<zeros::MinimaMask> masks;
    std::vector<std::string> colors;
    for (Complex eps : {kSubstrateEps[0], kSubstrateEps[1], kSubstrateEps[2],
                        Complex(1.0, 0.0)}) {
      const auto paths = sphere_paths(eps, z12, em.opt.lmax);
      corr::MapRequest req;
      req.grid = grid;
      req.payload = corr::MapPayload::Psi2;
      req.threads = em.opt.threads;
      const auto mask = zeros::minima_map(corr::map_real(req, paths), threshold);
      em.emit(std::string("mask_") + panel_names[p] + "_" + eps_tag(eps) + ".csv",
              io::mask_csv(mask), "csv");
      masks.push_back(mask);
      colors.push_back(eps_color(eps));
    }
    char title[64];
    std::snprintf(title, sizeof title, "sphere minima, z12 = %g lambda0", z12);
    em.emit(std::string("sm2_") + panel_names[p] + ".svg",
            masks_svg(masks, colors, grid, {}, {}, title), "svg");
  }
}

}  // namespace

std::vector<std::string> figure_names() {
  return {"fig1b", "fig2", "fig3a", "fig3b", "fig4b", "fig4c", "fig4d", "sm2"};
}

io::RunManifest run_figure(const std::string& name, const FigureOptions& opt) {
  const auto start = std::chrono::steady_clock::now();
  Emitter em;
  em.opt = opt;
  em.dir = opt.out_dir + "/" + name;
  em.manifest.command = "figure " + name;

  ordered_json preset;
  preset["preset_version"] = kPresetVersion;
  preset["figure"] = name;
  preset["grid_n"] = opt.grid_n ? opt.grid_n : 721;
  preset["threshold"] = opt.threshold ? opt.threshold : 1e-2;
  preset["lmax"] = opt.lmax;
  em.manifest.config_text = preset.dump();

  if (name == "fig1b") fig1b(em);
  else if (name == "fig2") fig2(em);
  else if (name == "fig3a") fig3a(em);
  else if (name == "fig3b") fig3b(em);
  else if (name == "fig4b") fig4b(em);
  else if (name == "fig4c") fig4c(em);
  else if (name == "fig4d") fig4d(em);
  else if (name == "sm2") sm2(em);
  else throw std::invalid_argument("unknown figure '" + name + "'");

  em.manifest.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  io::write_file(em.dir + "/manifest.json", io::manifest_json(em.manifest));
  return em.manifest;
}

}  // namespace dimerg2::figures
