#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "dimerg2/config.hpp"
#include "dimerg2/correlation.hpp"
#include "dimerg2/couplings.hpp"
#include "dimerg2/dynamics.hpp"
#include "dimerg2/figures.hpp"
#include "dimerg2/io.hpp"
#include "dimerg2/validate.hpp"

namespace {

using namespace dimerg2;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;

int env_threads() {
  const char* v = std::getenv("DIMERG2_THREADS");
  if (!v) return 1;
  const int n = std::atoi(v);
  return n > 0 ? n : 1;
}

struct MapArgs {
  std::string config_path;
  std::string payload = "psi2";
  std::string out_dir = "out/map";
  int grid_n = 0;
  int threads = 0;
  int lmax = 60;
};

int run_map(const MapArgs& args) {
  ParsedConfig cfg = load_config_file(args.config_path);
  if (args.grid_n) cfg.grid.n_theta = args.grid_n;
  cfg.grid.validate(cfg.env);
  const greens::PathEvaluator paths(cfg.dimer, cfg.env, args.lmax);

  io::RunManifest manifest;
  manifest.command = "map " + args.payload;
  manifest.config_text = serialize_config(cfg);

  corr::MapRequest req;
  req.grid = cfg.grid;
  req.threads = args.threads;

  const std::string base = args.out_dir + "/" + args.payload;
  std::vector<std::string> files;
  if (args.payload == "psi") {
    req.payload = corr::MapPayload::Psi;
    const auto map = corr::map_psi(req, paths);
    io::write_file(base + "_re.csv", io::map_csv_complex_part(map, true), &manifest);
    io::write_file(base + "_im.csv", io::map_csv_complex_part(map, false), &manifest);
    files = {base + "_re.csv", base + "_im.csv"};
  } else {
    if (args.payload == "psi2") req.payload = corr::MapPayload::Psi2;
    else if (args.payload == "g2") req.payload = corr::MapPayload::G2;
    else if (args.payload == "intensity") req.payload = corr::MapPayload::Intensity;
    else throw ConfigError("payload", "unknown payload '" + args.payload + "'");

    dynamics::CorrelatorSet cs;
    const dynamics::CorrelatorSet* cs_ptr = nullptr;
    if (req.payload != corr::MapPayload::Psi2) {
      // g2 and intensity need the steady state, hence couplings.
      const auto cpl = couplings::couplings_for(cfg.dimer, cfg.env, args.lmax);
      const auto ss = dynamics::steady_state(dynamics::build_generator(cpl, cfg.drive));
      cs = dynamics::correlators(ss.rho);
      cs_ptr = &cs;
    }
    const auto map = corr::map_real(req, paths, cs_ptr);
    io::write_file(base + ".csv", io::map_csv(map), &manifest);
    files = {base + ".csv"};
  }
  io::write_file(base + ".json",
                 io::map_sidecar_json(cfg.grid, cfg.env, cfg.dimer, args.payload, files),
                 &manifest);
  io::write_file(args.out_dir + "/manifest.json", io::manifest_json(manifest));
  std::cout << "wrote " << manifest.files.size() + 1 << " files under "
            << args.out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"directional photon correlations of a two-emitter dimer"};
  app.require_subcommand(1);

  // figure
  auto* fig = app.add_subcommand("figure", "reproduce a built-in figure pipeline");
  std::string fig_name;
  figures::FigureOptions fopt;
  fopt.threads = 0;
  fig->add_option("name", fig_name, "one of fig1b fig2 fig3a fig3b fig4b fig4c fig4d sm2")
      ->required();
  fig->add_option("--out", fopt.out_dir, "output directory");
  fig->add_option("--grid", fopt.grid_n, "grid nodes per axis");
  fig->add_option("--threshold", fopt.threshold, "|Psi|^2 minima threshold");
  fig->add_option("--lmax", fopt.lmax, "multipole cutoff");
  fig->add_option("--threads", fopt.threads, "worker threads (overrides DIMERG2_THREADS)");
  fig->add_option("--format", fopt.format, "csv|json|svg|all");
  fig->add_option("--state", fopt.state, "fig2 drive: symmetric|antisymmetric|both");
  fig->add_option("--panel", fopt.panel, "sm2 panel: a|b|c|all");

  // validate
  auto* val = app.add_subcommand("validate", "run oracle/property suites");
  std::string suite = "all";
  std::string val_out;
  val->add_option("suite", suite, "specialfns|couplings|dynamics|zeros|all");
  val->add_option("--out", val_out, "also write a JSON report here");

  // couplings
  auto* cpl = app.add_subcommand("couplings", "emit a coupling-constant table");
  std::string cpl_env = "mirror";
  double z1 = 0.6, z2_min = 1.0, z2_max = 2.5;
  int steps = 50;
  std::string cpl_out;
  cpl->add_option("--env", cpl_env, "mirror|free");
  cpl->add_option("--z1", z1, "first emitter height (lambda0)");
  cpl->add_option("--z2-min", z2_min);
  cpl->add_option("--z2-max", z2_max);
  cpl->add_option("--steps", steps);
  cpl->add_option("--out", cpl_out, "CSV path (default stdout)");

  // map
  auto* map = app.add_subcommand("map", "dense map from a configuration file");
  MapArgs margs;
  map->add_option("payload", margs.payload, "psi|psi2|g2|intensity");
  map->add_option("--config", margs.config_path, "configuration file")->required();
  map->add_option("--out", margs.out_dir, "output directory");
  map->add_option("--grid", margs.grid_n, "override grid nodes");
  map->add_option("--threads", margs.threads, "worker threads");
  map->add_option("--lmax", margs.lmax, "multipole cutoff");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfigError : kExitOk;
  }

  try {
    if (*fig) {
      if (fopt.threads <= 0) fopt.threads = env_threads();
      const auto manifest = figures::run_figure(fig_name, fopt);
      std::cout << "figure " << fig_name << ": " << manifest.files.size()
                << " files under " << fopt.out_dir << "/" << fig_name << "\n";
      return kExitOk;
    }
    if (*val) {
      const auto results = validate::run_suite(suite);
      std::cout << validate::report_text(results);
      if (!val_out.empty()) io::write_file(val_out, validate::report_json(results));
      for (const auto& r : results)
        if (!r.pass) return kExitValidationFailure;
      return kExitOk;
    }
    if (*cpl) {
      std::vector<io::CouplingsRow> rows;
      for (int k = 0; k < steps; ++k) {
        const double z2 = z2_min + (z2_max - z2_min) * k / (steps - 1);
        couplings::CouplingSet c;
        if (cpl_env == "mirror") c = couplings::couplings_mirror(z1, z2);
        else if (cpl_env == "free") c = couplings::couplings_free(z2 - z1);
        else throw ConfigError("--env", "couplings table supports mirror|free");
        rows.push_back({z2, c.gamma12, c.g12});
      }
      const std::string csv = io::couplings_csv(rows);
      if (cpl_out.empty()) std::cout << csv;
      else io::write_file(cpl_out, csv);
      return kExitOk;
    }
    if (*map) {
      if (margs.threads <= 0) margs.threads = env_threads();
      return run_map(margs);
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  }
  return kExitOk;
}
