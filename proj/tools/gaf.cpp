// gaf: run identity suites on the affine group tower and emit reports.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gaf/errors.hpp"
#include "gaf/harness.hpp"
#include "gaf/kernels.hpp"

namespace {

struct Options {
  std::string config;
  std::string profile = "default";
  std::string out;
  std::string format = "line-json";
  std::string level;
  std::string bundle;
  std::uint64_t seed = 0;
  int n = 0;
  bool fixed_timing = false;
  std::vector<std::string> sweep_axes{"translation", "scale", "diagonal", "nilpotent"};
  int factor = 2;
  int steps = 3;
};

gaf::RunConfig build_config(const Options& o, CLI::App& app) {
  gaf::RunConfig cfg = o.config.empty() ? gaf::profile_config(o.profile) : gaf::load_config(o.config);
  if (!o.config.empty() && app.count("--profile"))
    throw gaf::ConfigurationError("--profile and --config are exclusive; set \"profile\" inside the config");
  if (!o.level.empty()) cfg.grid.level = gaf::parse_level(o.level);
  if (o.n != 0) cfg.grid.n = o.n;
  if (!o.bundle.empty()) cfg.bundle = o.bundle;
  if (app.count("--seed")) cfg.seed = o.seed;
  if (!o.out.empty()) cfg.output = o.out;
  if (o.fixed_timing) cfg.fixed_timing = true;
  gaf::validate(cfg);
  return cfg;
}

int finish(const std::vector<gaf::IdentityReport>& reports, const gaf::RunConfig& cfg, gaf::Format format) {
  if (cfg.output.empty()) {
    gaf::emit_report(reports, format, std::cout);
  } else {
    const std::string path = gaf::emit_report(reports, format, cfg.output);
    std::cerr << "wrote " << reports.size() << " reports to " << path << "\n";
  }
  int failed = 0;
  for (const auto& r : reports)
    if (r.asserted() && !r.passed) {
      ++failed;
      std::cerr << "FAIL " << r.identity << " residual " << r.residual << " > " << r.tolerance << "\n";
    }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chained Fourier transforms on the affine group tower: identity checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--config", o.config, "JSON run configuration")->check(CLI::ExistingFile);
  app.add_option("--profile", o.profile, "default, deep or so3");
  app.add_option("--out", o.out, "output directory (stdout if absent)");
  app.add_option("--format", o.format, "line-json or csv");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--level", o.level, "N, S, SL, GL+, GL, GA+ or GA");
  app.add_option("--n", o.n, "matrix size (2 or 3)");
  app.add_option("--bundle", o.bundle, "zero, gaussian, mixed or random");
  app.add_flag("--fixed-timing", o.fixed_timing, "write seconds as 0 for byte-identical output");

  app.add_subcommand("plancherel", "Plancherel residual of the configured level");
  app.add_subcommand("convolution", "convolution identities and shift equivariance");
  app.add_subcommand("invariance", "Haar, extension and modulus checks");
  app.add_subcommand("all", "every suite of the level");
  auto* sweep = app.add_subcommand("sweep", "Plancherel residual under grid refinement");
  sweep->add_option("--axes", o.sweep_axes, "axes to refine")->delimiter(',');
  sweep->add_option("--factor", o.factor, "refinement factor per step");
  sweep->add_option("--steps", o.steps, "number of grids");

  CLI11_PARSE(app, argc, argv);

  if (const char* t = std::getenv("GAF_NUM_THREADS")) {
    try {
      gaf::kernels::set_thread_count(std::stoi(t));
    } catch (const std::exception&) {
      std::cerr << "GAF_NUM_THREADS: expected a positive integer\n";
      return 2;
    }
  }

  try {
    const gaf::Format format = gaf::parse_format(o.format);
    const gaf::RunConfig cfg = build_config(o, app);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "sweep") {
      const gaf::SweepResult s = gaf::sweep_convergence(cfg, o.sweep_axes, o.factor, o.steps);
      if (s.flagged) std::cerr << "sweep: residual did not decrease at some step\n";
      const int rc = finish(gaf::sweep_reports(s, cfg), cfg, format);
      return s.flagged ? 1 : rc;
    }
    return finish(gaf::run_suite(cfg, gaf::parse_suite(cmd)), cfg, format);
  } catch (const gaf::ConfigurationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
