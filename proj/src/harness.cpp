#include "gaf/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <type_traits>

#include <nlohmann/json.hpp>

#include "gaf/bundle.hpp"
#include "gaf/composite.hpp"
#include "gaf/errors.hpp"
#include "gaf/spectra.hpp"

namespace gaf {

namespace {

using json = nlohmann::json;

template <class Config>
auto convolution_grids(Config& cfg) {
  using G = std::conditional_t<std::is_const_v<Config>, const ConvolutionGrid, ConvolutionGrid>;
  return std::array<std::pair<const char*, G*>, 3>{{{"solvable", &cfg.solvable_convolution},
                                                    {"affine", &cfg.affine_convolution},
                                                    {"affine_spectral", &cfg.affine_spectral}}};
}

const char* axis_name(AxisKind k) {
  switch (k) {
    case AxisKind::Translation: return "translation";
    case AxisKind::Scale: return "scale";
    case AxisKind::Diagonal: return "diagonal";
    case AxisKind::Nilpotent: return "nilpotent";
    default: return "compact";
  }
}

std::vector<AxisKind> noncompact_kinds(const LevelGrid& g) {
  std::vector<AxisKind> out;
  const Chart c = g.chart();
  for (AxisKind k : c.axis_kinds())
    if (!is_compact(k) && std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
  return out;
}

bool has_compact(const LevelGrid& g) {
  const Chart c = g.chart();
  for (AxisKind k : c.axis_kinds())
    if (is_compact(k)) return true;
  return false;
}

std::vector<Axis> compact_axes(const LevelGrid& g) {
  std::vector<Axis> out;
  for (auto& a : g.spatial_axes())
    if (is_compact(a.kind)) out.push_back(a);
  return out;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

RunConfig profile_config(const std::string& name) {
  RunConfig cfg;
  cfg.profile = name;
  if (name == "default") return cfg;
  if (name == "deep") {
    for (AxisGrid* a : {&cfg.grid.translation, &cfg.grid.scale, &cfg.grid.diagonal, &cfg.grid.nilpotent}) {
      a->count *= 2;
      a->freq_count *= 2;
      a->freq_max *= 2;
    }
    cfg.grid.compact.nodes *= 2;
    cfg.grid.compact.band_limit *= 2;
    return cfg;
  }
  if (name == "so3") {
    cfg.grid.n = 3;
    cfg.grid.compact.nodes = 16;
    cfg.grid.compact.band_limit = 4;
    return cfg;
  }
  throw ConfigurationError("profile: unknown profile '" + name + "' (expected default, deep or so3)");
}

std::vector<std::string> profile_names() { return {"default", "deep", "so3"}; }

std::vector<std::string> config_issues(const RunConfig& cfg) {
  std::vector<std::string> issues;
  const LevelGrid& g = cfg.grid;
  if (g.n != 2 && g.n != 3) {
    issues.push_back("n: must be 2 or 3 (got " + std::to_string(g.n) + ")");
  } else {
    for (AxisKind k : noncompact_kinds(g)) {
      const AxisGrid& a = g.grid_for(k);
      const std::string name = std::string("axes.") + axis_name(k);
      bool range_ok = true;
      if (a.count < 8)
        issues.push_back(name + ".count: grid size " + std::to_string(a.count) + " < 8 on non-compact axis " +
                         axis_name(k));
      if (!std::isfinite(a.min) || !std::isfinite(a.max) || !(a.min < a.max)) {
        issues.push_back(name + ": range must be finite with min < max");
        range_ok = false;
      }
      if (a.freq_count < 2) issues.push_back(name + ".freq_count: must be >= 2");
      if (!(a.freq_max > 0) || !std::isfinite(a.freq_max)) {
        issues.push_back(name + ".freq_max: must be positive");
      } else if (range_ok && a.count >= 2) {
        const double nyquist = std::numbers::pi * (a.count - 1) / (a.max - a.min);
        if (a.freq_max > nyquist * (1.0 + 1e-12)) {
          std::ostringstream os;
          os << name << ".freq_max: " << a.freq_max << " exceeds the Nyquist limit pi/h = " << nyquist;
          issues.push_back(os.str());
        }
      }
    }
    if (has_compact(g)) {
      const CompactGrid& c = g.compact;
      if (c.nodes < 1) issues.push_back("compact.nodes: must be >= 1");
      if (c.band_limit < 0) issues.push_back("compact.band_limit: must be >= 0");
      if (c.beta_nodes < 0) issues.push_back("compact.beta_nodes: must be >= 0");
      if (c.nodes >= 1 && c.band_limit >= 0 && c.beta_nodes >= 0) {
        try {
          require_compact_quadrature(compact_axes(g), c.band_limit);
        } catch (const ConfigurationError& e) {
          for (const auto& s : e.issues()) issues.push_back("compact: " + s);
        }
      }
    }
    if (known_bundle(cfg.bundle) && issues.empty()) {
      const BundlePair pair = make_bundle_pair(cfg.bundle, g.level, g.n, cfg.seed);
      std::vector<const TestFunctionBundle*> parts{&pair.plus};
      if (has_minus_component(g.level)) parts.push_back(&pair.minus);
      for (const TestFunctionBundle* b : parts) {
        if (b->has_compact() && b->compact().band() > g.compact.band_limit)
          issues.push_back("bundle: compact factor has band " + std::to_string(b->compact().band()) +
                           " above compact.band_limit " + std::to_string(g.compact.band_limit));
        for (const auto& [label, ratio] : b->boundary_ratios(g))
          if (ratio > kDecayThreshold) {
            std::ostringstream os;
            os << "bundle '" << cfg.bundle << "' does not decay on axis " << label << ": boundary/peak = " << ratio
               << " exceeds the decay threshold " << kDecayThreshold;
            issues.push_back(os.str());
          }
      }
    }
  }
  if (!known_bundle(cfg.bundle))
    issues.push_back("bundle: unknown bundle '" + cfg.bundle + "' (expected zero, gaussian, mixed or random)");
  for (const auto& [name, cv] : convolution_grids(cfg)) {
    const std::string p = std::string("convolution.") + name + ".";
    if (cv->count < 2) issues.push_back(p + "count: must be >= 2");
    if (!(cv->range > 0) || !std::isfinite(cv->range)) issues.push_back(p + "range: must be positive");
    if (!(cv->log_range > 0) || !std::isfinite(cv->log_range)) issues.push_back(p + "log_range: must be positive");
    if (cv->compact_nodes < 1) issues.push_back(p + "compact_nodes: must be >= 1");
    if (cv->points < 1 || cv->points > 16) issues.push_back(p + "points: must be in 1..16");
  }
  if (!(cfg.budget_seconds > 0)) issues.push_back("budget_seconds: must be positive");
  return issues;
}

void validate(const RunConfig& cfg) {
  auto issues = config_issues(cfg);
  if (!issues.empty()) throw ConfigurationError(issues);
}

namespace {

template <class T>
void read(const json& j, const std::string& path, const char* key, T& out, std::vector<std::string>& issues) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    issues.push_back(path + key + ": wrong type");
  }
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed,
                std::vector<std::string>& issues) {
  if (!j.is_object()) {
    issues.push_back((path.empty() ? std::string("config") : path.substr(0, path.size() - 1)) + ": expected an object");
    return;
  }
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) issues.push_back(path + it.key() + ": unknown key");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigurationError(std::string("parse error: ") + e.what());
  }
  std::vector<std::string> issues;
  check_keys(j, "", {"profile", "level", "n", "bundle", "seed", "output", "axes", "compact", "convolution",
                     "budget_seconds", "fixed_timing"},
             issues);

  std::string profile = "default";
  read(j, "", "profile", profile, issues);
  RunConfig cfg;
  try {
    cfg = profile_config(profile);
  } catch (const ConfigurationError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
  if (j.contains("level")) {
    std::string level;
    read(j, "", "level", level, issues);
    try {
      cfg.grid.level = parse_level(level);
    } catch (const std::exception&) {
      issues.push_back("level: unknown level '" + level + "' (expected N, S, SL, GL+, GL, GA+ or GA)");
    }
  }
  read(j, "", "n", cfg.grid.n, issues);
  read(j, "", "bundle", cfg.bundle, issues);
  read(j, "", "seed", cfg.seed, issues);
  read(j, "", "output", cfg.output, issues);
  read(j, "", "budget_seconds", cfg.budget_seconds, issues);
  read(j, "", "fixed_timing", cfg.fixed_timing, issues);
  if (j.contains("axes")) {
    const json& ax = j.at("axes");
    check_keys(ax, "axes.", {"translation", "scale", "diagonal", "nilpotent"}, issues);
    if (ax.is_object())
      for (AxisKind k : {AxisKind::Translation, AxisKind::Scale, AxisKind::Diagonal, AxisKind::Nilpotent}) {
        const char* name = axis_name(k);
        if (!ax.contains(name)) continue;
        const json& a = ax.at(name);
        const std::string p = std::string("axes.") + name + ".";
        check_keys(a, p, {"count", "min", "max", "freq_count", "freq_max"}, issues);
        if (!a.is_object()) continue;
        AxisGrid& g = cfg.grid.grid_for(k);
        read(a, p, "count", g.count, issues);
        read(a, p, "min", g.min, issues);
        read(a, p, "max", g.max, issues);
        read(a, p, "freq_count", g.freq_count, issues);
        read(a, p, "freq_max", g.freq_max, issues);
      }
  }
  if (j.contains("compact")) {
    const json& c = j.at("compact");
    check_keys(c, "compact.", {"nodes", "band_limit", "beta_nodes"}, issues);
    if (c.is_object()) {
      read(c, "compact.", "nodes", cfg.grid.compact.nodes, issues);
      read(c, "compact.", "band_limit", cfg.grid.compact.band_limit, issues);
      read(c, "compact.", "beta_nodes", cfg.grid.compact.beta_nodes, issues);
    }
  }
  if (j.contains("convolution")) {
    const json& c = j.at("convolution");
    check_keys(c, "convolution.", {"solvable", "affine", "affine_spectral"}, issues);
    if (c.is_object())
      for (auto& [name, cv] : convolution_grids(cfg)) {
        if (!c.contains(name)) continue;
        const json& g = c.at(name);
        const std::string p = std::string("convolution.") + name + ".";
        check_keys(g, p, {"count", "range", "log_range", "compact_nodes", "points"}, issues);
        if (!g.is_object()) continue;
        read(g, p, "count", cv->count, issues);
        read(g, p, "range", cv->range, issues);
        read(g, p, "log_range", cv->log_range, issues);
        read(g, p, "compact_nodes", cv->compact_nodes, issues);
        read(g, p, "points", cv->points, issues);
      }
  }
  if (!issues.empty()) throw ConfigurationError(issues);
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("config: cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return parse_config(os.str());
}

Suite parse_suite(const std::string& s) {
  if (s == "plancherel") return Suite::Plancherel;
  if (s == "convolution") return Suite::Convolution;
  if (s == "invariance") return Suite::Invariance;
  if (s == "all") return Suite::All;
  throw ConfigurationError("suite: unknown suite '" + s + "'");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::Plancherel: return "plancherel";
    case Suite::Convolution: return "convolution";
    case Suite::Invariance: return "invariance";
    case Suite::All: return "all";
  }
  return "all";
}

namespace {

IdentityReport plancherel_report(const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  IdentityReport r = has_minus_component(cfg.level())
                         ? plancherel_residual(cfg.grid, make_bundle_pair(cfg.bundle, cfg.level(), cfg.n(), cfg.seed))
                         : plancherel_residual(cfg.grid, make_bundle(cfg.bundle, cfg.level(), cfg.n(), cfg.seed));
  r.seed = cfg.seed;
  r.seconds = elapsed(t0);
  const Level l = cfg.level();
  // 1e-6 on N holds for the Gaussian; the bump of the mixed bundle gets the separable-bundle bound
  const double tol = l == Level::N && cfg.bundle == "gaussian" ? 1e-6
                     : (l == Level::N || l == Level::S || l == Level::SL) ? 1e-4
                                                                           : 1e-3;
  finalize(r, tol);
  return r;
}

using Task = std::function<IdentityReport()>;

void add_plancherel(const RunConfig& cfg, std::vector<std::pair<std::string, Task>>& tasks) {
  tasks.emplace_back("plancherel", [&cfg] { return plancherel_report(cfg); });
}

void add_convolution(const RunConfig& cfg, std::vector<std::pair<std::string, Task>>& tasks) {
  const Level l = cfg.level();
  const std::uint64_t seed = cfg.seed;
  if (l == Level::S && cfg.n() == 2) {
    const ConvolutionGrid cv = cfg.solvable_convolution;
    tasks.emplace_back("solvable_convolution", [cv, seed] { return solvable_convolution_identity(cv, seed); });
    tasks.emplace_back("solvable_spectral_convolution", [cv, seed] { return solvable_spectral_identity(cv, seed); });
  }
  if (l == Level::GAPlus && cfg.n() == 2) {
    const ConvolutionGrid cv = cfg.affine_convolution, sp = cfg.affine_spectral;
    tasks.emplace_back("affine_convolution", [cv, seed] { return affine_convolution_identity(cv, seed); });
    tasks.emplace_back("affine_spectral_convolution", [sp, seed] { return affine_spectral_identity(sp, seed); });
    tasks.emplace_back("affine_character_convolution",
                       [sp, seed] { return affine_spectral_identity(sp, seed, true); });
  }
  if (l == Level::GAPlus || l == Level::GA) {
    tasks.emplace_back("shift_equivariance", [&cfg] {
      Vec c = Vec::Zero(cfg.n());
      c(0) = 0.5;
      if (cfg.n() > 1) c(1) = -0.3;
      // the mixed bundle's bump is not band-limited on the mu grid, so its wrap-around exceeds 1e-8
      const bool swap = cfg.bundle == "mixed";
      const std::string bundle = swap ? "gaussian" : cfg.bundle;
      IdentityReport r = shift_equivariance(cfg.grid, make_bundle(bundle, cfg.level(), cfg.n(), cfg.seed), c);
      r.seed = cfg.seed;
      if (swap) r.note = "gaussian bundle; " + r.note;
      return r;
    });
  }
}

void add_invariance(const RunConfig& cfg, std::vector<std::pair<std::string, Task>>& tasks) {
  const Level l = cfg.level();
  const int n = cfg.n();
  const std::uint64_t seed = cfg.seed;
  if (l == Level::N) tasks.emplace_back("haar_invariance", [n, seed] { return haar_invariance(RuleFactor::N_unipotent, n, 64, seed); });
  if (l == Level::S) {
    tasks.emplace_back("modulus_jacobian", [n, seed] { return modulus_check(n, 100, seed); });
    tasks.emplace_back("haar_invariance", [n, seed] { return haar_invariance(RuleFactor::A_diag, n, 64, seed); });
    tasks.emplace_back("extension_invariance", [n, seed] { return extension_invariance(n, 100, seed); });
  }
  if (l == Level::SL) {
    tasks.emplace_back("modulus_jacobian", [n, seed] { return modulus_check(n, 100, seed); });
    if (n == 2) tasks.emplace_back("order_swap", [] { return order_swap_identity(129, 6.0, 32); });
    tasks.emplace_back("haar_invariance", [n, seed] {
      return haar_invariance(n == 2 ? RuleFactor::K_SO2 : RuleFactor::K_SO3, n, n == 2 ? 64 : 9, seed);
    });
    tasks.emplace_back("extension_invariance", [n, seed] { return extension_invariance(n, 100, seed); });
  }
  if (l == Level::GLPlus) {
    tasks.emplace_back("haar_invariance", [n, seed] { return haar_invariance(RuleFactor::ScaleRplus, n, 64, seed); });
  }
  if (l == Level::GL || l == Level::GA) {
    tasks.emplace_back("component_doubling", [&cfg] {
      // n = 3 nodes cost an SO(3) transport each
      const std::size_t max_nodes = std::size_t{1} << (cfg.n() == 3 ? 16 : 19);
      return component_doubling(cfg.grid, make_bundle(cfg.bundle, cfg.level(), cfg.n(), cfg.seed), max_nodes);
    });
  }
  if (l == Level::GAPlus) {
    tasks.emplace_back("haar_invariance", [n, seed] { return haar_invariance(RuleFactor::EuclideanRn, n, 64, seed); });
    tasks.emplace_back("extension_invariance", [n, seed] { return extension_invariance(n, 100, seed); });
  }
}

}  // namespace

std::vector<IdentityReport> run_suite(const RunConfig& cfg, Suite suite) {
  validate(cfg);
  std::vector<std::pair<std::string, Task>> tasks;
  tasks.emplace_back("zero_function", [&cfg] { return zero_function_sanity(cfg.grid); });
  if (suite == Suite::Plancherel || suite == Suite::All) add_plancherel(cfg, tasks);
  if (suite == Suite::Convolution || suite == Suite::All) add_convolution(cfg, tasks);
  if (suite == Suite::Invariance || suite == Suite::All) add_invariance(cfg, tasks);

  std::vector<IdentityReport> out;
  for (auto& [name, task] : tasks) {
    const auto t0 = std::chrono::steady_clock::now();
    IdentityReport r;
    try {
      r = task();
    } catch (const PreconditionError& e) {
      throw PreconditionError("run_suite(level " + to_string(cfg.level()) + ", n " + std::to_string(cfg.n()) +
                              ", " + name + "): " + e.what());
    }
    const double s = elapsed(t0);
    if (s > cfg.budget_seconds) {
      std::ostringstream os;
      os << "run_suite: " << name << " took " << s << " s, over the budget of " << cfg.budget_seconds << " s";
      throw BudgetExceeded(os.str());
    }
    if (cfg.fixed_timing) r.seconds = 0.0;
    out.push_back(std::move(r));
  }
  return out;
}

SweepResult sweep_convergence(const RunConfig& cfg, const std::vector<std::string>& axes, int factor, int steps) {
  if (steps < 1) throw ConfigurationError("sweep: steps must be >= 1");
  if (factor < 2) throw ConfigurationError("sweep: refinement factor must be >= 2");
  std::vector<std::string> issues;
  for (const auto& a : axes)
    if (a != "translation" && a != "scale" && a != "diagonal" && a != "nilpotent" && a != "compact")
      issues.push_back("sweep: unknown axis '" + a + "'");
  if (!issues.empty()) throw ConfigurationError(issues);

  SweepResult out;
  RunConfig step = cfg;
  for (int s = 0; s < steps; ++s) {
    validate(step);
    const IdentityReport r = plancherel_report(step);
    out.rows.push_back({r.grid, r.residual, r});
    for (const auto& a : axes) {
      if (a == "compact") {
        step.grid.compact.nodes *= factor;
        step.grid.compact.band_limit *= factor;
        if (step.grid.compact.beta_nodes > 0) step.grid.compact.beta_nodes *= factor;
        continue;
      }
      AxisGrid& g = a == "translation" ? step.grid.translation
                    : a == "scale"     ? step.grid.scale
                    : a == "diagonal"  ? step.grid.diagonal
                                       : step.grid.nilpotent;
      g.count *= factor;
      g.freq_count *= factor;
      g.freq_max *= factor;
    }
  }
  constexpr double floor = 1e-12;
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i - 1].residual > floor && out.rows[i].residual >= out.rows[i - 1].residual) out.flagged = true;
  return out;
}

std::vector<IdentityReport> sweep_reports(const SweepResult& sweep, const RunConfig& cfg) {
  std::vector<IdentityReport> out;
  for (std::size_t i = 0; i < sweep.rows.size(); ++i) {
    IdentityReport r = sweep.rows[i].report;
    r.identity = "plancherel_sweep_" + std::to_string(i);
    // the sweep judges the trend, not each grid
    finalize(r, -1.0);
    if (cfg.fixed_timing) r.seconds = 0.0;
    if (sweep.flagged) r.note = "non-decreasing sequence";
    out.push_back(r);
  }
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "line-json" || s == "jsonl") return Format::LineJson;
  if (s == "csv") return Format::Csv;
  throw ConfigurationError("format: expected line-json or csv (got '" + s + "')");
}

namespace {

std::string number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) throw ConfigurationError("report: bad number '" + s + "'");
  return v;
}

constexpr const char* kCsvHeader =
    "identity,level,n,left_re,left_im,right_re,right_im,residual,grid,seconds,seed,tolerance,passed,note";

}  // namespace

void emit_report(const std::vector<IdentityReport>& reports, Format format, std::ostream& out) {
  if (format == Format::Csv) {
    out << kCsvHeader << "\n";
    for (const auto& r : reports)
      out << csv_field(r.identity) << ',' << csv_field(r.level) << ',' << r.n << ',' << number(r.left.real()) << ','
          << number(r.left.imag()) << ',' << number(r.right.real()) << ',' << number(r.right.imag()) << ','
          << number(r.residual) << ',' << csv_field(r.grid) << ',' << number(r.seconds) << ',' << r.seed << ','
          << number(r.tolerance) << ',' << (r.passed ? "true" : "false") << ',' << csv_field(r.note) << "\n";
    return;
  }
  for (const auto& r : reports) {
    json j;
    j["identity"] = r.identity;
    j["level"] = r.level;
    j["n"] = r.n;
    j["left"] = {r.left.real(), r.left.imag()};
    j["right"] = {r.right.real(), r.right.imag()};
    j["residual"] = r.residual;
    j["grid"] = r.grid;
    j["seconds"] = r.seconds;
    j["seed"] = r.seed;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["note"] = r.note;
    out << j.dump() << "\n";
  }
}

std::string emit_report(const std::vector<IdentityReport>& reports, Format format, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + (format == Format::Csv ? "/reports.csv" : "/reports.jsonl");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_report: cannot write '" + path + "'");
  emit_report(reports, format, out);
  if (!out) throw std::runtime_error("emit_report: write failed for '" + path + "'");
  return path;
}

std::vector<IdentityReport> parse_reports(std::istream& in, Format format) {
  std::vector<IdentityReport> out;
  std::string line;
  if (format == Format::Csv) {
    if (!std::getline(in, line) || line != kCsvHeader) throw ConfigurationError("report: missing CSV header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::string more;
      while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(in, more)) line += "\n" + more;
      const auto f = csv_split(line);
      if (f.size() != 14) throw ConfigurationError("report: expected 14 CSV fields");
      IdentityReport r;
      r.identity = f[0];
      r.level = f[1];
      r.n = std::stoi(f[2]);
      r.left = {parse_double(f[3]), parse_double(f[4])};
      r.right = {parse_double(f[5]), parse_double(f[6])};
      r.residual = parse_double(f[7]);
      r.grid = f[8];
      r.seconds = parse_double(f[9]);
      r.seed = std::stoull(f[10]);
      r.tolerance = parse_double(f[11]);
      r.passed = f[12] == "true";
      r.note = f[13];
      out.push_back(r);
    }
    return out;
  }
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = json::parse(line);
    IdentityReport r;
    r.identity = j.at("identity");
    r.level = j.at("level");
    r.n = j.at("n");
    r.left = {j.at("left")[0].get<double>(), j.at("left")[1].get<double>()};
    r.right = {j.at("right")[0].get<double>(), j.at("right")[1].get<double>()};
    r.residual = j.at("residual");
    r.grid = j.at("grid");
    r.seconds = j.at("seconds");
    r.seed = j.at("seed");
    r.tolerance = j.at("tolerance");
    r.passed = j.at("passed");
    r.note = j.at("note");
    out.push_back(r);
  }
  return out;
}

bool all_passed(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports)
    if (r.asserted() && !r.passed) return false;
  return true;
}

}  // namespace gaf
