#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "gaf/errors.hpp"
#include "gaf/harness.hpp"
#include "gaf/kernels.hpp"

using namespace gaf;

namespace {

bool mentions(const std::vector<std::string>& issues, const std::string& needle) {
  return std::any_of(issues.begin(), issues.end(), [&](const std::string& s) { return s.find(needle) != std::string::npos; });
}

std::vector<std::string> issues_of(const std::string& json_text) {
  try {
    parse_config(json_text);
  } catch (const ConfigurationError& e) {
    return e.issues();
  }
  return {};
}

RunConfig quick(Level level, const std::string& bundle) {
  RunConfig cfg = profile_config("default");
  cfg.grid.level = level;
  cfg.bundle = bundle;
  cfg.fixed_timing = true;
  return cfg;
}

std::string emitted(const std::vector<IdentityReport>& reports, Format f) {
  std::ostringstream os;
  emit_report(reports, f, os);
  return os.str();
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("a grid of 4 points is rejected and the message names the axis") {
  const auto issues = issues_of(R"({"level": "GA+", "axes": {"scale": {"count": 4}}})");
  REQUIRE(!issues.empty());
  CHECK(issues[0].find("axes.scale.count: grid size 4") != std::string::npos);
  CHECK(issues[0].find("non-compact axis scale") != std::string::npos);
  // 4 nodes over [-8, 8] also put freq_max above Nyquist
  CHECK(mentions(issues, "axes.scale.freq_max"));
}

TEST_CASE("a range too narrow for the bundle cites the decay threshold") {
  const auto issues = issues_of(R"({"axes": {"translation": {"min": -2.0, "max": 2.0}}})");
  REQUIRE(!issues.empty());
  CHECK(mentions(issues, "decay threshold"));
  CHECK(mentions(issues, "A1"));
}

TEST_CASE("every problem is listed, not only the first") {
  const auto issues = issues_of(R"({"n": 5, "bundle": "nope", "colour": 1, "seed": "x",
                                    "convolution": {"affine": {"points": 40}}})");
  CHECK(mentions(issues, "colour: unknown key"));
  CHECK(mentions(issues, "seed: wrong type"));
  const auto later = issues_of(R"({"n": 5, "bundle": "nope", "convolution": {"affine": {"points": 40}}})");
  CHECK(mentions(later, "n: must be 2 or 3"));
  CHECK(mentions(later, "unknown bundle 'nope'"));
  CHECK(mentions(later, "convolution.affine.points"));
  CHECK(later.size() == 3);
}

TEST_CASE("unknown nested keys, bad levels and malformed JSON") {
  CHECK(mentions(issues_of(R"({"axes": {"scale": {"cnt": 8}}})"), "axes.scale.cnt: unknown key"));
  CHECK(mentions(issues_of(R"({"level": "GX"})"), "unknown level 'GX'"));
  CHECK(mentions(issues_of("{\"n\": 2,"), "parse error"));
  CHECK(mentions(issues_of(R"({"axes": {"nilpotent": {"freq_max": 100.0}}})"), "Nyquist"));
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigurationError);
}

TEST_CASE("an empty config keeps the profile defaults") {
  const RunConfig cfg = parse_config("{}");
  const RunConfig def = profile_config("default");
  CHECK(cfg.level() == Level::GAPlus);
  CHECK(cfg.n() == 2);
  CHECK(cfg.grid.translation.count == def.grid.translation.count);
  CHECK(cfg.bundle == "mixed");
  CHECK(cfg.affine_convolution.count == def.affine_convolution.count);
  CHECK(config_issues(cfg).empty());
  const RunConfig so3 = parse_config(R"({"profile": "so3", "level": "SL"})");
  CHECK(so3.n() == 3);
  CHECK(so3.level() == Level::SL);
  CHECK_THROWS_AS(profile_config("huge"), ConfigurationError);
}

TEST_CASE("the N level with the gaussian bundle closes Plancherel") {
  const auto reports = run_suite(quick(Level::N, "gaussian"), Suite::Plancherel);
  REQUIRE(reports.size() == 2);
  CHECK(reports[0].identity == "zero_function");
  CHECK(reports[1].identity == "plancherel");
  CHECK(reports[1].residual < 1e-6);
  CHECK(reports[1].passed);
}

TEST_CASE("GA+ runs every suite and the zero bundle gives exact zeros") {
  const auto all = run_suite(quick(Level::GAPlus, "gaussian"), Suite::All);
  CHECK(all.size() >= 4);
  for (const auto& r : run_suite(quick(Level::GAPlus, "mixed"), Suite::Invariance)) {
    INFO(r.identity, " ", r.residual);
    CHECK(r.passed);
  }
  for (const auto& r : run_suite(quick(Level::GAPlus, "zero"), Suite::Plancherel)) {
    CHECK(r.left == cplx(0.0));
    CHECK(r.right == cplx(0.0));
    CHECK(r.residual == 0.0);
  }
}

TEST_CASE("reports round-trip through line-JSON and CSV") {
  auto reports = run_suite(quick(Level::SL, "random"), Suite::Plancherel);
  IdentityReport odd;
  odd.identity = "quoted";
  odd.note = "a, \"b\"\nc";
  odd.left = {1.0 / 3.0, -2e-300};
  odd.tolerance = 1e-6;
  reports.push_back(odd);
  for (Format f : {Format::LineJson, Format::Csv}) {
    std::istringstream in(emitted(reports, f));
    const auto back = parse_reports(in, f);
    REQUIRE(back.size() == reports.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      CHECK(back[i].identity == reports[i].identity);
      CHECK(back[i].left == reports[i].left);
      CHECK(back[i].right == reports[i].right);
      CHECK(back[i].residual == reports[i].residual);
      CHECK(back[i].note == reports[i].note);
      CHECK(back[i].passed == reports[i].passed);
      CHECK(back[i].tolerance == reports[i].tolerance);
    }
  }
  CHECK(emitted({}, Format::Csv).find("identity,level,n,") == 0);
  CHECK(emitted({}, Format::LineJson).empty());
  std::istringstream headerless("plancherel,SL\n");
  CHECK_THROWS_AS(parse_reports(headerless, Format::Csv), ConfigurationError);
}

TEST_CASE("fixed timing gives byte-identical output across runs and thread counts") {
  const RunConfig cfg = quick(Level::GLPlus, "random");
  const int threads = kernels::thread_count();
  const std::string a = emitted(run_suite(cfg, Suite::Plancherel), Format::LineJson);
  kernels::set_thread_count(3);
  const std::string b = emitted(run_suite(cfg, Suite::Plancherel), Format::LineJson);
  kernels::set_thread_count(threads);
  const std::string c = emitted(run_suite(cfg, Suite::Plancherel), Format::LineJson);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.find("\"seconds\":0.0") != std::string::npos);
}

TEST_CASE("sweeps: refinement decreases the residual, flat compact grids are flagged") {
  RunConfig cfg = quick(Level::S, "mixed");
  for (AxisGrid* a : {&cfg.grid.diagonal, &cfg.grid.nilpotent}) {
    a->count = 16;
    a->freq_count = 16;
    a->freq_max = 2.0;
  }
  const SweepResult s = sweep_convergence(cfg, {"diagonal", "nilpotent"}, 2, 3);
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[2].residual < s.rows[0].residual);
  CHECK_FALSE(s.flagged);
  CHECK(sweep_reports(s, cfg)[1].identity == "plancherel_sweep_1");

  // the compact factor has band 2 and is exact already, so refining only it cannot help
  RunConfig flat = quick(Level::SL, "mixed");
  const SweepResult f = sweep_convergence(flat, {"compact"}, 2, 2);
  CHECK(f.flagged);
  CHECK(sweep_reports(f, flat)[0].note == "non-decreasing sequence");

  const SweepResult one = sweep_convergence(cfg, {"diagonal"}, 2, 1);
  CHECK_FALSE(one.flagged);
  CHECK_THROWS_AS(sweep_convergence(cfg, {"sideways"}, 2, 2), ConfigurationError);
  CHECK_THROWS_AS(sweep_convergence(cfg, {"diagonal"}, 1, 2), ConfigurationError);
}

TEST_CASE("a run over budget stops with BudgetExceeded") {
  RunConfig cfg = quick(Level::SL, "mixed");
  cfg.budget_seconds = 1e-9;
  CHECK_THROWS_AS(run_suite(cfg, Suite::Invariance), BudgetExceeded);
}

TEST_CASE("suite and format names") {
  CHECK(parse_suite("convolution") == Suite::Convolution);
  CHECK(to_string(Suite::All) == "all");
  CHECK_THROWS_AS(parse_suite("every"), ConfigurationError);
  CHECK(parse_format("csv") == Format::Csv);
  CHECK(parse_format("line-json") == Format::LineJson);
  CHECK_THROWS_AS(parse_format("xml"), ConfigurationError);
}

}  // TEST_SUITE
