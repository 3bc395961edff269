#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaf/identities.hpp"
#include "gaf/level.hpp"
#include "gaf/report.hpp"

namespace gaf {

struct RunConfig {
  std::string profile = "default";
  LevelGrid grid;  // level and n live here
  std::string bundle = "mixed";
  std::uint64_t seed = 1;
  std::string output;  // directory; empty means stdout
  // one grid per convolution identity pair
  ConvolutionGrid solvable_convolution{16, 5.0, 1.2, 8, 10};
  ConvolutionGrid affine_convolution{10, 3.5, 1.0, 10, 10};
  ConvolutionGrid affine_spectral{5, 3.5, 1.0, 5, 10};
  double budget_seconds = 120.0;
  // Write seconds = 0 so that repeated runs are byte-identical.
  bool fixed_timing = false;

  Level level() const { return grid.level; }
  int n() const { return grid.n; }
};

// default: n = 2, GA+, 64 points on [-8, 8]; deep: counts, frequency range and band doubled;
// so3: n = 3, SO(3) band 4.
RunConfig profile_config(const std::string& name);
std::vector<std::string> profile_names();

// Every violated invariant, each naming its field or axis. Empty means valid.
std::vector<std::string> config_issues(const RunConfig& cfg);
// Throws ConfigurationError listing every issue.
void validate(const RunConfig& cfg);

// JSON config file; keys not present keep the values of the chosen profile.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);

enum class Suite { Plancherel, Convolution, Invariance, All };

Suite parse_suite(const std::string& s);
std::string to_string(Suite s);

// Validates, then runs the reports of the suite in declaration order.
std::vector<IdentityReport> run_suite(const RunConfig& cfg, Suite suite);

struct SweepRow {
  std::string grid;
  double residual;
  IdentityReport report;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  bool flagged = false;  // some refinement step failed to decrease the residual (above 1e-12)
};

// Refines the named axes (translation, scale, diagonal, nilpotent, compact) by `factor`
// per step and records the Plancherel residual of the configured bundle.
SweepResult sweep_convergence(const RunConfig& cfg, const std::vector<std::string>& axes, int factor, int steps);
std::vector<IdentityReport> sweep_reports(const SweepResult& sweep, const RunConfig& cfg);

enum class Format { LineJson, Csv };

Format parse_format(const std::string& s);
void emit_report(const std::vector<IdentityReport>& reports, Format format, std::ostream& out);
// Writes <dir>/reports.jsonl or <dir>/reports.csv and returns the path.
std::string emit_report(const std::vector<IdentityReport>& reports, Format format, const std::string& dir);
std::vector<IdentityReport> parse_reports(std::istream& in, Format format);

// True when every asserted report passed.
bool all_passed(const std::vector<IdentityReport>& reports);

}  // namespace gaf
