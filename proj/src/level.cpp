#include "gaf/level.hpp"

#include <cmath>
#include <sstream>

#include "gaf/errors.hpp"
#include "gaf/report.hpp"

namespace gaf {

double relative_residual(cplx left, cplx right) {
  return std::abs(left - right) / std::max(std::abs(left), 1e-300);
}

void finalize(IdentityReport& r, double tolerance) {
  r.residual = relative_residual(r.left, r.right);
  r.tolerance = tolerance;
  r.passed = tolerance < 0 || r.residual <= tolerance;
}

std::string to_string(Level level) {
  switch (level) {
    case Level::N: return "N";
    case Level::S: return "S";
    case Level::SL: return "SL";
    case Level::GLPlus: return "GL+";
    case Level::GL: return "GL";
    case Level::GAPlus: return "GA+";
    case Level::GA: return "GA";
  }
  return "?";
}

Level parse_level(const std::string& s) {
  for (Level l : {Level::N, Level::S, Level::SL, Level::GLPlus, Level::GL, Level::GAPlus, Level::GA})
    if (to_string(l) == s) return l;
  if (s == "GLPlus" || s == "GL_plus") return Level::GLPlus;
  if (s == "GAPlus" || s == "GA_plus") return Level::GAPlus;
  throw ConfigurationError("unknown level '" + s + "' (expected N, S, SL, GL+, GL, GA+ or GA)");
}

bool has_minus_component(Level level) { return level == Level::GL || level == Level::GA; }

Chart LevelGrid::chart() const {
  switch (level) {
    case Level::N: return Chart(ChartKind::Nilpotent, n);
    case Level::S: return Chart(ChartKind::Solvable, n);
    case Level::SL: return Chart(ChartKind::SpecialLinear, n, Ordering::NAK);
    case Level::GLPlus:
    case Level::GL: return Chart(ChartKind::GeneralLinearPlus, n, Ordering::NAK);
    case Level::GAPlus:
    case Level::GA: return Chart(ChartKind::AffinePlus, n, Ordering::NAK);
  }
  throw ContractViolation("LevelGrid::chart: unknown level");
}

const AxisGrid& LevelGrid::grid_for(AxisKind kind) const {
  return const_cast<LevelGrid*>(this)->grid_for(kind);
}

AxisGrid& LevelGrid::grid_for(AxisKind kind) {
  switch (kind) {
    case AxisKind::Translation: return translation;
    case AxisKind::Scale: return scale;
    case AxisKind::Diagonal: return diagonal;
    case AxisKind::Nilpotent: return nilpotent;
    default: throw ContractViolation("grid_for: " + to_string(kind) + " has no non-compact grid");
  }
}

Axis LevelGrid::spatial_axis(AxisKind kind, const std::string& label) const {
  switch (kind) {
    case AxisKind::Circle:
    case AxisKind::EulerAlpha:
    case AxisKind::EulerGamma: return periodic_axis(kind, label, compact.nodes);
    case AxisKind::EulerBeta:
      return euler_beta_axis(label, compact.beta_nodes > 0 ? compact.beta_nodes : compact.band_limit + 1);
    default: {
      const AxisGrid& g = grid_for(kind);
      return uniform_axis(kind, label, g.count, g.min, g.max);
    }
  }
}

std::string spectral_label(const std::string& spatial_label, AxisKind kind) {
  switch (kind) {
    case AxisKind::Translation: return "mu" + spatial_label.substr(1);
    case AxisKind::Scale: return "eta";
    case AxisKind::Diagonal: return "lambda" + spatial_label.substr(1);
    case AxisKind::Nilpotent: return "xi" + spatial_label.substr(1);
    case AxisKind::Circle: return "m";
    default: return "lpq";
  }
}

Axis LevelGrid::spectral_axis(AxisKind kind, const std::string& label) const {
  if (kind == AxisKind::Circle) return dual_circle_axis("m", compact.band_limit);
  if (kind == AxisKind::EulerAlpha) return dual_rotation3_axis("lpq", compact.band_limit);
  const AxisGrid& g = grid_for(kind);
  return frequency_axis(dual_kind(kind), spectral_label(label, kind), g.freq_count, g.freq_max);
}

std::vector<Axis> LevelGrid::spatial_axes() const {
  Chart c = chart();
  std::vector<Axis> out;
  for (std::size_t i = 0; i < c.dimension(); ++i) out.push_back(spatial_axis(c.axis_kinds()[i], c.axis_labels()[i]));
  return out;
}

std::vector<Axis> LevelGrid::spectral_axes() const {
  Chart c = chart();
  std::vector<Axis> out;
  for (std::size_t i = 0; i < c.dimension(); ++i) {
    AxisKind k = c.axis_kinds()[i];
    if (k == AxisKind::EulerBeta || k == AxisKind::EulerGamma) continue;
    out.push_back(spectral_axis(k, c.axis_labels()[i]));
  }
  return out;
}

std::string LevelGrid::descriptor() const {
  std::ostringstream os;
  os << to_string(level) << "(n=" << n << ")";
  Chart c = chart();
  bool seen[4] = {false, false, false, false};
  for (AxisKind k : c.axis_kinds()) {
    int slot = -1;
    switch (k) {
      case AxisKind::Translation: slot = 0; break;
      case AxisKind::Scale: slot = 1; break;
      case AxisKind::Diagonal: slot = 2; break;
      case AxisKind::Nilpotent: slot = 3; break;
      default: break;
    }
    if (slot < 0 || seen[slot]) continue;
    seen[slot] = true;
    const AxisGrid& g = grid_for(k);
    os << ";" << to_string(k) << ":" << g.count << "[" << g.min << "," << g.max << "]/f" << g.freq_count << "["
       << g.freq_max << "]";
  }
  if (c.axis_kinds().back() == AxisKind::Circle || c.axis_kinds().back() == AxisKind::EulerGamma) {
    os << ";compact:" << compact.nodes;
    if (n == 3) os << "x" << (compact.beta_nodes > 0 ? compact.beta_nodes : compact.band_limit + 1);
    os << "/B" << compact.band_limit;
  }
  return os.str();
}

}  // namespace gaf
