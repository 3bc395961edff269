#include "gaf/grid.hpp"

#include <cmath>
#include <numbers>

#include "gaf/errors.hpp"

namespace gaf {

std::string to_string(AxisKind kind) {
  switch (kind) {
    case AxisKind::Translation: return "translation";
    case AxisKind::Scale: return "scale";
    case AxisKind::Diagonal: return "diagonal";
    case AxisKind::Nilpotent: return "nilpotent";
    case AxisKind::Circle: return "circle";
    case AxisKind::EulerAlpha: return "euler_alpha";
    case AxisKind::EulerBeta: return "euler_beta";
    case AxisKind::EulerGamma: return "euler_gamma";
    case AxisKind::FreqTranslation: return "mu";
    case AxisKind::FreqScale: return "eta";
    case AxisKind::FreqDiagonal: return "lambda";
    case AxisKind::FreqNilpotent: return "xi";
    case AxisKind::DualCircle: return "m";
    case AxisKind::DualRotation3: return "l_p_q";
  }
  return "?";
}

bool is_spectral(AxisKind kind) { return static_cast<int>(kind) >= static_cast<int>(AxisKind::FreqTranslation); }

bool is_compact(AxisKind kind) {
  switch (kind) {
    case AxisKind::Circle:
    case AxisKind::EulerAlpha:
    case AxisKind::EulerBeta:
    case AxisKind::EulerGamma:
    case AxisKind::DualCircle:
    case AxisKind::DualRotation3: return true;
    default: return false;
  }
}

AxisKind dual_kind(AxisKind spatial) {
  switch (spatial) {
    case AxisKind::Translation: return AxisKind::FreqTranslation;
    case AxisKind::Scale: return AxisKind::FreqScale;
    case AxisKind::Diagonal: return AxisKind::FreqDiagonal;
    case AxisKind::Nilpotent: return AxisKind::FreqNilpotent;
    default: throw ContractViolation("dual_kind: " + to_string(spatial) + " has no frequency axis");
  }
}

Axis uniform_axis(AxisKind kind, std::string label, int count, double min, double max) {
  if (count < 2 || !(max > min) || !std::isfinite(min) || !std::isfinite(max))
    throw ConfigurationError("axis " + label + ": need count >= 2 and a finite range min < max");
  Axis ax{kind, std::move(label), {}, {}, false, -1};
  const double h = (max - min) / (count - 1);
  ax.nodes.resize(count);
  ax.weights.assign(count, h);
  for (int i = 0; i < count; ++i) ax.nodes[i] = min + i * h;
  ax.nodes.back() = max;
  ax.weights.front() = ax.weights.back() = 0.5 * h;
  return ax;
}

Axis periodic_axis(AxisKind kind, std::string label, int count) {
  if (count < 1) throw ConfigurationError("axis " + label + ": need count >= 1");
  Axis ax{kind, std::move(label), {}, {}, true, -1};
  ax.nodes.resize(count);
  ax.weights.assign(count, 1.0 / count);
  for (int i = 0; i < count; ++i) ax.nodes[i] = 2.0 * std::numbers::pi * i / count;
  return ax;
}

void gauss_legendre(int count, std::vector<double>& x, std::vector<double>& w) {
  x.assign(count, 0.0);
  w.assign(count, 0.0);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= count; ++k) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = count * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= count; ++k) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = count * (z * p0 - p1) / (z * z - 1.0);
    x[i] = -z;
    x[count - 1 - i] = z;
    w[i] = w[count - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

Axis euler_beta_axis(std::string label, int count) {
  if (count < 1) throw ConfigurationError("axis " + label + ": need count >= 1");
  std::vector<double> x, w;
  gauss_legendre(count, x, w);
  Axis ax{AxisKind::EulerBeta, std::move(label), {}, {}, false, -1};
  // ascending beta
  for (int i = count - 1; i >= 0; --i) {
    ax.nodes.push_back(std::acos(x[i]));
    ax.weights.push_back(0.5 * w[i]);
  }
  return ax;
}

Axis frequency_axis(AxisKind kind, std::string label, int count, double max) {
  Axis ax = uniform_axis(kind, std::move(label), count, -max, max);
  for (double& w : ax.weights) w /= 2.0 * std::numbers::pi;
  return ax;
}

Axis dual_circle_axis(std::string label, int band) {
  if (band < 0) throw ConfigurationError("axis " + label + ": band-limit must be >= 0");
  Axis ax{AxisKind::DualCircle, std::move(label), {}, {}, false, band};
  for (int m = -band; m <= band; ++m) {
    ax.nodes.push_back(m);
    ax.weights.push_back(1.0);
  }
  return ax;
}

std::size_t so3_size(int band) {
  std::size_t L = static_cast<std::size_t>(band) + 1;
  return L * (4 * L * L - 1) / 3;
}

std::size_t so3_flat(int l, int p, int q) {
  return so3_size(l - 1) + static_cast<std::size_t>(p + l) * (2 * l + 1) + static_cast<std::size_t>(q + l);
}

SO3Index so3_index(std::size_t flat) {
  int l = 0;
  while (so3_size(l) <= flat) ++l;
  std::size_t r = flat - (l == 0 ? 0 : so3_size(l - 1));
  int d = 2 * l + 1;
  return SO3Index{l, static_cast<int>(r / d) - l, static_cast<int>(r % d) - l};
}

Axis dual_rotation3_axis(std::string label, int band) {
  if (band < 0) throw ConfigurationError("axis " + label + ": band-limit must be >= 0");
  Axis ax{AxisKind::DualRotation3, std::move(label), {}, {}, false, band};
  for (int l = 0; l <= band; ++l)
    for (int i = 0; i < (2 * l + 1) * (2 * l + 1); ++i) {
      ax.nodes.push_back(l);
      ax.weights.push_back(2 * l + 1);
    }
  return ax;
}

GridFunction::GridFunction(std::vector<Axis> axes) : axes_(std::move(axes)) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    n *= axes_[i].size();
    for (std::size_t j = 0; j < i; ++j)
      if (axes_[j].label == axes_[i].label) throw ContractViolation("GridFunction: duplicate axis label " + axes_[i].label);
  }
  values_.assign(n, cplx(0.0, 0.0));
}

GridFunction::GridFunction(std::vector<Axis> axes, std::vector<cplx> values) : GridFunction(std::move(axes)) {
  if (values.size() != values_.size()) throw ContractViolation("GridFunction: value count does not match grid");
  values_ = std::move(values);
}

std::vector<std::size_t> GridFunction::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.size());
  return s;
}

std::optional<std::size_t> GridFunction::find_axis(const std::string& label) const {
  for (std::size_t i = 0; i < axes_.size(); ++i)
    if (axes_[i].label == label) return i;
  return std::nullopt;
}

std::size_t GridFunction::axis_index(const std::string& label) const {
  auto i = find_axis(label);
  if (!i) throw ContractViolation("GridFunction: no axis labelled " + label);
  return *i;
}

cplx GridFunction::at(std::span<const std::size_t> index) const {
  if (index.size() != axes_.size()) throw ContractViolation("GridFunction::at: rank mismatch");
  std::size_t flat = 0;
  for (std::size_t d = 0; d < axes_.size(); ++d) flat = flat * axes_[d].size() + index[d];
  return values_.at(flat);
}

double GridFunction::weight(std::size_t flat) const {
  double w = 1.0;
  for (std::size_t d = axes_.size(); d-- > 0;) {
    std::size_t n = axes_[d].size();
    w *= axes_[d].weights[flat % n];
    flat /= n;
  }
  return w;
}

std::vector<double> GridFunction::weights() const {
  std::vector<double> w(1, 1.0);
  for (const auto& a : axes_) {
    std::vector<double> next;
    next.reserve(w.size() * a.size());
    for (double x : w)
      for (double y : a.weights) next.push_back(x * y);
    w.swap(next);
  }
  return w;
}

std::vector<Axis> SeparableFunction::axes() const {
  std::vector<Axis> out;
  for (const auto& f : factors)
    for (const auto& a : f.axes()) out.push_back(a);
  return out;
}

GridFunction SeparableFunction::dense() const {
  std::vector<cplx> v(1, cplx(1.0, 0.0));
  for (const auto& f : factors) {
    std::vector<cplx> next;
    next.reserve(v.size() * f.size());
    for (const cplx& x : v)
      for (const cplx& y : f.values()) next.push_back(x * y);
    v.swap(next);
  }
  return GridFunction(axes(), std::move(v));
}

}  // namespace gaf
