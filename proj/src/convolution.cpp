#include "gaf/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gaf/errors.hpp"
#include "gaf/kernels.hpp"
#include "gaf/spectra.hpp"

namespace gaf {

std::size_t HaarGrid::size() const {
  std::size_t n = 1;
  for (const auto& a : axes) n *= a.size();
  return n;
}

double HaarGrid::weight(std::size_t i) const {
  double w = 1.0;
  for (std::size_t d = axes.size(); d-- > 0;) {
    w *= axes[d].weights[i % axes[d].size()];
    i /= axes[d].size();
  }
  return w;
}

void HaarGrid::node(std::size_t i, std::span<double> out) const {
  for (std::size_t d = axes.size(); d-- > 0;) {
    out[d] = axes[d].nodes[i % axes[d].size()];
    i /= axes[d].size();
  }
}

HaarGrid haar_grid(const Chart& chart, std::vector<Axis> axes) {
  if (axes.size() != chart.dimension()) throw ContractViolation("haar_grid: axis count does not match the chart");
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (axes[i].kind != chart.axis_kinds()[i])
      throw ContractViolation("haar_grid: axis " + axes[i].label + " has the wrong kind");
  const bool linear = chart.kind() == ChartKind::SpecialLinear || chart.kind() == ChartKind::GeneralLinearPlus ||
                      chart.kind() == ChartKind::AffinePlus;
  if (linear && chart.ordering() != Ordering::KNA)
    throw ContractViolation("haar_grid: linear charts integrate in KNA coordinates");
  return HaarGrid{chart, std::move(axes)};
}

namespace {

cplx convolve_point(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule, const GroupElement& x,
                    bool parallel) {
  const std::size_t dim = rule.chart.dimension();
  auto term = [&](std::size_t i) {
    double buf[16];
    std::span<double> y(buf, dim);
    rule.node(i, y);
    const GroupElement Y = rule.chart.element(y);
    const cplx gy = g(Y);
    if (gy == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
    return rule.weight(i) * f(compose(invert(Y), x)) * gy;
  };
  return parallel ? kernels::deterministic_sum<cplx>(rule.size(), term) : kernels::serial_sum<cplx>(rule.size(), term);
}

}  // namespace

std::vector<cplx> convolve(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule,
                           std::span<const GroupElement> points) {
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) out[p] = convolve_point(f, g, rule, points[p], true);
  return out;
}

std::vector<cplx> convolve_serial(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule,
                                  std::span<const GroupElement> points) {
  std::vector<cplx> out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p) out[p] = convolve_point(f, g, rule, points[p], false);
  return out;
}

SampledFunction convolve(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule,
                         const std::vector<Axis>& out_axes) {
  if (out_axes.size() != rule.chart.dimension()) throw ContractViolation("convolve: output axes do not match the chart");
  SampledFunction out(out_axes);
  const std::size_t dim = out_axes.size();
  kernels::parallel_fill(out.values(), [&](std::size_t flat) {
    double buf[16];
    std::span<double> x(buf, dim);
    std::size_t i = flat;
    for (std::size_t d = dim; d-- > 0;) {
      x[d] = out_axes[d].nodes[i % out_axes[d].size()];
      i /= out_axes[d].size();
    }
    return convolve_point(f, g, rule, rule.chart.element(x), false);
  });
  return out;
}

cplx interpolate_at(const SampledFunction& f, std::span<const double> coords) {
  const std::size_t r = f.rank();
  if (coords.size() != r) throw ContractViolation("interpolate: coordinate count mismatch");
  std::size_t lo[16];
  std::size_t hi[16];
  double frac[16];
  for (std::size_t d = 0; d < r; ++d) {
    const Axis& a = f.axis(d);
    const auto& x = a.nodes;
    const std::size_t n = x.size();
    double c = coords[d];
    if (a.periodic) {
      const double h = 2.0 * std::numbers::pi / n;
      double s = std::fmod(c - x[0], 2.0 * std::numbers::pi);
      if (s < 0) s += 2.0 * std::numbers::pi;
      double pos = s / h;
      std::size_t k = static_cast<std::size_t>(std::floor(pos));
      if (k >= n) k = n - 1;
      lo[d] = k;
      hi[d] = (k + 1) % n;
      frac[d] = pos - static_cast<double>(k);
      continue;
    }
    if (a.kind == AxisKind::EulerBeta) c = std::clamp(c, x.front(), x.back());
    if (c < x.front() || c > x.back()) return 0.0;
    std::size_t k = static_cast<std::size_t>(std::upper_bound(x.begin(), x.end(), c) - x.begin());
    k = std::clamp<std::size_t>(k, 1, n - 1);
    lo[d] = k - 1;
    hi[d] = k;
    frac[d] = (c - x[k - 1]) / (x[k] - x[k - 1]);
  }
  std::size_t strides[16];
  std::size_t s = 1;
  for (std::size_t d = r; d-- > 0;) {
    strides[d] = s;
    s *= f.axis(d).size();
  }
  cplx acc = 0.0;
  for (std::size_t corner = 0; corner < (std::size_t{1} << r); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (std::size_t d = 0; d < r; ++d) {
      const bool up = (corner >> d) & 1U;
      w *= up ? frac[d] : 1.0 - frac[d];
      flat += (up ? hi[d] : lo[d]) * strides[d];
    }
    if (w != 0.0) acc += w * f[flat];
  }
  return acc;
}

GroupFunction interpolate(const SampledFunction& f, const Chart& chart) {
  if (f.rank() != chart.dimension()) throw ContractViolation("interpolate: function does not carry the chart's axes");
  for (std::size_t d = 0; d < f.rank(); ++d) {
    if (f.axis(d).kind != chart.axis_kinds()[d]) throw ContractViolation("interpolate: axis kind mismatch at " + f.axis(d).label);
    if (!is_compact(f.axis(d).kind)) require_boundary_decay(f, d, "interpolate");
  }
  return [f, chart](const GroupElement& g) {
    double buf[16];
    std::span<double> x(buf, chart.dimension());
    chart.coords(g, x);
    return interpolate_at(f, x);
  };
}

cplx upsilon_convolve(const GroupFunction& f, const GroupFunction& psi, const HaarGrid& rule, const GroupElement& g,
                      const GroupElement& k) {
  const std::size_t dim = rule.chart.dimension();
  return kernels::deterministic_sum<cplx>(rule.size(), [&](std::size_t i) {
    double buf[16];
    std::span<double> y(buf, dim);
    rule.node(i, y);
    const GroupElement h = rule.chart.element(y);
    const Mat m = g.matrix() * invert(h).matrix() * k.matrix();
    return rule.weight(i) * f(GroupElement::trusted(g.tag(), m)) * psi(h);
  });
}

}  // namespace gaf
