#include "gaf/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "gaf/charts.hpp"
#include "gaf/errors.hpp"
#include "gaf/kernels.hpp"

namespace gaf {

std::string to_string(RuleFactor f) {
  switch (f) {
    case RuleFactor::K_SO2: return "K_SO2";
    case RuleFactor::K_SO3: return "K_SO3";
    case RuleFactor::A_diag: return "A_diag";
    case RuleFactor::N_unipotent: return "N_unipotent";
    case RuleFactor::EuclideanRn: return "EuclideanRn";
    case RuleFactor::ScaleRplus: return "ScaleRplus";
  }
  return "?";
}

RuleParams scale_range(int count, double t_min, double t_max) {
  if (!(t_min > 0) || !(t_max > t_min)) throw ConfigurationError("ScaleRplus: need 0 < t_min < t_max");
  return RuleParams{count, std::log(t_min), std::log(t_max), 1, 0};
}

QuadratureRule::QuadratureRule(RuleFactor factor, std::vector<Axis> axes, std::string chart)
    : factor_(factor), axes_(std::move(axes)), chart_(std::move(chart)), size_(1) {
  for (const auto& a : axes_) {
    if (a.nodes.size() != a.weights.size()) throw ContractViolation("QuadratureRule: node/weight count mismatch");
    for (double w : a.weights)
      if (!(w > 0)) throw ContractViolation("QuadratureRule: weights must be positive");
    size_ *= a.size();
  }
}

void QuadratureRule::node(std::size_t i, std::span<double> out) const {
  if (out.size() != axes_.size()) throw ContractViolation("QuadratureRule::node: dimension mismatch");
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const std::size_t n = axes_[d].size();
    out[d] = axes_[d].nodes[i % n];
    i /= n;
  }
}

std::vector<double> QuadratureRule::node(std::size_t i) const {
  std::vector<double> out(axes_.size());
  node(i, out);
  return out;
}

double QuadratureRule::weight(std::size_t i) const {
  double w = 1.0;
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const std::size_t n = axes_[d].size();
    w *= axes_[d].weights[i % n];
    i /= n;
  }
  return w;
}

double QuadratureRule::total_mass() const {
  double m = 1.0;
  for (const auto& a : axes_) {
    double s = 0.0;
    for (double w : a.weights) s += w;
    m *= s;
  }
  return m;
}

QuadratureRule build_rule(RuleFactor factor, const RuleParams& p) {
  std::vector<std::string> issues;
  if (p.count < 2) issues.push_back(to_string(factor) + ": count must be >= 2");
  const bool compact = factor == RuleFactor::K_SO2 || factor == RuleFactor::K_SO3;
  if (!compact && (!std::isfinite(p.min) || !std::isfinite(p.max) || !(p.max > p.min)))
    issues.push_back(to_string(factor) + ": range must be finite with min < max");
  if (!compact && factor != RuleFactor::ScaleRplus && p.dim < 1) issues.push_back(to_string(factor) + ": dim must be >= 1");
  if (factor == RuleFactor::K_SO3 && p.beta_count < 0) issues.push_back("K_SO3: beta_count must be >= 0");
  if (!issues.empty()) throw ConfigurationError(issues);

  std::vector<Axis> axes;
  switch (factor) {
    case RuleFactor::K_SO2:
      axes.push_back(periodic_axis(AxisKind::Circle, "theta", p.count));
      return QuadratureRule(factor, std::move(axes), "theta -> [[cos, -sin], [sin, cos]], dtheta / 2pi");
    case RuleFactor::K_SO3:
      axes.push_back(periodic_axis(AxisKind::EulerAlpha, "alpha", p.count));
      axes.push_back(euler_beta_axis("beta", p.beta_count > 0 ? p.beta_count : p.count));
      axes.push_back(periodic_axis(AxisKind::EulerGamma, "gamma", p.count));
      return QuadratureRule(factor, std::move(axes), "Rz(alpha) Ry(beta) Rz(gamma), sin(beta) dalpha dbeta dgamma / 8pi^2");
    case RuleFactor::A_diag:
      for (int i = 0; i < p.dim; ++i)
        axes.push_back(uniform_axis(AxisKind::Diagonal, "u" + std::to_string(i + 1), p.count, p.min, p.max));
      return QuadratureRule(factor, std::move(axes), "a_i = exp(u_i), a_n = exp(-sum u), du");
    case RuleFactor::N_unipotent:
      for (int i = 0; i < p.dim; ++i)
        axes.push_back(uniform_axis(AxisKind::Nilpotent, "x" + std::to_string(i + 1), p.count, p.min, p.max));
      return QuadratureRule(factor, std::move(axes), "strict upper entries, row-major, dx");
    case RuleFactor::EuclideanRn:
      for (int i = 0; i < p.dim; ++i)
        axes.push_back(uniform_axis(AxisKind::Translation, "A" + std::to_string(i + 1), p.count, p.min, p.max));
      return QuadratureRule(factor, std::move(axes), "identity, dA");
    case RuleFactor::ScaleRplus:
      axes.push_back(uniform_axis(AxisKind::Scale, "ut", p.count, p.min, p.max));
      return QuadratureRule(factor, std::move(axes), "t = exp(u), dt / t = du");
  }
  throw ContractViolation("build_rule: unknown factor");
}

ProductRule::ProductRule(std::vector<QuadratureRule> factors) : factors_(std::move(factors)) {}

std::vector<Axis> ProductRule::axes() const {
  std::vector<Axis> out;
  for (const auto& f : factors_)
    for (const auto& a : f.axes()) out.push_back(a);
  return out;
}

std::size_t ProductRule::size() const {
  std::size_t n = factors_.empty() ? 0 : 1;
  for (const auto& f : factors_) n *= f.size();
  return n;
}

std::size_t ProductRule::dimension() const {
  std::size_t n = 0;
  for (const auto& f : factors_) n += f.dimension();
  return n;
}

void ProductRule::node(std::size_t i, std::span<double> out) const {
  if (out.size() != dimension()) throw ContractViolation("ProductRule::node: dimension mismatch");
  std::size_t offset = out.size();
  for (std::size_t k = factors_.size(); k-- > 0;) {
    const auto& f = factors_[k];
    offset -= f.dimension();
    f.node(i % f.size(), out.subspan(offset, f.dimension()));
    i /= f.size();
  }
}

double ProductRule::weight(std::size_t i) const {
  double w = 1.0;
  for (std::size_t k = factors_.size(); k-- > 0;) {
    w *= factors_[k].weight(i % factors_[k].size());
    i /= factors_[k].size();
  }
  return w;
}

cplx integrate(const CoordinateFunction& f, const ProductRule& rule) {
  const std::size_t dim = rule.dimension();
  return kernels::deterministic_sum<cplx>(rule.size(), [&](std::size_t i) {
    double buf[16];
    std::span<double> x(buf, dim);
    rule.node(i, x);
    return rule.weight(i) * f(x);
  });
}

cplx integrate_serial(const CoordinateFunction& f, const ProductRule& rule) {
  std::vector<double> x(rule.dimension());
  cplx s = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    rule.node(i, x);
    s += rule.weight(i) * f(x);
  }
  return s;
}

cplx integrate(const SampledFunction& f, const ProductRule& rule) {
  const auto axes = rule.axes();
  if (axes.size() != f.rank()) throw ContractViolation("integrate: dimension mismatch between function and rule");
  for (std::size_t d = 0; d < axes.size(); ++d) {
    if (axes[d].size() != f.axis(d).size()) throw ContractViolation("integrate: axis " + axes[d].label + " size mismatch");
    for (std::size_t i = 0; i < axes[d].size(); ++i)
      if (axes[d].nodes[i] != f.axis(d).nodes[i]) throw ContractViolation("integrate: axis " + axes[d].label + " nodes differ");
  }
  return kernels::deterministic_sum<cplx>(f.size(), [&](std::size_t i) { return rule.weight(i) * f[i]; });
}

double modulus_half_sum(const Vec& a) {
  double m = 1.0;
  for (int i = 0; i < a.size(); ++i) {
    if (!(a(i) > 0)) throw DomainError("modulus_half_sum: non-positive entry");
    for (int j = i + 1; j < a.size(); ++j) m *= a(i) / a(j);
  }
  return m;
}

double modulus_half_sum(const GroupElement& a) {
  if (a.tag() != GroupTag::PositiveDiagonal) throw ContractViolation("modulus_half_sum: expected a positive diagonal");
  return modulus_half_sum(Vec(a.matrix().diagonal()));
}

GroupElement rule_element(const QuadratureRule& rule, int n, std::span<const double> x) {
  switch (rule.factor()) {
    case RuleFactor::K_SO2:
    case RuleFactor::K_SO3:
      return GroupElement::trusted(GroupTag::Rotation, rotation_from_angles(n, x));
    case RuleFactor::A_diag: {
      Vec a = diagonal_from_log(n, x);
      return GroupElement::trusted(GroupTag::PositiveDiagonal, Mat(a.asDiagonal()));
    }
    case RuleFactor::N_unipotent:
      return GroupElement::trusted(GroupTag::Unipotent, unipotent_from_coords(n, x));
    case RuleFactor::EuclideanRn: {
      Vec b(n);
      for (int i = 0; i < n; ++i) b(i) = x[i];
      return GroupElement::trusted(GroupTag::Affine, Mat::Identity(n, n), b);
    }
    case RuleFactor::ScaleRplus: {
      Mat m = Mat::Identity(n, n) * std::exp(x[0]);
      return GroupElement::trusted(GroupTag::PositiveDiagonal, m);
    }
  }
  throw ContractViolation("rule_element: unknown factor");
}

double invariance_residual(const QuadratureRule& rule, int n, Action action, const GroupFunction& f,
                           std::span<const GroupElement> translations) {
  ProductRule pr({rule});
  auto base = integrate([&](std::span<const double> x) { return f(rule_element(rule, n, x)); }, pr);
  const double denom = std::max(std::abs(base), 1e-300);
  double worst = 0.0;
  for (const auto& h : translations) {
    auto moved = integrate(
        [&](std::span<const double> x) {
          GroupElement g = rule_element(rule, n, x);
          return f(action == Action::Left ? compose(h, g) : compose(g, h));
        },
        pr);
    worst = std::max(worst, std::abs(moved - base) / denom);
  }
  return worst;
}

}  // namespace gaf
