#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "gaf/grid.hpp"
#include "gaf/group.hpp"

namespace gaf {

enum class RuleFactor { K_SO2, K_SO3, A_diag, N_unipotent, EuclideanRn, ScaleRplus };

std::string to_string(RuleFactor f);

// count: nodes per axis (alpha and gamma for SO(3)); beta_count: Gauss-Legendre nodes
// in cos(beta), defaults to count. min/max: coordinate range (log-coordinates for
// A_diag and ScaleRplus). dim: number of axes for A_diag, N_unipotent, EuclideanRn.
struct RuleParams {
  int count = 0;
  double min = 0.0;
  double max = 0.0;
  int dim = 1;
  int beta_count = 0;
};

// Params for ScaleRplus from a range in t itself.
RuleParams scale_range(int count, double t_min, double t_max);

class QuadratureRule {
 public:
  QuadratureRule(RuleFactor factor, std::vector<Axis> axes, std::string chart);

  RuleFactor factor() const { return factor_; }
  const std::vector<Axis>& axes() const { return axes_; }
  const std::string& chart() const { return chart_; }
  std::size_t size() const { return size_; }
  std::size_t dimension() const { return axes_.size(); }
  void node(std::size_t i, std::span<double> out) const;
  std::vector<double> node(std::size_t i) const;
  double weight(std::size_t i) const;
  double total_mass() const;

 private:
  RuleFactor factor_;
  std::vector<Axis> axes_;
  std::string chart_;
  std::size_t size_;
};

QuadratureRule build_rule(RuleFactor factor, const RuleParams& params);

class ProductRule {
 public:
  ProductRule() = default;
  explicit ProductRule(std::vector<QuadratureRule> factors);

  const std::vector<QuadratureRule>& factors() const { return factors_; }
  std::vector<Axis> axes() const;
  std::size_t size() const;
  std::size_t dimension() const;
  void node(std::size_t i, std::span<double> out) const;
  double weight(std::size_t i) const;

 private:
  std::vector<QuadratureRule> factors_;
};

using CoordinateFunction = std::function<cplx(std::span<const double>)>;

cplx integrate(const CoordinateFunction& f, const ProductRule& rule);
cplx integrate_serial(const CoordinateFunction& f, const ProductRule& rule);
// f must live on exactly the rule's axes (same sizes and nodes).
cplx integrate(const SampledFunction& f, const ProductRule& rule);

// prod_{i<j} a_i / a_j
double modulus_half_sum(const GroupElement& a);
double modulus_half_sum(const Vec& a);

enum class Action { Left, Right };

// Group element at a rule node; n is the matrix size of the group.
GroupElement rule_element(const QuadratureRule& rule, int n, std::span<const double> node);

// max over translations h of |int f(h x) - int f(x)| / |int f| (or f(x h) for Right).
double invariance_residual(const QuadratureRule& rule, int n, Action action, const GroupFunction& f,
                           std::span<const GroupElement> translations);

}  // namespace gaf
