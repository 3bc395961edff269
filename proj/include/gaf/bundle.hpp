#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gaf/grid.hpp"
#include "gaf/group.hpp"
#include "gaf/level.hpp"

namespace gaf {

// One factor of a separable test function.
struct FactorDescriptor {
  enum class Kind { Zero, Gaussian, Bump, Trig };

  Kind kind = Kind::Gaussian;
  double center = 0.0;
  double width = 1.0;  // standard deviation, or support radius for Bump
  // Trig on SO(2): m -> c_m with f = sum c_m exp(i m theta)
  std::map<int, cplx> circle;
  // Trig on SO(3): f = sum_l (2l+1) sum_{p,q} c^l_{pq} D^l_{qp}, i.e. c is the spectrum itself
  std::vector<std::pair<SO3Index, cplx>> rotation;

  static FactorDescriptor zero() {
    FactorDescriptor d;
    d.kind = Kind::Zero;
    return d;
  }
  static FactorDescriptor gaussian(double center, double width);
  static FactorDescriptor bump(double center, double radius);

  cplx operator()(double x) const;
  cplx compact_value(int n, std::span<const double> angles) const;
  int band() const;
  std::string describe() const;
};

// Separable function in NAK chart coordinates of a level, with one descriptor per
// non-compact axis and one for the compact block.
class TestFunctionBundle {
 public:
  TestFunctionBundle(std::string name, Level level, int n);

  const std::string& name() const { return name_; }
  Level level() const { return level_; }
  int n() const { return n_; }
  const Chart& chart() const { return chart_; }
  FactorDescriptor& factor(const std::string& label);
  const FactorDescriptor& factor(const std::string& label) const;
  FactorDescriptor& compact() { return compact_; }
  const FactorDescriptor& compact() const { return compact_; }
  bool has_compact() const;

  cplx evaluate(std::span<const double> coords) const;
  GroupFunction group_function() const;
  // One factor per non-compact axis, then one for the compact block.
  SeparableFunction sample(const LevelGrid& grid) const;

  // Worst boundary/peak ratio per non-compact axis on the grid, labelled.
  std::vector<std::pair<std::string, double>> boundary_ratios(const LevelGrid& grid) const;

 private:
  std::string name_;
  Level level_;
  int n_;
  Chart chart_;
  std::vector<std::string> labels_;
  std::vector<FactorDescriptor> factors_;
  FactorDescriptor compact_;
};

// Named bundles: zero, gaussian, mixed (one bump factor), random (seeded).
TestFunctionBundle make_bundle(const std::string& name, Level level, int n, std::uint64_t seed);
bool known_bundle(const std::string& name);

struct BundlePair {
  TestFunctionBundle plus;
  TestFunctionBundle minus;  // pulled back to GL+ via the transport
};

// Symmetric extension (minus = plus) except for "random", which draws an independent minus part.
BundlePair make_bundle_pair(const std::string& name, Level level, int n, std::uint64_t seed);

}  // namespace gaf
