#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gaf/group.hpp"
#include "gaf/types.hpp"

namespace gaf {

enum class AxisKind {
  // spatial
  Translation,  // R^n coordinate
  Scale,        // u = log t
  Diagonal,     // u_i = log a_i
  Nilpotent,    // strictly upper entry of n
  Circle,       // SO(2) angle
  EulerAlpha,
  EulerBeta,
  EulerGamma,
  // spectral
  FreqTranslation,  // mu
  FreqScale,        // eta
  FreqDiagonal,     // lambda
  FreqNilpotent,    // xi
  DualCircle,       // m
  DualRotation3,    // flattened (l, p, q)
};

std::string to_string(AxisKind kind);
bool is_spectral(AxisKind kind);
bool is_compact(AxisKind kind);
// Frequency kind paired with a non-compact spatial kind.
AxisKind dual_kind(AxisKind spatial);

struct Axis {
  AxisKind kind;
  std::string label;
  std::vector<double> nodes;
  std::vector<double> weights;
  bool periodic = false;
  int band_limit = -1;  // DualCircle / DualRotation3 only

  std::size_t size() const { return nodes.size(); }
};

// Trapezoid rule on [min, max] including both endpoints.
Axis uniform_axis(AxisKind kind, std::string label, int count, double min, double max);
// count equispaced nodes on [0, 2pi), weight 1/count.
Axis periodic_axis(AxisKind kind, std::string label, int count);
// beta = arccos of Gauss-Legendre nodes, weight w/2.
Axis euler_beta_axis(std::string label, int count);
// Symmetric grid on [-max, max], trapezoid weight h / (2 pi).
Axis frequency_axis(AxisKind kind, std::string label, int count, double max);
// m = -band..band, weight 1.
Axis dual_circle_axis(std::string label, int band);
// (l, p, q) flattened, l = 0..band, p, q = -l..l; weight 2l + 1.
Axis dual_rotation3_axis(std::string label, int band);

struct SO3Index {
  int l, p, q;
};
SO3Index so3_index(std::size_t flat);
std::size_t so3_flat(int l, int p, int q);
std::size_t so3_size(int band);

void gauss_legendre(int count, std::vector<double>& x, std::vector<double>& w);

// Dense complex samples on a product grid, row-major (last axis fastest).
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<Axis> axes);
  GridFunction(std::vector<Axis> axes, std::vector<cplx> values);

  const std::vector<Axis>& axes() const { return axes_; }
  const Axis& axis(std::size_t i) const { return axes_.at(i); }
  std::size_t rank() const { return axes_.size(); }
  std::size_t size() const { return values_.size(); }
  std::vector<std::size_t> shape() const;
  // Position of the axis with this label; throws ContractViolation if absent.
  std::size_t axis_index(const std::string& label) const;
  std::optional<std::size_t> find_axis(const std::string& label) const;

  std::vector<cplx>& values() { return values_; }
  const std::vector<cplx>& values() const { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  cplx at(std::span<const std::size_t> index) const;

  // Product of axis weights at a flat index.
  double weight(std::size_t flat) const;
  std::vector<double> weights() const;

  std::optional<Ordering> ordering;

 private:
  std::vector<Axis> axes_;
  std::vector<cplx> values_;
};

using SampledFunction = GridFunction;

// Separable function as a product of factors on disjoint axis sets.
struct SeparableFunction {
  std::vector<GridFunction> factors;

  std::vector<Axis> axes() const;
  // Materialize the outer product (axes in factor order).
  GridFunction dense() const;
};

// Fill a grid function by evaluating f at every node (coordinates in axis order).
template <class F>
GridFunction sample(std::vector<Axis> axes, F&& f) {
  GridFunction g(std::move(axes));
  const std::size_t r = g.rank();
  std::vector<double> x(r);
  std::vector<std::size_t> idx(r, 0);
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    for (std::size_t d = 0; d < r; ++d) x[d] = g.axis(d).nodes[idx[d]];
    g[flat] = f(std::span<const double>(x));
    for (std::size_t d = r; d-- > 0;) {
      if (++idx[d] < g.axis(d).size()) break;
      idx[d] = 0;
    }
  }
  return g;
}

}  // namespace gaf
