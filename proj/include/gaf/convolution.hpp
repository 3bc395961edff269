#pragma once

#include <span>
#include <vector>

#include "gaf/charts.hpp"
#include "gaf/grid.hpp"
#include "gaf/group.hpp"

namespace gaf {

// Quadrature over a group in chart coordinates. For the linear charts the KNA
// coordinate measure dk dn du (dt/t) is the Haar measure; for S and GA+ the
// coordinate measure is the right Haar measure.
struct HaarGrid {
  Chart chart;
  std::vector<Axis> axes;

  std::size_t size() const;
  double weight(std::size_t i) const;
  void node(std::size_t i, std::span<double> out) const;
};

HaarGrid haar_grid(const Chart& chart, std::vector<Axis> axes);

// (g * f)(X) = sum_Y w_Y f(Y^-1 X) g(Y) over the grid nodes Y.
std::vector<cplx> convolve(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule,
                           std::span<const GroupElement> points);
std::vector<cplx> convolve_serial(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule,
                                  std::span<const GroupElement> points);
// Output sampled on the nodes of `out_axes` (chart coordinates of the same chart).
SampledFunction convolve(const GroupFunction& f, const GroupFunction& g, const HaarGrid& rule,
                         const std::vector<Axis>& out_axes);

// Multilinear interpolation in chart coordinates. Periodic axes wrap; the Euler beta
// axis clamps; other axes are zero outside their range. Checks boundary decay of the
// non-compact axes.
GroupFunction interpolate(const SampledFunction& f, const Chart& chart);
// Interpolated value at chart coordinates.
cplx interpolate_at(const SampledFunction& f, std::span<const double> coords);

// Y(f) * psi (g, k) = sum_h w_h f(g h^-1 k) psi(h), over a Haar grid of the linear group.
cplx upsilon_convolve(const GroupFunction& f, const GroupFunction& psi, const HaarGrid& rule, const GroupElement& g,
                      const GroupElement& k);

}  // namespace gaf
