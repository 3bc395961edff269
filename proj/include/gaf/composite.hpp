#pragma once

#include "gaf/bundle.hpp"
#include "gaf/grid.hpp"
#include "gaf/level.hpp"
#include "gaf/report.hpp"

namespace gaf {

using CompositeSpectrum = GridFunction;

// Chained transform of a level: Euclidean FT on translation and nilpotent axes,
// log-coordinate FT on scale and diagonal axes, Peter-Weyl on the compact block.
// Kernels: exp(-i mu A), t^(-i eta), a^(-i lambda), exp(-i xi x), gamma(k^-1).
class CompositeTransform {
 public:
  explicit CompositeTransform(LevelGrid grid);

  const LevelGrid& grid() const { return grid_; }
  // f may carry any subset of the level's axes (e.g. one factor of a separable function).
  CompositeSpectrum forward(const GridFunction& f) const;
  GridFunction inverse(const CompositeSpectrum& F) const;
  SeparableFunction forward(const SeparableFunction& f) const;

 private:
  LevelGrid grid_;
  std::vector<Axis> spatial_;
};

// Level-checked entry points: f must be sampled on exactly the level's spatial axes
// (dense) and, when it records a chart ordering, that ordering must be NAK.
CompositeSpectrum solvable_transform(const LevelGrid& grid, const SampledFunction& f);
CompositeSpectrum sl_transform(const LevelGrid& grid, const SampledFunction& f);
CompositeSpectrum glplus_transform(const LevelGrid& grid, const SampledFunction& f);
CompositeSpectrum ga_transform(const LevelGrid& grid, const SampledFunction& f);

// left = spatial L2 norm in chart coordinates, right = spectral norm with the dual weights.
IdentityReport plancherel_residual(const LevelGrid& grid, const SampledFunction& f);
IdentityReport plancherel_residual(const LevelGrid& grid, const SeparableFunction& f);
// Two-component levels (GL, GA): sums over the components.
IdentityReport plancherel_residual(const LevelGrid& grid, const SeparableFunction& plus,
                                   const SeparableFunction& minus);
IdentityReport plancherel_residual(const LevelGrid& grid, const TestFunctionBundle& bundle);
IdentityReport plancherel_residual(const LevelGrid& grid, const BundlePair& pair);

}  // namespace gaf
