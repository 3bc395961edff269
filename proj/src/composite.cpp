#include "gaf/composite.hpp"

#include "gaf/errors.hpp"
#include "gaf/kernels.hpp"
#include "gaf/spectra.hpp"

namespace gaf {

CompositeTransform::CompositeTransform(LevelGrid grid) : grid_(std::move(grid)), spatial_(grid_.spatial_axes()) {}

CompositeSpectrum CompositeTransform::forward(const GridFunction& f) const {
  GridFunction g = f;
  std::size_t i = 0;
  while (i < g.rank()) {
    const Axis a = g.axis(i);
    if (a.kind == AxisKind::Circle || a.kind == AxisKind::EulerAlpha) {
      g = compact_forward(g, i, grid_.compact.band_limit);
    } else if (!is_spectral(a.kind) && !is_compact(a.kind)) {
      g = transform_axis(g, i, grid_.spectral_axis(a.kind, a.label));
    } else {
      throw ContractViolation("CompositeTransform: unexpected axis " + a.label);
    }
    ++i;
  }
  return g;
}

GridFunction CompositeTransform::inverse(const CompositeSpectrum& F) const {
  GridFunction g = F;
  std::size_t i = 0;
  const Chart c = grid_.chart();
  auto spatial_for = [&](const Axis& a) -> std::vector<Axis> {
    std::vector<Axis> out;
    for (std::size_t k = 0; k < spatial_.size(); ++k) {
      const AxisKind sk = spatial_[k].kind;
      if (a.kind == AxisKind::DualCircle && sk == AxisKind::Circle) out.push_back(spatial_[k]);
      if (a.kind == AxisKind::DualRotation3 && (sk == AxisKind::EulerAlpha || sk == AxisKind::EulerBeta || sk == AxisKind::EulerGamma))
        out.push_back(spatial_[k]);
      if (!is_compact(sk) && !is_compact(a.kind) && spectral_label(spatial_[k].label, sk) == a.label)
        out.push_back(spatial_[k]);
    }
    if (out.empty()) throw ContractViolation("CompositeTransform: no spatial axis for " + a.label);
    return out;
  };
  while (i < g.rank()) {
    const Axis a = g.axis(i);
    auto sp = spatial_for(a);
    if (is_compact(a.kind)) {
      g = compact_inverse(g, i, sp);
      i += sp.size();
    } else {
      g = inverse_transform_axis(g, i, sp[0]);
      ++i;
    }
  }
  (void)c;
  return g;
}

SeparableFunction CompositeTransform::forward(const SeparableFunction& f) const {
  SeparableFunction out;
  for (const auto& factor : f.factors) out.factors.push_back(forward(factor));
  return out;
}

namespace {

void require_level_axes(const LevelGrid& grid, const SampledFunction& f, const char* op) {
  if (f.ordering && *f.ordering != Ordering::NAK)
    throw ContractViolation(std::string(op) + ": function is sampled in " + std::string(to_string(*f.ordering)) +
                            " coordinates, expected NAK");
  const auto axes = grid.spatial_axes();
  if (axes.size() != f.rank()) throw ContractViolation(std::string(op) + ": function does not carry the level's axes");
  for (std::size_t i = 0; i < axes.size(); ++i)
    if (axes[i].label != f.axis(i).label || axes[i].kind != f.axis(i).kind)
      throw ContractViolation(std::string(op) + ": axis " + f.axis(i).label + " does not match " + axes[i].label);
}

CompositeSpectrum level_transform(const LevelGrid& grid, const SampledFunction& f, Level expected, const char* op) {
  if (grid.level != expected) throw ContractViolation(std::string(op) + ": grid is for level " + to_string(grid.level));
  require_level_axes(grid, f, op);
  return CompositeTransform(grid).forward(f);
}

double separable_norm2(const SeparableFunction& f) {
  double v = f.factors.empty() ? 0.0 : 1.0;
  for (const auto& g : f.factors) v *= kernels::weighted_norm2(g);
  return v;
}

IdentityReport base_report(const LevelGrid& grid, const char* name) {
  IdentityReport r;
  r.identity = name;
  r.level = to_string(grid.level);
  r.n = grid.n;
  r.grid = grid.descriptor();
  return r;
}

}  // namespace

CompositeSpectrum solvable_transform(const LevelGrid& grid, const SampledFunction& f) {
  return level_transform(grid, f, Level::S, "solvable_transform");
}

CompositeSpectrum sl_transform(const LevelGrid& grid, const SampledFunction& f) {
  return level_transform(grid, f, Level::SL, "sl_transform");
}

CompositeSpectrum glplus_transform(const LevelGrid& grid, const SampledFunction& f) {
  return level_transform(grid, f, Level::GLPlus, "glplus_transform");
}

CompositeSpectrum ga_transform(const LevelGrid& grid, const SampledFunction& f) {
  return level_transform(grid, f, Level::GAPlus, "ga_transform");
}

IdentityReport plancherel_residual(const LevelGrid& grid, const SampledFunction& f) {
  IdentityReport r = base_report(grid, "plancherel");
  r.left = kernels::weighted_norm2(f);
  r.right = kernels::weighted_norm2(CompositeTransform(grid).forward(f));
  finalize(r, -1.0);
  return r;
}

IdentityReport plancherel_residual(const LevelGrid& grid, const SeparableFunction& f) {
  IdentityReport r = base_report(grid, "plancherel");
  r.left = separable_norm2(f);
  r.right = separable_norm2(CompositeTransform(grid).forward(f));
  finalize(r, -1.0);
  return r;
}

IdentityReport plancherel_residual(const LevelGrid& grid, const SeparableFunction& plus, const SeparableFunction& minus) {
  IdentityReport r = base_report(grid, "plancherel");
  CompositeTransform t(grid);
  r.left = separable_norm2(plus) + separable_norm2(minus);
  r.right = separable_norm2(t.forward(plus)) + separable_norm2(t.forward(minus));
  finalize(r, -1.0);
  return r;
}

IdentityReport plancherel_residual(const LevelGrid& grid, const TestFunctionBundle& bundle) {
  return plancherel_residual(grid, bundle.sample(grid));
}

IdentityReport plancherel_residual(const LevelGrid& grid, const BundlePair& pair) {
  return plancherel_residual(grid, pair.plus.sample(grid), pair.minus.sample(grid));
}

}  // namespace gaf
