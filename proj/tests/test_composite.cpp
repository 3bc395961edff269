#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaf/bundle.hpp"
#include "gaf/composite.hpp"
#include "gaf/errors.hpp"
#include "gaf/harness.hpp"
#include "gaf/identities.hpp"
#include "gaf/kernels.hpp"
#include "oracles.hpp"

using namespace gaf;

namespace {

LevelGrid grid_for(Level level, int n = 2) {
  LevelGrid g = profile_config("default").grid;
  g.level = level;
  g.n = n;
  if (n == 3) g = [&] {
    LevelGrid h = profile_config("so3").grid;
    h.level = level;
    return h;
  }();
  return g;
}

LevelGrid small_grid(Level level, int count) {
  LevelGrid g = grid_for(level);
  for (AxisGrid* a : {&g.translation, &g.scale, &g.diagonal, &g.nilpotent}) {
    a->count = count;
    a->min = -8.0;
    a->max = 8.0;
    a->freq_count = count;
    a->freq_max = 8.0;
  }
  g.compact.nodes = 8;
  g.compact.band_limit = 3;
  return g;
}

// |f|^2 integral of the gaussian bundle: width 0.8 per non-compact axis, then the compact factor.
double gaussian_bundle_norm(const TestFunctionBundle& b) {
  double v = 1.0;
  for (std::size_t i = 0; i < b.chart().dimension(); ++i) {
    const AxisKind k = b.chart().axis_kinds()[i];
    if (!is_compact(k)) v *= oracle::gaussian_norm2(b.factor(b.chart().axis_labels()[i]).width);
  }
  if (!b.has_compact()) return v;
  double c = 0.0;
  if (b.n() == 2)
    for (const auto& [m, coef] : b.compact().circle) c += std::norm(coef);
  else
    for (const auto& [ix, coef] : b.compact().rotation) c += (2.0 * ix.l + 1.0) * std::norm(coef);
  return v * c;
}

}  // namespace

TEST_SUITE("composite") {

TEST_CASE("spatial norm of the gaussian bundle matches the closed form") {
  for (int n : {2, 3})
    for (Level l : {Level::N, Level::S, Level::SL, Level::GLPlus, Level::GAPlus}) {
      const LevelGrid g = grid_for(l, n);
      const TestFunctionBundle b = make_bundle("gaussian", l, n, 1);
      const IdentityReport r = plancherel_residual(g, b);
      INFO(to_string(l), " n=", n);
      CHECK(std::abs(r.left.real() - gaussian_bundle_norm(b)) < 1e-12 * gaussian_bundle_norm(b));
      CHECK(r.residual < 1e-12);
    }
}

TEST_CASE("frozen: gaussian bundle norm on GA+(2)") {
  // (0.8 sqrt(pi))^5 * (1 + 0.25 + 0.0625)
  const TestFunctionBundle b = make_bundle("gaussian", Level::GAPlus, 2, 1);
  CHECK(gaussian_bundle_norm(b) == doctest::Approx(7.5235693543449).epsilon(1e-13));
}

TEST_CASE("Plancherel at the default profile, mixed bundle") {
  for (Level l : {Level::N, Level::S, Level::SL, Level::GLPlus, Level::GAPlus}) {
    const IdentityReport r = plancherel_residual(grid_for(l), make_bundle("mixed", l, 2, 1));
    INFO(to_string(l), " residual ", r.residual);
    CHECK(r.residual < (l == Level::GLPlus || l == Level::GAPlus ? 1e-3 : 1e-4));
    CHECK(r.residual > 0.0);
  }
}

TEST_CASE("the deep profile reduces the residual at least twofold") {
  for (Level l : {Level::GLPlus, Level::GAPlus}) {
    LevelGrid deep = profile_config("deep").grid;
    deep.level = l;
    const double coarse = plancherel_residual(grid_for(l), make_bundle("mixed", l, 2, 1)).residual;
    const double fine = plancherel_residual(deep, make_bundle("mixed", l, 2, 1)).residual;
    CHECK(fine * 2.0 <= coarse);
  }
}

TEST_CASE("dense transform equals the outer product of factor transforms") {
  for (Level l : {Level::S, Level::SL, Level::GLPlus}) {
    const LevelGrid g = small_grid(l, 12);
    const SeparableFunction f = make_bundle("gaussian", l, 2, 1).sample(g);
    const CompositeTransform t(g);
    const GridFunction dense = t.forward(f.dense());
    const GridFunction outer = t.forward(f).dense();
    REQUIRE(dense.size() == outer.size());
    double err = 0.0, peak = 0.0;
    for (std::size_t i = 0; i < dense.size(); ++i) {
      err = std::max(err, std::abs(dense[i] - outer[i]));
      peak = std::max(peak, std::abs(outer[i]));
    }
    CHECK(err < 1e-8 * peak);
  }
}

TEST_CASE("inverse undoes forward on a well-resolved grid") {
  LevelGrid g = small_grid(Level::SL, 64);
  for (AxisGrid* a : {&g.diagonal, &g.nilpotent}) a->freq_max = 12.0;
  const GridFunction f = make_bundle("gaussian", Level::SL, 2, 1).sample(g).dense();
  const CompositeTransform t(g);
  const GridFunction back = t.inverse(t.forward(f));
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(back[i] - f[i]));
  CHECK(err < 1e-8);
}

TEST_CASE("level-checked entry points refuse mismatched input") {
  const LevelGrid sl = small_grid(Level::SL, 8);
  GridFunction f = make_bundle("gaussian", Level::SL, 2, 1).sample(sl).dense();
  CHECK_NOTHROW(sl_transform(sl, f));
  CHECK_THROWS_AS(ga_transform(sl, f), ContractViolation);
  CHECK_THROWS_AS(solvable_transform(sl, f), ContractViolation);
  f.ordering = Ordering::KNA;
  CHECK_THROWS_AS(sl_transform(sl, f), ContractViolation);
  const LevelGrid s = small_grid(Level::S, 8);
  const GridFunction fs = make_bundle("gaussian", Level::S, 2, 1).sample(s).dense();
  CHECK_THROWS_AS(sl_transform(sl, fs), ContractViolation);
}

TEST_CASE("the zero function has zero on both sides") {
  for (Level l : {Level::N, Level::S, Level::SL, Level::GLPlus, Level::GL, Level::GAPlus, Level::GA}) {
    const IdentityReport r = zero_function_sanity(grid_for(l));
    CHECK(r.left == cplx(0.0, 0.0));
    CHECK(r.right == cplx(0.0, 0.0));
    CHECK(r.residual == 0.0);
    CHECK(r.passed);
  }
}

TEST_CASE("two-component levels: doubling, additivity, one-sided support") {
  for (Level l : {Level::GL, Level::GA}) {
    LevelGrid g = small_grid(l, 9);
    const TestFunctionBundle b = make_bundle("gaussian", l, 2, 1);
    const IdentityReport r = component_doubling(g, b);
    CHECK(r.passed);
    CHECK(std::abs(r.left.real() / r.right.real() - 1.0) < 1e-12);

    const GroupFunction fp = b.group_function();
    const GroupFunction other = make_bundle("random", l, 2, 9).group_function();
    const Mat J = reflection(2);
    const GroupFunction fm = [&](const GroupElement& m) {
      const GroupElement h = m.tag() == GroupTag::Affine
                                 ? GroupElement::trusted(GroupTag::Affine, J * m.matrix(), m.translation())
                                 : gl_minus_transport(m);
      return other(h);
    };
    const ComponentIntegrals c = gl_full_integrals(g, fp, fm);
    CHECK(std::abs(c.total - (c.plus + c.minus)) < 1e-12 * c.total);
    const ComponentIntegrals z = gl_full_integrals(g, fp, [](const GroupElement&) { return cplx(0.0); });
    CHECK(z.minus == 0.0);
    CHECK(z.total / z.plus == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("two-component Plancherel sums the components") {
  const LevelGrid g = grid_for(Level::GL);
  const BundlePair p = make_bundle_pair("random", Level::GL, 2, 4);
  const IdentityReport both = plancherel_residual(g, p);
  const IdentityReport plus = plancherel_residual(g, p.plus);
  const IdentityReport minus = plancherel_residual(g, p.minus);
  CHECK(both.left.real() == doctest::Approx(plus.left.real() + minus.left.real()).epsilon(1e-14));
  CHECK(both.residual < 1e-10);
}

}  // TEST_SUITE
