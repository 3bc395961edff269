#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaf/bundle.hpp"
#include "gaf/convolution.hpp"
#include "gaf/errors.hpp"
#include "gaf/extension.hpp"
#include "gaf/harness.hpp"
#include "gaf/identities.hpp"
#include "oracles.hpp"

using namespace gaf;

namespace {

cplx f_raw(const Eigen::Vector2d& b, const Eigen::Matrix2d& h) {
  const double d = (h - Eigen::Matrix2d::Identity()).squaredNorm();
  return std::exp(-0.5 * b.squaredNorm() - d) * cplx(1.0 + 0.2 * h(1, 0), 0.3 * b(0));
}

cplx g_raw(const Eigen::Vector2d& b, const Eigen::Matrix2d& h) {
  return std::exp(-(b - Eigen::Vector2d(0.2, -0.1)).squaredNorm() - 0.7 * std::log(h.determinant()) * std::log(h.determinant()) -
                  0.5 * (h(0, 1) - h(1, 0)) * (h(0, 1) - h(1, 0)));
}

cplx on_group(cplx (*fn)(const Eigen::Vector2d&, const Eigen::Matrix2d&), const GroupElement& x) {
  return fn(Eigen::Vector2d(x.translation()), Eigen::Matrix2d(x.matrix()));
}

std::vector<Axis> small_axes() {
  return {uniform_axis(AxisKind::Translation, "A1", 7, -3.0, 3.0), uniform_axis(AxisKind::Translation, "A2", 7, -3.0, 3.0),
          uniform_axis(AxisKind::Scale, "ut", 5, -1.0, 1.0),       uniform_axis(AxisKind::Diagonal, "u1", 5, -1.0, 1.0),
          uniform_axis(AxisKind::Nilpotent, "x12", 5, -2.0, 2.0),  periodic_axis(AxisKind::Circle, "theta", 6)};
}

}  // namespace

TEST_SUITE("convolution") {

TEST_CASE("convolve matches a brute-force sum with its own nodes, weights and group law") {
  const Chart chart(ChartKind::AffinePlus, 2, Ordering::KNA);
  const std::vector<Axis> axes = small_axes();
  const HaarGrid rule = haar_grid(chart, axes);
  GroupSampler rng(51);
  std::vector<GroupElement> points;
  for (int s = 0; s < 4; ++s) {
    Vec b(2);
    b << rng.uniform(-1, 1), rng.uniform(-1, 1);
    points.push_back(GroupElement::affine(b, rng.general_linear_plus(2).matrix()));
  }
  auto fg = [](const GroupElement& x) { return on_group(f_raw, x); };
  auto gg = [](const GroupElement& x) { return on_group(g_raw, x); };
  const std::vector<cplx> got = convolve(fg, gg, rule, points);

  const oracle::Trapezoid trans(7, -3.0, 3.0), logs(5, -1.0, 1.0), nil(5, -2.0, 2.0);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const cplx want = oracle::ga2_convolution(f_raw, g_raw, points[p].translation(), points[p].matrix(), trans, logs,
                                              nil, 6);
    CHECK(std::abs(got[p] - want) <= 1e-10 * std::abs(want));
  }
}

TEST_CASE("parallel and serial convolution agree") {
  const HaarGrid rule = haar_grid(Chart(ChartKind::AffinePlus, 2, Ordering::KNA), small_axes());
  GroupSampler rng(52);
  std::vector<GroupElement> points{rng.affine(2), rng.affine(2)};
  auto fg = [](const GroupElement& x) { return on_group(f_raw, x); };
  auto gg = [](const GroupElement& x) { return on_group(g_raw, x); };
  const auto p = convolve(fg, gg, rule, points), s = convolve_serial(fg, gg, rule, points);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - s[i]) <= 1e-13 * std::abs(s[i]));
}

TEST_CASE("Haar grids refuse the wrong ordering or axes") {
  CHECK_THROWS_AS(haar_grid(Chart(ChartKind::AffinePlus, 2, Ordering::NAK), small_axes()), ContractViolation);
  std::vector<Axis> axes = small_axes();
  std::swap(axes[2], axes[3]);
  CHECK_THROWS_AS(haar_grid(Chart(ChartKind::AffinePlus, 2, Ordering::KNA), axes), ContractViolation);
  axes.pop_back();
  CHECK_THROWS_AS(haar_grid(Chart(ChartKind::AffinePlus, 2, Ordering::KNA), axes), ContractViolation);
}

TEST_CASE("auxiliary group: associativity, inverses, embedding") {
  GroupSampler rng(53);
  auto aux = [&] {
    Vec A(2);
    A << rng.normal(), rng.normal();
    return AuxiliaryElement{A, rng.general_linear_plus(2).matrix(), rng.general_linear_plus(2).matrix()};
  };
  for (int s = 0; s < 20; ++s) {
    const AuxiliaryElement p = aux(), q = aux(), r = aux();
    const AuxiliaryElement l = compose(compose(p, q), r), rr = compose(p, compose(q, r));
    CHECK((l.A - rr.A).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((l.X - rr.X).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((l.Y - rr.Y).cwiseAbs().maxCoeff() < 1e-10);
    const AuxiliaryElement e = compose(p, invert(p));
    CHECK(e.A.cwiseAbs().maxCoeff() < 1e-12);
    CHECK((e.X - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    // (A, X, Y)(B, P, Q) = (A + Y B, X P, Y Q)
    CHECK((compose(p, q).A - (p.A + p.Y * q.A)).cwiseAbs().maxCoeff() < 1e-12);

    const GroupElement g = rng.affine(2), h = rng.affine(2);
    const AuxiliaryElement gh = compose(embed_affine(g), embed_affine(h)), want = embed_affine(compose(g, h));
    CHECK((gh.A - want.A).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((gh.Y - want.Y).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((gh.X - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("tilde extension restricts to f and is right-equivariant") {
  auto fg = [](const GroupElement& x) { return on_group(f_raw, x); };
  const AuxiliaryFunction ft = tilde_extend(fg);
  GroupSampler rng(54);
  for (int s = 0; s < 20; ++s) {
    const GroupElement g = rng.affine(2), h = rng.affine(2);
    CHECK(std::abs(ft(embed_affine(g)) - fg(g)) < 1e-14);
    Vec A(2);
    A << rng.normal(), rng.normal();
    const AuxiliaryElement p{A, rng.general_linear_plus(2).matrix(), rng.general_linear_plus(2).matrix()};
    // f~(p (h, I, h')) = f((X A, X Y) h)
    const GroupElement pi = GroupElement::affine(p.X * p.A, p.X * p.Y);
    CHECK(std::abs(ft(compose(p, embed_affine(h))) - fg(compose(pi, h))) < 1e-12);
  }
}

TEST_CASE("solvable auxiliary law and extension") {
  GroupSampler rng(55);
  auto el = [&] {
    return SolvableAuxElement{rng.unipotent(2).matrix(), rng.positive_diagonal(2).matrix().diagonal(),
                              rng.positive_diagonal(2).matrix().diagonal()};
  };
  for (int s = 0; s < 20; ++s) {
    const SolvableAuxElement p = el(), q = el(), r = el();
    const SolvableAuxElement l = compose(compose(p, q), r), rr = compose(p, compose(q, r));
    CHECK((l.n - rr.n).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((l.a - rr.a).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((l.b - rr.b).cwiseAbs().maxCoeff() < 1e-12);
    const SolvableAuxElement e = compose(p, invert(p));
    CHECK((e.n - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    // b n b^-1 scales x12 by b1 / b2
    const Mat c = conjugate_by_diagonal(p.n, p.b);
    CHECK(c(0, 1) == doctest::Approx(p.n(0, 1) * p.b(0) / p.b(1)).epsilon(1e-14));
  }
  const SolvableFunction f = [](const Mat& n, const Vec& a) { return cplx(std::exp(-n(0, 1) * n(0, 1)) * a(0)); };
  const SolvableAuxFunction ft = tilde_extend_solvable(f);
  const Mat n = rng.unipotent(2).matrix();
  const Vec one = Vec::Ones(2), b = rng.positive_diagonal(2).matrix().diagonal();
  CHECK(std::abs(ft({n, one, b}) - f(n, b)) < 1e-15);
}

TEST_CASE("multilinear interpolation is exact for multilinear functions") {
  const std::vector<Axis> axes{uniform_axis(AxisKind::Diagonal, "u1", 6, -2.0, 3.0),
                               uniform_axis(AxisKind::Nilpotent, "x12", 4, -1.0, 1.0)};
  auto lin = [](double x, double y) { return cplx(1.0 + 0.5 * x - 0.2 * y + 0.3 * x * y, x - y); };
  const GridFunction s = sample(axes, [&](std::span<const double> v) { return lin(v[0], v[1]); });
  GroupSampler rng(56);
  for (int t = 0; t < 50; ++t) {
    const double c[2] = {rng.uniform(-2.0, 3.0), rng.uniform(-1.0, 1.0)};
    CHECK(std::abs(interpolate_at(s, c) - lin(c[0], c[1])) < 1e-13);
  }
  const double outside[2] = {3.5, 0.0};
  CHECK(interpolate_at(s, outside) == cplx(0.0));

  // periodic axes wrap between the last node and the first
  const std::vector<Axis> circ{periodic_axis(AxisKind::Circle, "theta", 4)};
  const GridFunction p(circ, {1.0, 2.0, 3.0, 5.0});
  const double between[1] = {2.0 * std::numbers::pi * 3.5 / 4}, wrapped[1] = {2.0 * std::numbers::pi + 0.1};
  CHECK(std::abs(interpolate_at(p, between) - 3.0) < 1e-14);
  CHECK(std::abs(interpolate_at(p, wrapped) - interpolate_at(p, std::array<double, 1>{0.1})) < 1e-14);
}

TEST_CASE("interpolate refuses samples that have not decayed") {
  const Chart chart(ChartKind::Solvable, 2, Ordering::NAK);
  const std::vector<Axis> axes{uniform_axis(AxisKind::Diagonal, "u1", 9, -2.0, 2.0),
                               uniform_axis(AxisKind::Nilpotent, "x12", 9, -2.0, 2.0)};
  const GridFunction flat = sample(axes, [](std::span<const double>) { return cplx(1.0); });
  CHECK_THROWS_AS(interpolate(flat, chart), PreconditionError);
}

TEST_CASE("solvable pair: coarse agreement and refinement") {
  const RunConfig cfg = profile_config("default");
  const IdentityReport coarse = solvable_convolution_identity(cfg.solvable_convolution, 1);
  const IdentityReport fine = solvable_convolution_identity(cfg.solvable_convolution.refined(2), 1);
  CHECK(coarse.residual < 5e-2);
  CHECK(fine.residual * 2.0 <= coarse.residual);
  CHECK(std::abs(coarse.left) > 1e-6);
}

TEST_CASE("affine pair on the coarse grid") {
  const IdentityReport r = affine_convolution_identity(profile_config("default").affine_convolution, 1);
  CHECK(r.residual < 5e-2);
  CHECK(std::abs(r.left) > 1e-6);
}

TEST_CASE("left translation multiplies the spectrum by a phase") {
  const RunConfig cfg = profile_config("default");
  Vec c(2);
  c << 0.4, -0.25;
  const IdentityReport r = shift_equivariance(cfg.grid, make_bundle("gaussian", Level::GAPlus, 2, 1), c);
  CHECK(r.passed);
  CHECK(r.residual < 1e-8);
  LevelGrid sl = cfg.grid;
  sl.level = Level::SL;
  CHECK_THROWS_AS(shift_equivariance(sl, make_bundle("gaussian", Level::SL, 2, 1), c), ContractViolation);
}

}  // TEST_SUITE
