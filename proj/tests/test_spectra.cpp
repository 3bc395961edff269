#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaf/charts.hpp"
#include "gaf/errors.hpp"
#include "gaf/kernels.hpp"
#include "gaf/spectra.hpp"
#include "oracles.hpp"

using namespace gaf;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("spectra") {

TEST_CASE("Euclidean transform of a Gaussian matches the analytic transform") {
  const Axis x = uniform_axis(AxisKind::Translation, "A1", 256, -8.0, 8.0);
  const Axis mu = frequency_axis(AxisKind::FreqTranslation, "mu1", 256, 8.0);
  constexpr double s = 0.9;
  const GridFunction f = sample({x}, [](std::span<const double> v) { return cplx(std::exp(-0.5 * v[0] * v[0] / (s * s))); });
  const GridFunction F = euclid_ft(f, {mu});
  double worst = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double exact = s * std::sqrt(2.0 * kPi) * std::exp(-0.5 * s * s * mu.nodes[k] * mu.nodes[k]);
    worst = std::max(worst, std::abs(F[k] - exact));
  }
  CHECK(worst < 1e-12);
  // frozen: F(1) = 0.9 sqrt(2 pi) e^{-0.405}; mu = 1 is not a node, so sum directly
  cplx at1 = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) at1 += x.weights[j] * f[j] * std::polar(1.0, -x.nodes[j]);
  CHECK(std::abs(at1 - 1.5046766393589581) < 1e-13);
}

TEST_CASE("Euclidean Parseval on 256 points over [-8, 8]") {
  const Axis x = uniform_axis(AxisKind::Nilpotent, "x12", 256, -8.0, 8.0);
  const Axis xi = frequency_axis(AxisKind::FreqNilpotent, "xi12", 256, 8.0);
  const GridFunction f =
      sample({x}, [](std::span<const double> v) { return cplx(std::exp(-0.5 * (v[0] - 0.4) * (v[0] - 0.4) / 0.81)); });
  const double left = kernels::weighted_norm2(f), right = kernels::weighted_norm2(euclid_ft(f, {xi}));
  CHECK(rel(left, oracle::gaussian_norm2(0.9)) < 1e-12);
  CHECK(rel(right, left) < 1e-6);
}

TEST_CASE("Mellin transform of a log-Gaussian") {
  const Axis u = uniform_axis(AxisKind::Scale, "ut", 256, -8.0, 8.0);
  const Axis eta = frequency_axis(AxisKind::FreqScale, "eta", 256, 8.0);
  constexpr double s = 0.8;
  auto f = [](double t) { return cplx(std::exp(-0.5 * (std::log(t) - 0.3) * (std::log(t) - 0.3) / (s * s))); };
  const GridFunction F = mellin_ft(f, u, eta);
  double worst = 0.0;
  for (std::size_t k = 0; k < eta.size(); ++k) {
    const double e = eta.nodes[k];
    const cplx exact = s * std::sqrt(2.0 * kPi) * std::exp(-0.5 * s * s * e * e) * std::polar(1.0, -0.3 * e);
    worst = std::max(worst, std::abs(F[k] - exact));
  }
  CHECK(worst < 1e-12);
  const GridFunction fs = sample({u}, [&](std::span<const double> v) { return f(std::exp(v[0])); });
  CHECK(rel(kernels::weighted_norm2(F), kernels::weighted_norm2(fs)) < 1e-6);
  // inverse recovers the samples once the eta grid covers the decay of F
  const Axis wide = frequency_axis(AxisKind::FreqScale, "eta", 256, 12.0);
  const GridFunction back = mellin_ift(mellin_ft(f, u, wide), u);
  double err = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(back[i] - fs[i]));
  CHECK(err < 1e-10);
}

TEST_CASE("non-decaying input is refused") {
  const Axis x = uniform_axis(AxisKind::Translation, "A1", 64, -2.0, 2.0);
  const Axis mu = frequency_axis(AxisKind::FreqTranslation, "mu1", 64, 8.0);
  const GridFunction f = sample({x}, [](std::span<const double>) { return cplx(1.0); });
  CHECK_THROWS_AS(euclid_ft(f, {mu}), PreconditionError);
}

// d(m, m') here is the d^l_{m' m} of the usual tables.
TEST_CASE("Wigner small-d agrees with the explicit sum") {
  for (int l = 0; l <= 6; ++l)
    for (double beta : {0.0, 0.3, 1.1, 2.0, kPi}) {
      const Eigen::MatrixXd d = wigner_small_d(l, beta);
      for (int m = -l; m <= l; ++m)
        for (int mp = -l; mp <= l; ++mp) CHECK(std::abs(d(m + l, mp + l) - oracle::wigner_d(l, mp, m, beta)) < 1e-12);
    }
  // frozen: d^1_{0,0}(b) = cos b
  CHECK(wigner_small_d(1, 0.7)(1, 1) == doctest::Approx(std::cos(0.7)).epsilon(1e-15));
}

TEST_CASE("Wigner D is unitary and a homomorphism") {
  GroupSampler rng(41);
  double unit = 0.0, hom = 0.0;
  for (int s = 0; s < 50; ++s) {
    const GroupElement a = rng.rotation(3), b = rng.rotation(3);
    for (int l = 0; l <= 4; ++l) {
      const CMat Da = irrep_matrix(l, a), Db = irrep_matrix(l, b);
      const CMat Dab = irrep_matrix(l, compose(a, b));
      unit = std::max(unit, (Da * Da.adjoint() - CMat::Identity(2 * l + 1, 2 * l + 1)).cwiseAbs().maxCoeff());
      hom = std::max(hom, (Dab - Da * Db).cwiseAbs().maxCoeff());
    }
  }
  CHECK(unit < 1e-10);
  CHECK(hom < 1e-10);
}

TEST_CASE("SO(2) Peter-Weyl: inversion and Plancherel at band 8 on 64 nodes") {
  auto f = [](const GroupElement& k) {
    double th[1];
    rotation_angles(k.matrix(), th);
    cplx s = 0.0;
    for (int m = -8; m <= 8; ++m) s += cplx(1.0 / (1 + m * m), 0.1 * m) * std::polar(1.0, m * th[0]);
    return s;
  };
  const QuadratureRule rule = build_rule(RuleFactor::K_SO2, {64, 0, 0, 1, 0});
  const CompactSpectrum spec = peter_weyl(f, rule, 8);
  // coefficient recovery
  for (int m = -8; m <= 8; ++m) CHECK(std::abs(spec.blocks.at(m)(0, 0) - cplx(1.0 / (1 + m * m), 0.1 * m)) < 1e-13);
  GroupSampler rng(42);
  double err = 0.0;
  for (int s = 0; s < 200; ++s) {
    const GroupElement k = rng.rotation(2);
    err = std::max(err, std::abs(peter_weyl_evaluate(spec, k) - f(k)));
  }
  CHECK(err < 1e-12);
  CHECK(compact_plancherel_residual(f, rule, 8) < 1e-12);
}

TEST_CASE("SO(3) Peter-Weyl at l <= 4 with a Gauss-Legendre beta rule") {
  // f = sum_l (2l+1) sum c^l_{pq} D^l_{qp}: the spectrum block l is c^l
  std::vector<std::tuple<int, int, int, cplx>> coeff;
  std::mt19937_64 g(43);
  std::normal_distribution<double> nd;
  for (int l = 0; l <= 4; ++l)
    for (int p = -l; p <= l; ++p)
      for (int q = -l; q <= l; ++q) coeff.emplace_back(l, p, q, cplx(nd(g), nd(g)));
  auto f = [&](const GroupElement& k) {
    cplx s = 0.0;
    for (const auto& [l, p, q, c] : coeff) s += (2.0 * l + 1.0) * c * irrep_matrix(l, k)(q + l, p + l);
    return s;
  };
  const QuadratureRule rule = build_rule(RuleFactor::K_SO3, {9, 0, 0, 1, 5});
  const CompactSpectrum spec = peter_weyl(f, rule, 4);
  double err = 0.0;
  for (const auto& [l, p, q, c] : coeff) err = std::max(err, std::abs(spec.blocks.at(l)(p + l, q + l) - c));
  CHECK(err < 1e-10);
  CHECK(compact_plancherel_residual(f, rule, 4) < 1e-8);
  GroupSampler rng(44);
  for (int s = 0; s < 20; ++s) {
    const GroupElement k = rng.rotation(3);
    CHECK(std::abs(peter_weyl_evaluate(spec, k) - f(k)) < 1e-9);
  }
}

TEST_CASE("compact quadrature below the band is rejected") {
  const QuadratureRule so2 = build_rule(RuleFactor::K_SO2, {16, 0, 0, 1, 0});
  CHECK_THROWS_AS(require_compact_quadrature(so2.axes(), 8), ConfigurationError);
  CHECK_NOTHROW(require_compact_quadrature(so2.axes(), 7));
  const QuadratureRule so3 = build_rule(RuleFactor::K_SO3, {9, 0, 0, 1, 3});
  CHECK_THROWS_AS(require_compact_quadrature(so3.axes(), 4), ConfigurationError);
}

}  // TEST_SUITE
