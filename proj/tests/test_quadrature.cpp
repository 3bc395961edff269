#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaf/charts.hpp"
#include "gaf/errors.hpp"
#include "gaf/identities.hpp"
#include "gaf/quadrature.hpp"
#include "oracles.hpp"

using namespace gaf;

TEST_SUITE("quadrature") {

TEST_CASE("uniform axis is the composite trapezoid rule") {
  const Axis a = uniform_axis(AxisKind::Translation, "A1", 17, -3.0, 5.0);
  const oracle::Trapezoid t(17, -3.0, 5.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a.nodes[i] == doctest::Approx(t.x[i]).epsilon(1e-15));
    CHECK(a.weights[i] == doctest::Approx(t.w[i]).epsilon(1e-15));
  }
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n - 1 exactly") {
  for (int n : {1, 3, 5, 9}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += w[i] * std::pow(x[i], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(s - exact) < 1e-14);
    }
  }
}

TEST_CASE("compact rules carry unit mass") {
  CHECK(build_rule(RuleFactor::K_SO2, {16, 0, 0, 1, 0}).total_mass() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(build_rule(RuleFactor::K_SO3, {9, 0, 0, 1, 5}).total_mass() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("non-compact rules integrate Gaussians against their factor measure") {
  // R^2: int exp(-|x|^2 / 2) dx = 2 pi
  const ProductRule e({build_rule(RuleFactor::EuclideanRn, {129, -9.0, 9.0, 2, 0})});
  const cplx ie = integrate([](std::span<const double> x) { return cplx(std::exp(-0.5 * (x[0] * x[0] + x[1] * x[1]))); }, e);
  CHECK(std::abs(ie - 2.0 * std::numbers::pi) < 1e-12);
  // R+: int exp(-(log t)^2 / 2) dt / t = sqrt(2 pi), nodes in u = log t
  const ProductRule s({build_rule(RuleFactor::ScaleRplus, {129, -9.0, 9.0, 1, 0})});
  const cplx is = integrate([](std::span<const double> u) { return cplx(std::exp(-0.5 * u[0] * u[0])); }, s);
  CHECK(std::abs(is - std::sqrt(2.0 * std::numbers::pi)) < 1e-12);
}

TEST_CASE("parallel and serial integration agree to rounding") {
  const ProductRule r({build_rule(RuleFactor::N_unipotent, {20, -4.0, 4.0, 3, 0}),
                       build_rule(RuleFactor::K_SO2, {8, 0, 0, 1, 0})});
  auto f = [](std::span<const double> x) { return cplx(std::exp(-x[0] * x[0] - x[1] * x[1]), std::cos(x[2] + x[3])); };
  const cplx p = integrate(f, r), q = integrate_serial(f, r);
  CHECK(std::abs(p - q) < 1e-12 * std::abs(q));
}

TEST_CASE("modulus is prod a_i / a_j") {
  GroupSampler rng(31);
  for (int n : {2, 3}) {
    const GroupElement a = rng.positive_diagonal(n);
    CHECK(modulus_half_sum(a) == doctest::Approx(oracle::modulus(a.matrix().diagonal())).epsilon(1e-14));
  }
  Vec a(2);
  a << 2.0, 0.5;
  CHECK(modulus_half_sum(a) == doctest::Approx(4.0));
}

TEST_CASE("finite-difference conjugation Jacobian matches the modulus") {
  GroupSampler rng(32);
  for (int n : {2, 3})
    for (int s = 0; s < 100; ++s) {
      const Vec a = rng.positive_diagonal(n).matrix().diagonal();
      const Mat u = rng.unipotent(n).matrix();
      const double fd = conjugation_jacobian_fd(a, u);
      const double ref = oracle::conjugation_jacobian(a, u, 1e-3);
      CHECK(std::abs(fd - ref) <= 1e-12 * std::abs(ref));
      CHECK(std::abs(fd - oracle::modulus(a)) <= 1e-10 * oracle::modulus(a));
    }
  for (int n : {2, 3}) {
    const IdentityReport r = modulus_check(n, 100, 7);
    CHECK(r.passed);
    CHECK(r.residual < 1e-10);
  }
}

TEST_CASE("Haar rules are invariant under their group") {
  struct Case {
    RuleFactor f;
    int n;
  };
  for (const Case c : {Case{RuleFactor::K_SO2, 2}, Case{RuleFactor::K_SO3, 3}, Case{RuleFactor::A_diag, 2},
                       Case{RuleFactor::A_diag, 3}, Case{RuleFactor::N_unipotent, 2}, Case{RuleFactor::EuclideanRn, 2},
                       Case{RuleFactor::ScaleRplus, 2}}) {
    const IdentityReport r = haar_invariance(c.f, c.n, c.f == RuleFactor::K_SO3 ? 12 : 64, 5);
    INFO(r.identity, " n=", c.n, " residual ", r.residual);
    CHECK(r.passed);
  }
}

TEST_CASE("invariance residual detects a non-invariant weight") {
  // three nodes alias cos(3 theta) onto the constant mode, so rotating the function changes the sum
  const QuadratureRule coarse = build_rule(RuleFactor::K_SO2, {3, 0, 0, 1, 0});
  GroupSampler rng(33);
  const GroupElement h[] = {rng.rotation(2)};
  auto f = [](const GroupElement& k) {
    const double th = std::atan2(k.matrix()(1, 0), k.matrix()(0, 0));
    return cplx(std::cos(3.0 * th) + 1.0);
  };
  CHECK(invariance_residual(coarse, 2, Action::Left, f, h) > 1e-3);
}

TEST_CASE("order swap: NAK and KAN integrals agree") {
  const IdentityReport r = order_swap_identity(129, 6.0, 32);
  CHECK(r.residual < 1e-6);
  CHECK(r.left.real() > 0.1);
}

TEST_CASE("rule construction rejects bad parameters") {
  CHECK_THROWS(build_rule(RuleFactor::EuclideanRn, {1, -1.0, 1.0, 1, 0}));
  CHECK_THROWS(build_rule(RuleFactor::EuclideanRn, {8, 1.0, -1.0, 1, 0}));
  CHECK_THROWS(build_rule(RuleFactor::K_SO2, {0, 0, 0, 1, 0}));
}

}  // TEST_SUITE
