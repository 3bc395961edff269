#include "gaf/identities.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gaf/composite.hpp"
#include "gaf/convolution.hpp"
#include "gaf/errors.hpp"
#include "gaf/extension.hpp"
#include "gaf/kernels.hpp"
#include "gaf/spectra.hpp"

namespace gaf {

ConvolutionGrid ConvolutionGrid::refined(int factor) const {
  ConvolutionGrid g = *this;
  g.count *= factor;
  g.compact_nodes *= factor;
  return g;
}

std::string ConvolutionGrid::descriptor() const {
  std::ostringstream os;
  os << count << "pts[" << -range << "," << range << "]/log[" << -log_range << "," << log_range << "] K" << compact_nodes
     << " x" << points;
  return os.str();
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double gauss(double x, double c, double s) {
  const double z = (x - c) / s;
  return std::exp(-0.5 * z * z);
}

IdentityReport start(const std::string& identity, const std::string& level, int n, std::string grid,
                     std::uint64_t seed) {
  IdentityReport r;
  r.identity = identity;
  r.level = level;
  r.n = n;
  r.grid = std::move(grid);
  r.seed = seed;
  return r;
}

// Keeps the pair with the largest relative deviation.
struct Worst {
  cplx left{0.0, 0.0}, right{0.0, 0.0};
  double residual = -1.0;
  void offer(cplx l, cplx r) {
    const double x = relative_residual(l, r);
    if (x > residual) {
      residual = x;
      left = l;
      right = r;
    }
  }
};

Mat unipotent2(double x) {
  Mat m = Mat::Identity(2, 2);
  m(0, 1) = x;
  return m;
}

Vec diagonal2(double u) {
  Vec a(2);
  a << std::exp(u), std::exp(-u);
  return a;
}

// f(x, u) on S for n = 2, x the nilpotent entry and u = log a_1.
struct SolvableGaussian {
  double cx, sx, cu, su;
  double operator()(double x, double u) const { return gauss(x, cx, sx) * gauss(u, cu, su); }
  double operator()(const Mat& n, const Vec& a) const { return (*this)(n(0, 1), std::log(a(0))); }
};

constexpr SolvableGaussian kSolvableF{0.2, 0.8, 0.3, 0.15};
constexpr SolvableGaussian kSolvableG{-0.1, 0.9, 0.0, 0.2};

// Product of a translation Gaussian and a GL+(2) factor in NAK coordinates.
struct AffineFactor {
  std::array<double, 2> ca, sa;
  double ct, st, cu, su, cx, sx;
  cplx k0, k1;  // k0 + k1 e^{i theta}

  double translation(double a0, double a1) const {
    const double z0 = (a0 - ca[0]) / sa[0], z1 = (a1 - ca[1]) / sa[1];
    return std::exp(-0.5 * (z0 * z0 + z1 * z1));
  }
  double translation(const Vec& A) const { return translation(A(0), A(1)); }
  cplx linear_coords(const double* c) const {
    return gauss(c[0], ct, st) * gauss(c[1], cu, su) * gauss(c[2], cx, sx) * (k0 + k1 * std::polar(1.0, c[3]));
  }
  cplx linear(const Mat& X) const {
    static const Chart chart(ChartKind::GeneralLinearPlus, 2, Ordering::NAK);
    double c[4];
    chart.linear_coords(X, std::span<double>(c, 4));
    return linear_coords(c);
  }
};

const AffineFactor kAffineF{{0.3, -0.2}, {0.8, 0.8}, 0.1, 0.25, 0.1, 0.25, -0.2, 0.7, 1.0, 0.5};
const AffineFactor kAffineG{{-0.2, 0.1}, {0.7, 0.7}, -0.1, 0.25, -0.05, 0.25, 0.15, 0.6, 1.0, cplx(0.0, 0.4)};

std::vector<Axis> gl_axes(const ConvolutionGrid& g) {
  return {uniform_axis(AxisKind::Scale, "ut", g.count, -g.log_range, g.log_range),
          uniform_axis(AxisKind::Diagonal, "u1", g.count, -g.log_range, g.log_range),
          uniform_axis(AxisKind::Nilpotent, "x12", g.count, -g.range, g.range),
          periodic_axis(AxisKind::Circle, "theta", g.compact_nodes)};
}

std::vector<Axis> translation_axes(const ConvolutionGrid& g) {
  return {uniform_axis(AxisKind::Translation, "A1", g.count, -g.range, g.range),
          uniform_axis(AxisKind::Translation, "A2", g.count, -g.range, g.range)};
}

// Nodes and weights of a product grid, materialised once.
struct Nodes {
  std::vector<std::vector<double>> x;
  std::vector<double> w;
};

Nodes materialise(const HaarGrid& g) {
  Nodes out;
  out.x.resize(g.size());
  out.w.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    out.x[i].resize(g.axes.size());
    g.node(i, out.x[i]);
    out.w[i] = g.weight(i);
  }
  return out;
}

GroupElement random_gl_near_identity(GroupSampler& rng) {
  static const Chart chart(ChartKind::GeneralLinearPlus, 2, Ordering::NAK);
  double c[4] = {rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2), rng.uniform(-0.3, 0.3),
                 rng.uniform(0.0, 2.0 * std::numbers::pi)};
  return GroupElement::trusted(GroupTag::GeneralLinearPlus, chart.linear_element(std::span<const double>(c, 4)));
}

constexpr std::size_t kMaxPoints = 16;

struct PointSums {
  std::array<cplx, kMaxPoints> v{};
  PointSums& operator+=(const PointSums& o) {
    for (std::size_t i = 0; i < kMaxPoints; ++i) v[i] += o.v[i];
    return *this;
  }
};

void check_points(const ConvolutionGrid& g) {
  std::vector<std::string> issues;
  if (g.count < 2) issues.push_back("convolution grid: count must be >= 2");
  if (g.compact_nodes < 1) issues.push_back("convolution grid: compact_nodes must be >= 1");
  if (!(g.range > 0) || !(g.log_range > 0)) issues.push_back("convolution grid: ranges must be positive");
  if (g.points < 1 || g.points > static_cast<int>(kMaxPoints))
    issues.push_back("convolution grid: points must be in 1.." + std::to_string(kMaxPoints));
  if (!issues.empty()) throw ConfigurationError(issues);
}

}  // namespace

IdentityReport solvable_convolution_identity(const ConvolutionGrid& cg, std::uint64_t seed) {
  check_points(cg);
  const auto t0 = Clock::now();
  IdentityReport r = start("solvable_convolution", "S", 2, cg.descriptor(), seed);
  const Axis xs = uniform_axis(AxisKind::Nilpotent, "x12", cg.count, -cg.range, cg.range);
  const Axis us = uniform_axis(AxisKind::Diagonal, "u1", cg.count, -cg.log_range, cg.log_range);
  const std::size_t nu = us.size(), total = xs.size() * us.size();
  const SolvableAuxFunction ft = tilde_extend_solvable([](const Mat& n, const Vec& a) { return cplx(kSolvableF(n, a)); });

  GroupSampler rng(seed);
  Worst worst;
  for (int p = 0; p < cg.points; ++p) {
    const SolvableAuxElement P{unipotent2(rng.uniform(-0.5, 0.5)), diagonal2(rng.uniform(0.0, 0.3)),
                               diagonal2(rng.uniform(0.0, 0.3))};
    // g * f~: nodes on g's variables, f~ evaluated through the group law
    const cplx lhs = kernels::deterministic_sum<cplx>(total, [&](std::size_t i) {
      const double xm = xs.nodes[i / nu], v = us.nodes[i % nu];
      const double w = xs.weights[i / nu] * us.weights[i % nu];
      const SolvableAuxElement Y{unipotent2(xm), Vec::Ones(2), diagonal2(v)};
      return w * ft(compose(invert(Y), P)) * kSolvableG(xm, v);
    });
    // f~ *_c g: nodes on f~'s variables
    const cplx rhs = kernels::deterministic_sum<cplx>(total, [&](std::size_t i) {
      const double xp = xs.nodes[i / nu], up = us.nodes[i % nu];
      const double w = xs.weights[i / nu] * us.weights[i % nu];
      const Mat m = unipotent2(xp);
      const Vec c = diagonal2(up);
      const Mat gn = P.n * detail::unipotent_inverse(m);
      const Vec ga = P.a.cwiseQuotient(c);
      return w * ft(SolvableAuxElement{m, c, P.b}) * kSolvableG(gn, ga);
    });
    worst.offer(lhs, rhs);
  }
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  finalize(r, 5e-2);
  return r;
}

IdentityReport solvable_spectral_identity(const ConvolutionGrid& cg, std::uint64_t seed) {
  check_points(cg);
  const auto t0 = Clock::now();
  IdentityReport r = start("solvable_spectral_convolution", "S", 2, cg.descriptor(), seed);
  // odd count: u = 0 is a node, where the nu-integrated spectrum is read off
  const int count = cg.count | 1;
  const Axis xs = uniform_axis(AxisKind::Nilpotent, "x12", count, -cg.range, cg.range);
  const Axis us = uniform_axis(AxisKind::Diagonal, "u1", count, -cg.log_range, cg.log_range);
  const std::size_t N = xs.size();
  const double h = us.nodes[1] - us.nodes[0];
  const Axis nu = frequency_axis(AxisKind::FreqDiagonal, "nu", count, std::numbers::pi / h);

  // (g * f~)(x, u_a, u_b) on the cube, integrated with the midpoint rule so that the
  // quadrature nodes sit between the transform nodes. In coordinates the group law gives
  // f~((m,1,c)^-1 (n,a,b)) = f(e^{2(u_a - v)} (x - x_m), u_a - v + u_b).
  auto midpoints = [](const Axis& a) {
    std::vector<double> m(a.size() - 1);
    for (std::size_t i = 0; i + 1 < a.size(); ++i) m[i] = 0.5 * (a.nodes[i] + a.nodes[i + 1]);
    return m;
  };
  const std::vector<double> xq = midpoints(xs), vq = midpoints(us);
  const double wq = (xs.nodes[1] - xs.nodes[0]) * h;
  std::vector<cplx> conv(N * N * N);
  kernels::parallel_fill(conv, [&](std::size_t i) {
    const double x = xs.nodes[i / (N * N)], ua = us.nodes[(i / N) % N], ub = us.nodes[i % N];
    double s = 0.0;
    for (double xm : xq)
      for (double v : vq)
        s += kSolvableF(std::exp(2.0 * (ua - v)) * (x - xm), ua - v + ub) * kSolvableG(xm, v);
    return cplx(wq * s);
  });
  // sum over the nu grid of exp(-i nu u_b)
  std::vector<cplx> fold(N);
  for (std::size_t k = 0; k < N; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < nu.size(); ++j) s += nu.weights[j] * std::polar(1.0, -nu.nodes[j] * us.nodes[k]);
    fold[k] = s;
  }

  GroupSampler rng(seed);
  Worst worst;
  for (int p = 0; p < cg.points; ++p) {
    const double xi = rng.uniform(-1.5, 1.5), lambda = rng.uniform(-1.5, 1.5);
    auto kernel = [&](double x, double u) { return std::polar(1.0, -(xi * x + lambda * u)); };
    const cplx lhs = kernels::deterministic_sum<cplx>(N * N * N, [&](std::size_t i) {
      const std::size_t a = i / (N * N), b = (i / N) % N, c = i % N;
      return xs.weights[a] * us.weights[b] * us.weights[c] * kernel(xs.nodes[a], us.nodes[b]) * fold[c] * conv[i];
    });
    const cplx ff = kernels::deterministic_sum<cplx>(N * N, [&](std::size_t i) {
      const double x = xs.nodes[i / N], u = us.nodes[i % N];
      return xs.weights[i / N] * us.weights[i % N] * kernel(x, u) * kSolvableF(std::exp(2.0 * u) * x, u);
    });
    const cplx fg = kernels::deterministic_sum<cplx>(N * N, [&](std::size_t i) {
      const double x = xs.nodes[i / N], u = us.nodes[i % N];
      return xs.weights[i / N] * us.weights[i % N] * kernel(x, u) * kSolvableG(x, u);
    });
    worst.offer(lhs, ff * fg);
  }
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  finalize(r, 5e-2);
  return r;
}

IdentityReport affine_convolution_identity(const ConvolutionGrid& cg, std::uint64_t seed) {
  check_points(cg);
  const auto t0 = Clock::now();
  IdentityReport r = start("affine_convolution", "GA+", 2, cg.descriptor(), seed);
  const Chart kna(ChartKind::GeneralLinearPlus, 2, Ordering::KNA);
  std::vector<Axis> qa = gl_axes(cg);
  for (auto& a : qa)
    if (a.kind == AxisKind::Circle) a = periodic_axis(AxisKind::Circle, "theta", cg.compact_nodes);
  const Nodes Q = materialise(haar_grid(kna, qa));
  const Nodes B = materialise(HaarGrid{Chart(ChartKind::Euclidean, 2), translation_axes(cg)});
  std::vector<Mat> qm(Q.w.size()), qinv(Q.w.size());
  for (std::size_t i = 0; i < qm.size(); ++i) {
    qm[i] = kna.linear_element(Q.x[i]);
    qinv[i] = qm[i].inverse();
  }
  const std::size_t nb = B.w.size();
  std::vector<double> bx(nb), by(nb), g_trans(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    bx[b] = B.x[b][0];
    by[b] = B.x[b][1];
    g_trans[b] = B.w[b] * kAffineG.translation(bx[b], by[b]);
  }

  GroupSampler rng(seed);
  Worst worst;
  for (int p = 0; p < cg.points; ++p) {
    Vec A(2);
    A << rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5);
    const AuxiliaryElement P{A, random_gl_near_identity(rng).matrix(), random_gl_near_identity(rng).matrix()};
    // g * f~ over (B, Q), B in the translation slot of (B, I, Q):
    // (B, I, Q)^-1 (A, X, Y) = (Q^-1 A - Q^-1 B, X, Q^-1 Y), so f_R is read at X Q^-1 A - X Q^-1 B.
    const cplx lhs = kernels::deterministic_sum<cplx>(Q.w.size(), [&](std::size_t q) {
      const AuxiliaryElement e = compose(
          invert(embed_affine(GroupElement::trusted(GroupTag::Affine, qm[q], Vec::Zero(2)))), P);
      const cplx lin = kAffineF.linear(e.X * e.Y) * kAffineG.linear(qm[q]);
      const Vec c = e.X * e.A;
      const Mat M = e.X * qinv[q];
      double s = 0.0;
      for (std::size_t b = 0; b < nb; ++b)
        s += g_trans[b] * kAffineF.translation(c(0) - M(0, 0) * bx[b] - M(0, 1) * by[b],
                                               c(1) - M(1, 0) * bx[b] - M(1, 1) * by[b]);
      return Q.w[q] * lin * s;
    });
    // f~ *_c g over f~'s variables (B', Q'): f~(B', Q', Y) g(A - B', Q'^-1 X)
    const cplx rhs = kernels::deterministic_sum<cplx>(Q.w.size(), [&](std::size_t q) {
      const cplx lin = kAffineF.linear(qm[q] * P.Y) * kAffineG.linear(qinv[q] * P.X);
      const Mat& M = qm[q];
      double s = 0.0;
      for (std::size_t b = 0; b < nb; ++b)
        s += B.w[b] * kAffineF.translation(M(0, 0) * bx[b] + M(0, 1) * by[b], M(1, 0) * bx[b] + M(1, 1) * by[b]) *
             kAffineG.translation(P.A(0) - bx[b], P.A(1) - by[b]);
      return Q.w[q] * lin * s;
    });
    worst.offer(lhs, rhs);
  }
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  finalize(r, 5e-2);
  return r;
}

IdentityReport affine_spectral_identity(const ConvolutionGrid& cg, std::uint64_t seed, bool characters_only) {
  check_points(cg);
  const auto t0 = Clock::now();
  IdentityReport r = start(characters_only ? "affine_character_convolution" : "affine_spectral_convolution", "GA+",
                           2, cg.descriptor(), seed);
  const std::size_t P = static_cast<std::size_t>(cg.points);
  const Chart kna(ChartKind::GeneralLinearPlus, 2, Ordering::KNA);
  const Chart nak(ChartKind::GeneralLinearPlus, 2, Ordering::NAK);
  const Nodes H = materialise(haar_grid(kna, gl_axes(cg)));
  const Nodes C = materialise(HaarGrid{nak, gl_axes(cg)});  // NAK coordinate measure
  const Nodes B = materialise(HaarGrid{Chart(ChartKind::Euclidean, 2), translation_axes(cg)});
  const std::size_t nh = H.w.size(), nb = B.w.size();

  struct Spectral {
    double mu[2], eta, lambda, xi;
    int m;
  };
  GroupSampler rng(seed);
  std::vector<Spectral> s(P);
  for (auto& p : s) {
    p.mu[0] = rng.uniform(-1.0, 1.0);
    p.mu[1] = rng.uniform(-1.0, 1.0);
    p.eta = rng.uniform(-1.0, 1.0);
    p.lambda = characters_only ? 0.0 : rng.uniform(-1.0, 1.0);
    p.xi = characters_only ? 0.0 : rng.uniform(-1.0, 1.0);
    p.m = characters_only ? 0 : static_cast<int>(std::floor(rng.uniform(-2.0, 3.0)));
  }
  auto character = [](const Spectral& p, const double* c) {
    return std::polar(1.0, -(p.eta * c[0] + p.lambda * c[1] + p.xi * c[2] + p.m * c[3]));
  };
  auto translation_character = [&](const Spectral& p, const Vec& A) {
    return std::polar(1.0, -(p.mu[0] * A(0) + p.mu[1] * A(1)));
  };
  auto vec2 = [](const std::vector<double>& x) {
    Vec v(2);
    v << x[0], x[1];
    return v;
  };

  std::vector<Mat> hm(nh);
  for (std::size_t i = 0; i < nh; ++i) hm[i] = kna.linear_element(H.x[i]);
  // translation transform of g
  std::vector<cplx> g_trans(P);
  for (std::size_t k = 0; k < P; ++k)
    g_trans[k] = kernels::serial_sum<cplx>(nb, [&](std::size_t b) {
      const Vec Bv = vec2(B.x[b]);
      return B.w[b] * translation_character(s[k], Bv) * kAffineG.translation(Bv);
    });

  // Transform of the convolution, after X = X' Q and A = A' + B:
  // G_R(mu) sum_Q g_GL(Q) sum_X' Phi(mu, X') chi(X' Q) J(X' Q), where J = a^{2 rho} converts the
  // NAK coordinate measure to Haar measure and Phi(mu, X') = f_GL(X') sum_A' e^{-i mu A'} f_R(X' A').
  std::vector<PointSums> phi(nh);
  kernels::parallel_fill(phi, [&](std::size_t x) {
    PointSums out;
    const cplx fl = kAffineF.linear(hm[x]);
    for (std::size_t b = 0; b < nb; ++b) {
      const Vec Av = vec2(B.x[b]);
      const double fr = kAffineF.translation(hm[x] * Av);
      for (std::size_t k = 0; k < P; ++k) out.v[k] += B.w[b] * translation_character(s[k], Av) * fr;
    }
    for (std::size_t k = 0; k < P; ++k) out.v[k] *= H.w[x] * fl;
    return out;
  });
  // e^{-i eta ut} splits over X' Q, and e^{-i m theta} is a power of the unit vector of the second row.
  auto scale_phase = [&](std::size_t i, std::size_t k) { return std::polar(1.0, -s[k].eta * H.x[i][0]); };
  for (std::size_t x = 0; x < nh; ++x)
    for (std::size_t k = 0; k < P; ++k) phi[x].v[k] *= scale_phase(x, k);
  const PointSums lhs = kernels::deterministic_sum<PointSums>(nh, [&](std::size_t q) {
    PointSums out;
    const Mat& Qm = hm[q];
    double c[4];
    for (std::size_t x = 0; x < nh; ++x) {
      const Mat& X = hm[x];
      const double g10 = X(1, 0) * Qm(0, 0) + X(1, 1) * Qm(1, 0), g11 = X(1, 0) * Qm(0, 1) + X(1, 1) * Qm(1, 1);
      nak_coords_gl2(X(0, 0) * Qm(0, 0) + X(0, 1) * Qm(1, 0), X(0, 0) * Qm(0, 1) + X(0, 1) * Qm(1, 1), g10, g11, c);
      const double J = std::exp(2.0 * c[1]);
      const cplx z = cplx(g11, -g10) / std::hypot(g10, g11);
      const cplx powers[5] = {std::conj(z * z), std::conj(z), 1.0, z, z * z};
      for (std::size_t k = 0; k < P; ++k)
        out.v[k] += phi[x].v[k] * std::polar(J, -(s[k].lambda * c[1] + s[k].xi * c[2])) * powers[s[k].m + 2];
    }
    for (std::size_t k = 0; k < P; ++k) out.v[k] *= H.w[q] * kAffineG.linear(hm[q]) * scale_phase(q, k);
    return out;
  });

  // Product of the transforms, each by direct quadrature in NAK coordinates.
  const std::size_t nc = C.w.size();
  std::vector<Mat> cm(nc);
  for (std::size_t i = 0; i < nc; ++i) cm[i] = nak.linear_element(C.x[i]);
  const PointSums f_hat = kernels::deterministic_sum<PointSums>(nc, [&](std::size_t x) {
    PointSums out;
    const cplx fl = C.w[x] * kAffineF.linear_coords(C.x[x].data());
    for (std::size_t b = 0; b < nb; ++b) {
      const Vec Av = vec2(B.x[b]);
      const double fr = B.w[b] * kAffineF.translation(cm[x] * Av);
      for (std::size_t k = 0; k < P; ++k) out.v[k] += translation_character(s[k], Av) * fr;
    }
    for (std::size_t k = 0; k < P; ++k) out.v[k] *= fl * character(s[k], C.x[x].data());
    return out;
  });
  const PointSums g_lin = kernels::deterministic_sum<PointSums>(nc, [&](std::size_t x) {
    PointSums out;
    const cplx gl = C.w[x] * kAffineG.linear(cm[x]);
    for (std::size_t k = 0; k < P; ++k) out.v[k] = gl * character(s[k], C.x[x].data());
    return out;
  });

  Worst worst;
  for (std::size_t k = 0; k < P; ++k) worst.offer(g_trans[k] * lhs.v[k], f_hat.v[k] * g_trans[k] * g_lin.v[k]);
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  if (characters_only) {
    finalize(r, -1.0);
    r.note = "diagnostic: xi = lambda = 0, m = 0";
  } else {
    finalize(r, 5e-2);
  }
  return r;
}

IdentityReport shift_equivariance(const LevelGrid& grid, const TestFunctionBundle& bundle, const Vec& shift) {
  const auto t0 = Clock::now();
  if (grid.level != Level::GAPlus && grid.level != Level::GA)
    throw ContractViolation("shift_equivariance: level has no translation part");
  if (shift.size() != grid.n) throw ContractViolation("shift_equivariance: shift has the wrong dimension");
  IdentityReport r = start("shift_equivariance", to_string(grid.level), grid.n, grid.descriptor(), 0);
  std::vector<Axis> axes;
  std::vector<const FactorDescriptor*> factors;
  for (int i = 0; i < grid.n; ++i) {
    const std::string label = "A" + std::to_string(i + 1);
    axes.push_back(grid.spatial_axis(AxisKind::Translation, label));
    factors.push_back(&bundle.factor(label));
  }
  auto product = [&](std::span<const double> x, bool shifted) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i) v *= (*factors[i])(x[i] - (shifted ? shift(i) : 0.0));
    return v;
  };
  const GridFunction f = sample(axes, [&](std::span<const double> x) { return product(x, false); });
  const GridFunction fc = sample(axes, [&](std::span<const double> x) { return product(x, true); });
  for (std::size_t d = 0; d < fc.rank(); ++d) require_boundary_decay(fc, d, "shift_equivariance");

  const CompositeTransform T(grid);
  const GridFunction F = T.forward(f), Fc = T.forward(fc);
  const std::vector<double> w = F.weights();
  cplx left = 0.0;
  double right = 0.0, pointwise = 0.0, peak = 0.0;
  std::vector<std::size_t> idx(F.rank(), 0);
  for (std::size_t i = 0; i < F.size(); ++i) {
    double phase = 0.0;
    for (std::size_t d = 0; d < F.rank(); ++d) phase += F.axis(d).nodes[idx[d]] * shift(static_cast<int>(d));
    const cplx expected = std::polar(1.0, -phase) * F[i];
    left += w[i] * Fc[i] * std::conj(expected);
    right += w[i] * std::norm(expected);
    pointwise = std::max(pointwise, std::abs(Fc[i] - expected));
    peak = std::max(peak, std::abs(expected));
    for (std::size_t d = F.rank(); d-- > 0;) {
      if (++idx[d] < F.axis(d).size()) break;
      idx[d] = 0;
    }
  }
  r.left = left;
  r.right = right;
  r.seconds = since(t0);
  finalize(r, 1e-8);
  std::ostringstream os;
  os << "max pointwise deviation / peak = " << pointwise / std::max(peak, 1e-300);
  r.note = os.str();
  return r;
}

ComponentIntegrals gl_full_integrals(const LevelGrid& grid, const GroupFunction& f_plus, const GroupFunction& f_minus) {
  if (!has_minus_component(grid.level)) throw ContractViolation("gl_full_integrals: level has a single component");
  const Chart chart = grid.chart();
  const GridFunction shape(grid.spatial_axes());
  const std::size_t total = shape.size(), dim = chart.dimension();
  const Mat J = reflection(grid.n);
  auto coords = [&](std::size_t i, double* buf) {
    for (std::size_t d = dim; d-- > 0;) {
      buf[d] = shape.axis(d).nodes[i % shape.axis(d).size()];
      i /= shape.axis(d).size();
    }
  };
  auto plus_term = [&](std::size_t i) {
    double buf[16];
    coords(i, buf);
    return shape.weight(i) * std::norm(f_plus(chart.element(std::span<const double>(buf, dim))));
  };
  auto minus_term = [&](std::size_t i) {
    double buf[16];
    coords(i, buf);
    const GroupElement h = chart.element(std::span<const double>(buf, dim));
    const GroupElement m = h.tag() == GroupTag::Affine
                               ? GroupElement::trusted(GroupTag::Affine, J * h.matrix(), h.translation())
                               : gl_minus_transport_inverse(h);
    return shape.weight(i) * std::norm(f_minus(m));
  };
  std::vector<double> terms(2 * total);
  kernels::parallel_fill(terms, [&](std::size_t i) { return i < total ? plus_term(i) : minus_term(i - total); });
  ComponentIntegrals out;
  out.plus = kernels::deterministic_sum<double>(total, [&](std::size_t i) { return terms[i]; });
  out.minus = kernels::deterministic_sum<double>(total, [&](std::size_t i) { return terms[total + i]; });
  // one quadrature over the disjoint union
  out.total = kernels::deterministic_sum<double>(2 * total, [&](std::size_t i) { return terms[i]; });
  return out;
}

IdentityReport component_doubling(const LevelGrid& grid, const TestFunctionBundle& bundle, std::size_t max_nodes) {
  const auto t0 = Clock::now();
  LevelGrid g = grid;
  // odd counts keep a node at the centre of each axis
  auto cap = [&](int count, int compact) {
    g = grid;
    for (AxisGrid* a : {&g.translation, &g.scale, &g.diagonal, &g.nilpotent}) a->count = std::min(a->count, count);
    g.compact.nodes = std::min(g.compact.nodes, compact);
    const int beta = g.compact.beta_nodes > 0 ? g.compact.beta_nodes : g.compact.band_limit + 1;
    g.compact.beta_nodes = std::min(beta, compact);
    double total = 1.0;
    for (const Axis& a : g.spatial_axes()) total *= static_cast<double>(a.size());
    return total;
  };
  const double budget = static_cast<double>(max_nodes);
  int count = 63;
  while (count > 3 && cap(count, count) > budget) count -= 2;
  int compact = count;
  while (compact > 1 && cap(count, compact) > budget) --compact;
  cap(count, compact);
  IdentityReport r = start("component_doubling", to_string(grid.level), grid.n, g.descriptor(), 0);
  const GroupFunction fp = bundle.group_function();
  const Mat J = reflection(grid.n);
  // symmetric extension: f_minus = f_plus after the transport
  const GroupFunction fm = [&](const GroupElement& m) {
    if (m.tag() == GroupTag::Affine)
      return fp(GroupElement::trusted(GroupTag::Affine, J * m.matrix(), m.translation()));
    return fp(gl_minus_transport(m));
  };
  const ComponentIntegrals c = gl_full_integrals(g, fp, fm);
  r.left = c.total;
  r.right = 2.0 * c.plus;
  r.seconds = since(t0);
  finalize(r, 1e-12);
  std::ostringstream os;
  os.precision(17);
  os << "total/plus = " << c.total / std::max(c.plus, 1e-300);
  r.note = os.str();
  return r;
}

IdentityReport order_swap_identity(int count, double range, int compact_nodes) {
  const auto t0 = Clock::now();
  std::ostringstream gd;
  gd << count << "pts[" << -range << "," << range << "] K" << compact_nodes;
  IdentityReport r = start("order_swap", "SL", 2, gd.str(), 0);
  const Axis us = uniform_axis(AxisKind::Diagonal, "u1", count, -range, range);
  const Axis xs = uniform_axis(AxisKind::Nilpotent, "x12", count, -range, range);
  const Axis ks = periodic_axis(AxisKind::Circle, "theta", compact_nodes);
  constexpr double c = 2.5;
  auto f = [](const Mat& g) {
    Mat k, n;
    Vec a;
    detail::kna(g, k, n, a);
    // the g(0, 0) term breaks the u -> -u symmetry that would make the two sums agree node by node
    return std::exp(-c * (g.squaredNorm() - 2.0)) *
           (1.0 + 0.5 * std::cos(std::atan2(k(1, 0), k(0, 0))) + 0.3 * gauss(g(0, 0) + 0.5 * g(1, 0), 0.7, 0.5));
  };
  const std::size_t nx = xs.size(), nk = ks.size(), total = us.size() * nx * nk;
  auto node = [&](std::size_t i, Mat& n, Vec& a, Mat& k, double& w) {
    const std::size_t iu = i / (nx * nk), ix = (i / nk) % nx, ik = i % nk;
    n = unipotent2(xs.nodes[ix]);
    a = diagonal2(us.nodes[iu]);
    double th = ks.nodes[ik];
    k = rotation_from_angles(2, std::span<const double>(&th, 1));
    w = us.weights[iu] * xs.weights[ix] * ks.weights[ik];
  };
  const double lhs = kernels::deterministic_sum<double>(total, [&](std::size_t i) {
    Mat n, k;
    Vec a;
    double w;
    node(i, n, a, k, w);
    return w * f(n * a.asDiagonal() * k) / modulus_half_sum(a);
  });
  const double rhs = kernels::deterministic_sum<double>(total, [&](std::size_t i) {
    Mat n, k;
    Vec a;
    double w;
    node(i, n, a, k, w);
    return w * f(k * a.asDiagonal() * n) * modulus_half_sum(a);
  });
  r.left = lhs;
  r.right = rhs;
  r.seconds = since(t0);
  finalize(r, 1e-6);
  return r;
}

double conjugation_jacobian_fd(const Vec& a, const Mat& n, double step) {
  const int m = static_cast<int>(n.rows());
  const int d = nilpotent_dim(m);
  std::vector<double> x0(d), xp(d), xm(d), yp(d), ym(d);
  unipotent_coords(n, x0);
  const Vec ainv = a.cwiseInverse();
  auto conj = [&](const std::vector<double>& x, std::vector<double>& y) {
    const Mat u = unipotent_from_coords(m, x);
    unipotent_coords(Mat(a.asDiagonal() * u * ainv.asDiagonal()), y);
  };
  Eigen::MatrixXd jac(d, d);
  for (int j = 0; j < d; ++j) {
    xp = x0;
    xm = x0;
    xp[j] += step;
    xm[j] -= step;
    conj(xp, yp);
    conj(xm, ym);
    for (int i = 0; i < d; ++i) jac(i, j) = (yp[i] - ym[i]) / (2.0 * step);
  }
  return jac.determinant();
}

IdentityReport modulus_check(int n, int samples, std::uint64_t seed) {
  const auto t0 = Clock::now();
  IdentityReport r = start("modulus_jacobian", "S", n, std::to_string(samples) + " samples", seed);
  GroupSampler rng(seed);
  Worst worst;
  for (int s = 0; s < samples; ++s) {
    const Vec a = rng.positive_diagonal(n).matrix().diagonal();
    const Mat u = rng.unipotent(n).matrix();
    worst.offer(conjugation_jacobian_fd(a, u), modulus_half_sum(a));
  }
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  finalize(r, 1e-10);
  return r;
}

IdentityReport haar_invariance(RuleFactor factor, int n, int count, std::uint64_t seed) {
  const auto t0 = Clock::now();
  IdentityReport r = start("haar_invariance_" + to_string(factor), "K", n, std::to_string(count) + "pts", seed);
  GroupSampler rng(seed);
  RuleParams params{count, -8.0, 8.0, 1, 0};
  GroupFunction f;
  std::vector<GroupElement> moves;
  double tolerance = 1e-8;
  auto log_gauss = [](const Vec& u) { return std::exp(-0.5 * (u.array() - 0.1).square().sum() / 0.49); };
  switch (factor) {
    case RuleFactor::K_SO2:
      if (n != 2) throw UnsupportedFeature("haar_invariance: SO(2) rule needs n = 2");
      tolerance = 1e-12;
      f = [](const GroupElement& k) {
        const double th = std::atan2(k.matrix()(1, 0), k.matrix()(0, 0));
        return cplx(1.0 + std::cos(th) + 0.3 * std::sin(2.0 * th));
      };
      for (int i = 0; i < 5; ++i) moves.push_back(rng.rotation(2));
      break;
    case RuleFactor::K_SO3:
      if (n != 3) throw UnsupportedFeature("haar_invariance: SO(3) rule needs n = 3");
      tolerance = 1e-10;
      f = [](const GroupElement& g) {
        const Mat& k = g.matrix();
        return cplx(1.0 + k(2, 2) + 0.5 * k(0, 1) * k(1, 0), 0.3 * k(0, 2));
      };
      for (int i = 0; i < 5; ++i) moves.push_back(rng.rotation(3));
      break;
    case RuleFactor::A_diag:
      params.dim = n - 1;
      f = [&](const GroupElement& g) {
        Vec u(n);
        for (int i = 0; i < n; ++i) u(i) = std::log(g.matrix()(i, i));
        return cplx(log_gauss(u.head(n - 1)));
      };
      for (int i = 0; i < 5; ++i) moves.push_back(rng.positive_diagonal(n, 0.3));
      break;
    case RuleFactor::N_unipotent:
      params.dim = nilpotent_dim(n);
      f = [&](const GroupElement& g) {
        std::vector<double> x(nilpotent_dim(n));
        unipotent_coords(g.matrix(), x);
        double s = 0.0;
        for (double v : x) s += v * v;
        return cplx(std::exp(-0.5 * s));
      };
      for (int i = 0; i < 5; ++i) moves.push_back(rng.unipotent(n, 0.3));
      break;
    case RuleFactor::EuclideanRn:
      params.dim = n;
      f = [](const GroupElement& g) { return cplx(std::exp(-0.5 * g.translation().squaredNorm())); };
      for (int i = 0; i < 5; ++i) {
        Vec b(n);
        for (int j = 0; j < n; ++j) b(j) = rng.uniform(-0.5, 0.5);
        moves.push_back(GroupElement::trusted(GroupTag::Affine, Mat::Identity(n, n), b));
      }
      break;
    case RuleFactor::ScaleRplus:
      f = [](const GroupElement& g) {
        const double u = std::log(g.matrix()(0, 0));
        return cplx(std::exp(-0.5 * (u - 0.1) * (u - 0.1) / 0.49));
      };
      for (int i = 0; i < 5; ++i)
        moves.push_back(
            GroupElement::trusted(GroupTag::PositiveDiagonal, Mat::Identity(n, n) * std::exp(rng.uniform(-0.5, 0.5))));
      break;
  }
  const QuadratureRule rule = build_rule(factor, params);
  const ProductRule pr({rule});
  const cplx base = integrate([&](std::span<const double> x) { return f(rule_element(rule, n, x)); }, pr);
  Worst worst;
  for (const auto& h : moves)
    for (Action act : {Action::Left, Action::Right}) {
      const cplx moved = integrate(
          [&](std::span<const double> x) {
            const GroupElement g = rule_element(rule, n, x);
            return f(act == Action::Left ? compose(h, g) : compose(g, h));
          },
          pr);
      worst.offer(moved, base);
    }
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  finalize(r, tolerance);
  return r;
}

namespace {

// k n a with small n and a, so that the test functions stay well above underflow
Mat modest_sl(GroupSampler& rng, int n) {
  return rng.rotation(n).matrix() * rng.unipotent(n, 0.3).matrix() * rng.positive_diagonal(n, 0.2).matrix();
}

Mat modest_gl(GroupSampler& rng, int n) { return std::exp(0.1 * rng.normal()) * modest_sl(rng, n); }

}  // namespace

IdentityReport extension_invariance(int n, int samples, std::uint64_t seed) {
  const auto t0 = Clock::now();
  IdentityReport r = start("extension_invariance", "H+", n, std::to_string(samples) + " samples", seed);
  GroupSampler rng(seed);
  Worst worst;

  const AuxiliaryFunction ft = tilde_extend(make_bundle("gaussian", Level::GAPlus, n, seed).group_function());
  const GroupFunction fs_group = make_bundle("gaussian", Level::S, n, seed).group_function();
  const SolvableAuxFunction fs = tilde_extend_solvable([&](const Mat& u, const Vec& a) {
    return fs_group(GroupElement::trusted(GroupTag::SpecialLinear, u * a.asDiagonal()));
  });
  const UpsilonFunction fu = upsilon_extend(make_bundle("gaussian", Level::SL, n, seed).group_function());

  for (int s = 0; s < samples; ++s) {
    Vec A(n);
    for (int i = 0; i < n; ++i) A(i) = 0.5 * rng.normal();
    const Mat X = modest_gl(rng, n), Y = modest_gl(rng, n), T = modest_gl(rng, n);
    worst.offer(ft(AuxiliaryElement{T * A, X * T.inverse(), T * Y}), ft(AuxiliaryElement{A, X, Y}));

    const Mat u = rng.unipotent(n, 0.5).matrix();
    const Vec a = rng.positive_diagonal(n, 0.3).matrix().diagonal();
    const Vec b = rng.positive_diagonal(n, 0.3).matrix().diagonal();
    const Vec sd = rng.positive_diagonal(n, 0.3).matrix().diagonal();
    worst.offer(fs(SolvableAuxElement{conjugate_by_diagonal(u, sd), a.cwiseQuotient(sd), b.cwiseProduct(sd)}),
                fs(SolvableAuxElement{u, a, b}));

    const GroupElement g = GroupElement::trusted(GroupTag::SpecialLinear, modest_sl(rng, n));
    const GroupElement h = rng.rotation(n), k1 = rng.rotation(n);
    const GroupElement gh = GroupElement::trusted(GroupTag::SpecialLinear, g.matrix() * h.matrix());
    worst.offer(fu(gh, compose(invert(h), k1)), fu(g, k1));
  }
  r.left = worst.left;
  r.right = worst.right;
  r.seconds = since(t0);
  finalize(r, 1e-12);
  return r;
}

IdentityReport zero_function_sanity(const LevelGrid& grid) {
  const auto t0 = Clock::now();
  IdentityReport r = has_minus_component(grid.level)
                         ? plancherel_residual(grid, make_bundle_pair("zero", grid.level, grid.n, 0))
                         : plancherel_residual(grid, make_bundle("zero", grid.level, grid.n, 0));
  r.identity = "zero_function";
  r.seconds = since(t0);
  finalize(r, 0.0);
  return r;
}

}  // namespace gaf
