#pragma once

// Reference computations that share no code with the library.

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Matrix = Eigen::MatrixXd;
using cplx = std::complex<double>;

// g = Q R by Householder reflections, then signs fixed so diag(R) > 0.
inline void householder_qr(const Matrix& g, Matrix& q, Matrix& r) {
  const int n = static_cast<int>(g.rows());
  r = g;
  q = Matrix::Identity(n, n);
  for (int j = 0; j < n - 1; ++j) {
    Eigen::VectorXd x = r.col(j).tail(n - j);
    const double alpha = (x(0) > 0 ? -1.0 : 1.0) * x.norm();
    Eigen::VectorXd v = x;
    v(0) -= alpha;
    const double vn = v.squaredNorm();
    if (vn == 0.0) continue;
    Matrix h = Matrix::Identity(n, n);
    h.bottomRightCorner(n - j, n - j) -= 2.0 * v * v.transpose() / vn;
    r = h * r;
    q = q * h;
  }
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) {
      r.row(i) *= -1.0;
      q.col(i) *= -1.0;
    }
}

// g = k n a with n unipotent upper, a positive diagonal.
inline void kna(const Matrix& g, Matrix& k, Matrix& n, Eigen::VectorXd& a) {
  Matrix r;
  householder_qr(g, k, r);
  a = r.diagonal();
  n = r * a.cwiseInverse().asDiagonal();
}

// g = n a k: factor g^-1 = k' r', so g = r'^-1 k'^T.
inline void nak(const Matrix& g, Matrix& n, Eigen::VectorXd& a, Matrix& k) {
  Matrix kp, rp;
  householder_qr(g.inverse(), kp, rp);
  const Matrix upper = rp.inverse();
  a = upper.diagonal();
  n = upper * a.cwiseInverse().asDiagonal();
  k = kp.transpose();
}

inline double factorial(int m) { return std::tgamma(m + 1.0); }

// d^l_{m m'}(beta) from the explicit sum, row m, column m'.
inline double wigner_d(int l, int m, int mp, double beta) {
  const double c = std::cos(beta / 2), s = std::sin(beta / 2);
  const double pre = std::sqrt(factorial(l + m) * factorial(l - m) * factorial(l + mp) * factorial(l - mp));
  double acc = 0.0;
  for (int k = 0; k <= 2 * l; ++k) {
    const int a = l + mp - k, b = k, cc = m - mp + k, d = l - m - k;
    if (a < 0 || cc < 0 || d < 0) continue;
    const double sign = ((m - mp + k) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * pre / (factorial(a) * factorial(b) * factorial(cc) * factorial(d)) *
           std::pow(c, 2 * l + mp - m - 2 * k) * std::pow(s, m - mp + 2 * k);
  }
  return acc;
}

// Central-difference Jacobian determinant of x -> coords(a u(x) a^-1) on strictly upper entries.
inline double conjugation_jacobian(const Eigen::VectorXd& a, const Matrix& u, double h) {
  const int m = static_cast<int>(u.rows());
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) idx.emplace_back(i, j);
  const int d = static_cast<int>(idx.size());
  auto map = [&](const Matrix& x) { return Matrix(a.asDiagonal() * x * a.cwiseInverse().asDiagonal()); };
  Matrix jac(d, d);
  for (int c = 0; c < d; ++c) {
    Matrix up = u, um = u;
    up(idx[c].first, idx[c].second) += h;
    um(idx[c].first, idx[c].second) -= h;
    const Matrix fp = map(up), fm = map(um);
    for (int r = 0; r < d; ++r)
      jac(r, c) = (fp(idx[r].first, idx[r].second) - fm(idx[r].first, idx[r].second)) / (2 * h);
  }
  return jac.determinant();
}

inline double modulus(const Eigen::VectorXd& a) {
  double p = 1.0;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j) p *= a(i) / a(j);
  return p;
}

// Composite trapezoid nodes and weights on [lo, hi].
struct Trapezoid {
  std::vector<double> x, w;
  Trapezoid(int count, double lo, double hi) {
    const double h = (hi - lo) / (count - 1);
    for (int i = 0; i < count; ++i) {
      x.push_back(lo + i * h);
      w.push_back((i == 0 || i == count - 1) ? h / 2 : h);
    }
  }
};

inline Matrix rot2(double t) {
  Matrix k(2, 2);
  k << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return k;
}

struct Affine2 {
  Eigen::Vector2d b;
  Eigen::Matrix2d h;
};

// GA+(2) KNA chart: (A1, A2, ut, u1, x12, theta) -> (A, e^ut k(theta) n(x12) diag(e^u1, e^-u1))
inline Affine2 ga2_kna_point(const double* c) {
  Eigen::Matrix2d n;
  n << 1.0, c[4], 0.0, 1.0;
  const Eigen::Matrix2d a = Eigen::Vector2d(std::exp(c[3]), std::exp(-c[3])).asDiagonal();
  return {Eigen::Vector2d(c[0], c[1]), std::exp(c[2]) * Eigen::Matrix2d(rot2(c[5])) * n * a};
}

// sum_Y w_Y f(Y^-1 X) g(Y) over the product of the trapezoid nodes (translation x2, log x2,
// nilpotent) and `angles` equispaced angles, X = (a, x). (b, h)^-1 (a, g) = (h^-1 (a - b), h^-1 g).
template <class F, class G>
cplx ga2_convolution(F&& f, G&& g, const Eigen::Vector2d& a, const Eigen::Matrix2d& x, const Trapezoid& trans,
                     const Trapezoid& logs, const Trapezoid& nil, int angles) {
  cplx acc = 0.0;
  for (std::size_t i0 = 0; i0 < trans.x.size(); ++i0)
    for (std::size_t i1 = 0; i1 < trans.x.size(); ++i1)
      for (std::size_t i2 = 0; i2 < logs.x.size(); ++i2)
        for (std::size_t i3 = 0; i3 < logs.x.size(); ++i3)
          for (std::size_t i4 = 0; i4 < nil.x.size(); ++i4)
            for (int i5 = 0; i5 < angles; ++i5) {
              const double c[6] = {trans.x[i0], trans.x[i1], logs.x[i2], logs.x[i3], nil.x[i4],
                                   2.0 * std::numbers::pi * i5 / angles};
              const double w = trans.w[i0] * trans.w[i1] * logs.w[i2] * logs.w[i3] * nil.w[i4] / angles;
              const Affine2 y = ga2_kna_point(c);
              const Eigen::Matrix2d hi = y.h.inverse();
              acc += w * f(Eigen::Vector2d(hi * (a - y.b)), Eigen::Matrix2d(hi * x)) * g(y.b, y.h);
            }
  return acc;
}

// int exp(-(x - c)^2 / s^2) dx = s sqrt(pi), the squared norm of a unit-width Gaussian exp(-(x-c)^2/(2 s^2)).
inline double gaussian_norm2(double s) { return s * std::sqrt(std::numbers::pi); }

}  // namespace oracle
