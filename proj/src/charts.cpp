#include "gaf/charts.hpp"

#include <cmath>
#include <numbers>

#include "gaf/errors.hpp"

namespace gaf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0) y += kTwoPi;
  if (y >= kTwoPi) y = 0.0;
  return y;
}

}  // namespace

int nilpotent_dim(int m) { return m * (m - 1) / 2; }

int compact_dim(int n) {
  if (n == 2) return 1;
  if (n == 3) return 3;
  throw UnsupportedFeature("compact factor SO(" + std::to_string(n) + ") is not supported");
}

Mat unipotent_from_coords(int m, std::span<const double> x) {
  if (static_cast<int>(x.size()) != nilpotent_dim(m)) throw ContractViolation("unipotent_from_coords: wrong size");
  Mat u = Mat::Identity(m, m);
  std::size_t c = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) u(i, j) = x[c++];
  return u;
}

void unipotent_coords(const Mat& u, std::span<double> out) {
  const int m = static_cast<int>(u.rows());
  if (static_cast<int>(out.size()) != nilpotent_dim(m)) throw ContractViolation("unipotent_coords: wrong size");
  std::size_t c = 0;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) out[c++] = u(i, j);
}

Vec diagonal_from_log(int n, std::span<const double> u) {
  if (static_cast<int>(u.size()) != n - 1) throw ContractViolation("diagonal_from_log: wrong size");
  Vec a(n);
  double s = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    a(i) = std::exp(u[i]);
    s += u[i];
  }
  a(n - 1) = std::exp(-s);
  return a;
}

void diagonal_log(const Vec& a, std::span<double> out) {
  const int n = static_cast<int>(a.size());
  if (static_cast<int>(out.size()) != n - 1) throw ContractViolation("diagonal_log: wrong size");
  for (int i = 0; i < n; ++i)
    if (!(a(i) > 0)) throw DomainError("diagonal_log: non-positive entry");
  for (int i = 0; i < n - 1; ++i) out[i] = std::log(a(i));
}

void nak_coords_gl2(double g00, double g01, double g10, double g11, double out[4]) {
  const double t = std::sqrt(g00 * g11 - g01 * g10);
  const double s00 = g00 / t, s01 = g01 / t, s10 = g10 / t, s11 = g11 / t;
  const double r = std::hypot(s10, s11);
  out[0] = std::log(t);
  out[1] = -std::log(r);
  out[2] = (s00 * s10 + s01 * s11) / (r * r);
  out[3] = wrap_angle(std::atan2(s10, s11));
}

Mat rotation_from_angles(int n, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != compact_dim(n)) throw ContractViolation("rotation_from_angles: wrong size");
  if (n == 2) {
    const double c = std::cos(angles[0]), s = std::sin(angles[0]);
    Mat k(2, 2);
    k << c, -s, s, c;
    return k;
  }
  const double ca = std::cos(angles[0]), sa = std::sin(angles[0]);
  const double cb = std::cos(angles[1]), sb = std::sin(angles[1]);
  const double cg = std::cos(angles[2]), sg = std::sin(angles[2]);
  Mat k(3, 3);
  k << ca * cb * cg - sa * sg, -ca * cb * sg - sa * cg, ca * sb,
       sa * cb * cg + ca * sg, -sa * cb * sg + ca * cg, sa * sb,
       -sb * cg, sb * sg, cb;
  return k;
}

void rotation_angles(const Mat& k, std::span<double> out) {
  const int n = static_cast<int>(k.rows());
  if (static_cast<int>(out.size()) != compact_dim(n)) throw ContractViolation("rotation_angles: wrong size");
  if (n == 2) {
    out[0] = wrap_angle(std::atan2(k(1, 0), k(0, 0)));
    return;
  }
  const double sb = std::hypot(k(0, 2), k(1, 2));
  const double beta = std::atan2(sb, k(2, 2));
  if (sb > 1e-12) {
    out[0] = wrap_angle(std::atan2(k(1, 2), k(0, 2)));
    out[1] = beta;
    out[2] = wrap_angle(std::atan2(k(2, 1), -k(2, 0)));
  } else if (k(2, 2) > 0) {
    out[0] = wrap_angle(std::atan2(k(1, 0), k(0, 0)));
    out[1] = 0.0;
    out[2] = 0.0;
  } else {
    out[0] = wrap_angle(std::atan2(-k(1, 0), -k(0, 0)));
    out[1] = std::numbers::pi;
    out[2] = 0.0;
  }
}

std::string to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::Euclidean: return "euclidean";
    case ChartKind::Nilpotent: return "nilpotent";
    case ChartKind::Solvable: return "solvable";
    case ChartKind::SpecialLinear: return "special_linear";
    case ChartKind::GeneralLinearPlus: return "general_linear_plus";
    case ChartKind::AffinePlus: return "affine_plus";
  }
  return "?";
}

Chart::Chart(ChartKind kind, int n, Ordering ordering) : kind_(kind), n_(n), ordering_(ordering) {
  if (n < 2 || n > 3) throw UnsupportedFeature("chart: n must be 2 or 3");
  if (ordering != Ordering::KNA && ordering != Ordering::NAK)
    throw ContractViolation("chart: only KNA and NAK coordinates are provided");
  const bool linear = kind == ChartKind::SpecialLinear || kind == ChartKind::GeneralLinearPlus ||
                      kind == ChartKind::AffinePlus;
  translation_ = (kind == ChartKind::Euclidean || kind == ChartKind::AffinePlus) ? n : 0;
  scale_ = (kind == ChartKind::GeneralLinearPlus || kind == ChartKind::AffinePlus) ? 1 : 0;
  diagonal_ = (kind == ChartKind::Solvable || linear) ? n - 1 : 0;
  nil_size_ = kind == ChartKind::Nilpotent ? n + 1 : n;
  nilpotent_ = (kind == ChartKind::Nilpotent || kind == ChartKind::Solvable || linear) ? nilpotent_dim(nil_size_) : 0;
  compact_ = linear ? compact_dim(n) : 0;

  for (int i = 0; i < translation_; ++i) {
    kinds_.push_back(AxisKind::Translation);
    labels_.push_back("A" + std::to_string(i + 1));
  }
  if (scale_) {
    kinds_.push_back(AxisKind::Scale);
    labels_.push_back("ut");
  }
  for (int i = 0; i < diagonal_; ++i) {
    kinds_.push_back(AxisKind::Diagonal);
    labels_.push_back("u" + std::to_string(i + 1));
  }
  for (int i = 0; i < nil_size_; ++i)
    for (int j = i + 1; j < nil_size_ && nilpotent_; ++j) {
      kinds_.push_back(AxisKind::Nilpotent);
      labels_.push_back("x" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  if (compact_ == 1) {
    kinds_.push_back(AxisKind::Circle);
    labels_.push_back("theta");
  } else if (compact_ == 3) {
    kinds_.insert(kinds_.end(), {AxisKind::EulerAlpha, AxisKind::EulerBeta, AxisKind::EulerGamma});
    labels_.insert(labels_.end(), {"alpha", "beta", "gamma"});
  }
}

GroupTag Chart::tag() const {
  switch (kind_) {
    case ChartKind::Euclidean:
    case ChartKind::AffinePlus: return GroupTag::Affine;
    case ChartKind::Nilpotent: return GroupTag::Unipotent;
    case ChartKind::Solvable:
    case ChartKind::SpecialLinear: return GroupTag::SpecialLinear;
    case ChartKind::GeneralLinearPlus: return GroupTag::GeneralLinearPlus;
  }
  return GroupTag::Affine;
}

Mat Chart::linear_element(std::span<const double> c) const {
  std::size_t p = static_cast<std::size_t>(translation_);
  double t = 1.0;
  if (scale_) t = std::exp(c[p++]);
  Vec a = Vec::Ones(n_);
  if (diagonal_) {
    a = diagonal_from_log(n_, c.subspan(p, diagonal_));
    p += diagonal_;
  }
  Mat nn = Mat::Identity(nil_size_, nil_size_);
  if (nilpotent_) {
    nn = unipotent_from_coords(nil_size_, c.subspan(p, nilpotent_));
    p += nilpotent_;
  }
  if (kind_ == ChartKind::Nilpotent) return nn;
  if (kind_ == ChartKind::Solvable) return nn * a.asDiagonal();
  Mat k = rotation_from_angles(n_, c.subspan(p, compact_));
  Mat g = ordering_ == Ordering::KNA ? Mat(k * nn * a.asDiagonal()) : Mat(nn * a.asDiagonal() * k);
  return t * g;
}

GroupElement Chart::element(std::span<const double> c) const {
  if (c.size() != dimension()) throw ContractViolation("chart: coordinate count mismatch");
  if (kind_ == ChartKind::Euclidean) {
    Vec b(n_);
    for (int i = 0; i < n_; ++i) b(i) = c[i];
    return GroupElement::trusted(GroupTag::Affine, Mat::Identity(n_, n_), b);
  }
  Mat g = linear_element(c);
  if (kind_ == ChartKind::AffinePlus) {
    Vec b(n_);
    for (int i = 0; i < n_; ++i) b(i) = c[i];
    return GroupElement::trusted(GroupTag::Affine, g, b);
  }
  return GroupElement::trusted(tag(), g);
}

void Chart::linear_coords(const Mat& g, std::span<double> out) const {
  std::size_t p = static_cast<std::size_t>(translation_);
  Mat s = g;
  if (scale_) {
    double d = g.determinant();
    if (!(d > 0)) throw DomainError("chart: det <= 0");
    double t = std::pow(d, 1.0 / n_);
    s = g / t;
    out[p++] = std::log(t);
  }
  Mat nn, k;
  Vec a;
  if (kind_ == ChartKind::Nilpotent) {
    unipotent_coords(g, out.subspan(p, nilpotent_));
    return;
  }
  if (kind_ == ChartKind::Solvable) {
    a = s.diagonal();
    nn = s;
    for (int j = 0; j < n_; ++j) nn.col(j) /= a(j);
  } else if (ordering_ == Ordering::KNA) {
    detail::kna(s, k, nn, a);
  } else {
    detail::nak(s, nn, a, k);
  }
  diagonal_log(a, out.subspan(p, diagonal_));
  p += diagonal_;
  unipotent_coords(nn, out.subspan(p, nilpotent_));
  p += nilpotent_;
  if (compact_) rotation_angles(k, out.subspan(p, compact_));
}

void Chart::coords(const GroupElement& g, std::span<double> out) const {
  if (out.size() != dimension()) throw ContractViolation("chart: coordinate count mismatch");
  if (g.tag() != tag()) throw ContractViolation("chart: element tag does not match chart");
  if (kind_ == ChartKind::Euclidean || kind_ == ChartKind::AffinePlus) {
    for (int i = 0; i < n_; ++i) out[i] = g.translation()(i);
    if (kind_ == ChartKind::Euclidean) return;
  }
  linear_coords(g.matrix(), out);
}

}  // namespace gaf
