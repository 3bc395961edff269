#include "gaf/group.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gaf/errors.hpp"

namespace gaf {

ConfigurationError::ConfigurationError(std::vector<std::string> issues)
    : std::runtime_error([&] {
        std::ostringstream os;
        os << "invalid configuration:";
        for (const auto& s : issues) os << "\n  - " << s;
        return os.str();
      }()),
      issues_(std::move(issues)) {}

namespace {

constexpr double kDetTol = 1e-12;
constexpr double kOrthoTol = 1e-12;

void require_square(const Mat& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1 || m.rows() > kMaxDim) {
    throw ContractViolation(std::string(what) + ": matrix must be square with size in [1, 4]");
  }
}

bool all_finite(const Mat& m) { return m.allFinite(); }

double det_scale(const Mat& m) {
  // determinant tolerance relative to the natural size of det
  double s = 1.0;
  for (int j = 0; j < m.cols(); ++j) s *= std::max(1.0, m.col(j).norm());
  return s;
}

}  // namespace

std::string_view to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::Rotation: return "Rotation";
    case GroupTag::PositiveDiagonal: return "PositiveDiagonal";
    case GroupTag::Unipotent: return "Unipotent";
    case GroupTag::SpecialLinear: return "SpecialLinear";
    case GroupTag::GeneralLinearPlus: return "GeneralLinearPlus";
    case GroupTag::GeneralLinearMinus: return "GeneralLinearMinus";
    case GroupTag::Affine: return "Affine";
  }
  return "?";
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::KNA: return "KNA";
    case Ordering::NAK: return "NAK";
    case Ordering::ANK: return "ANK";
    case Ordering::KAN: return "KAN";
  }
  return "?";
}

Mat reflection(int n) {
  Mat j = Mat::Identity(n, n);
  j(0, 0) = -1.0;
  return j;
}

GroupElement GroupElement::rotation(const Mat& k) {
  require_square(k, "rotation");
  if (!all_finite(k)) throw DomainError("rotation: non-finite entries");
  const int n = static_cast<int>(k.rows());
  double defect = (k.transpose() * k - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > kOrthoTol * 10) throw DomainError("rotation: matrix is not orthogonal");
  if (std::abs(k.determinant() - 1.0) > kDetTol * 10) throw DomainError("rotation: det != 1");
  return GroupElement(GroupTag::Rotation, k, Vec());
}

GroupElement GroupElement::positive_diagonal(const Vec& d) {
  const int n = static_cast<int>(d.size());
  if (n < 1 || n > kMaxDim) throw ContractViolation("positive_diagonal: size must be in [1, 4]");
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (!(d(i) > 0.0) || !std::isfinite(d(i))) throw DomainError("positive_diagonal: entries must be positive");
    m(i, i) = d(i);
  }
  return GroupElement(GroupTag::PositiveDiagonal, m, Vec());
}

GroupElement GroupElement::unipotent(const Mat& u) {
  require_square(u, "unipotent");
  if (!all_finite(u)) throw DomainError("unipotent: non-finite entries");
  for (int i = 0; i < u.rows(); ++i) {
    if (u(i, i) != 1.0) throw DomainError("unipotent: diagonal must be exactly 1");
    for (int j = 0; j < i; ++j)
      if (u(i, j) != 0.0) throw DomainError("unipotent: entries below the diagonal must be 0");
  }
  return GroupElement(GroupTag::Unipotent, u, Vec());
}

GroupElement GroupElement::special_linear(const Mat& g) {
  require_square(g, "special_linear");
  if (!all_finite(g)) throw DomainError("special_linear: non-finite entries");
  if (std::abs(g.determinant() - 1.0) > kDetTol * det_scale(g)) throw DomainError("special_linear: det != 1");
  return GroupElement(GroupTag::SpecialLinear, g, Vec());
}

GroupElement GroupElement::general_linear(const Mat& g) {
  require_square(g, "general_linear");
  if (!all_finite(g)) throw DomainError("general_linear: non-finite entries");
  double d = g.determinant();
  if (d == 0.0 || !std::isfinite(d)) throw DomainError("general_linear: singular matrix");
  return GroupElement(d > 0 ? GroupTag::GeneralLinearPlus : GroupTag::GeneralLinearMinus, g, Vec());
}

GroupElement GroupElement::affine(const Vec& translation, const Mat& linear) {
  require_square(linear, "affine");
  if (translation.size() != linear.rows()) throw ContractViolation("affine: translation size != matrix size");
  if (!all_finite(linear) || !translation.allFinite()) throw DomainError("affine: non-finite entries");
  double d = linear.determinant();
  if (d == 0.0 || !std::isfinite(d)) throw DomainError("affine: singular linear part");
  return GroupElement(GroupTag::Affine, linear, translation);
}

GroupElement GroupElement::identity(GroupTag tag, int n) {
  if (n < 1 || n > kMaxDim) throw ContractViolation("identity: size must be in [1, 4]");
  if (tag == GroupTag::GeneralLinearMinus) return GroupElement(tag, reflection(n), Vec());
  Vec t = tag == GroupTag::Affine ? Vec(Vec::Zero(n)) : Vec();
  return GroupElement(tag, Mat::Identity(n, n), t);
}

GroupElement GroupElement::trusted(GroupTag tag, const Mat& m, const Vec& translation) {
  return GroupElement(tag, m, translation);
}

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  if (a.tag() != b.tag()) {
    throw ContractViolation("compose: incompatible tags " + std::string(to_string(a.tag())) + " and " +
                            std::string(to_string(b.tag())));
  }
  if (a.dim() != b.dim()) throw ContractViolation("compose: dimension mismatch");
  const int n = a.dim();
  switch (a.tag()) {
    case GroupTag::PositiveDiagonal: {
      Mat m = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = a.matrix()(i, i) * b.matrix()(i, i);
      return GroupElement::trusted(a.tag(), m);
    }
    case GroupTag::Unipotent: {
      Mat m = a.matrix() * b.matrix();
      for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0;
        for (int j = 0; j < i; ++j) m(i, j) = 0.0;
      }
      return GroupElement::trusted(a.tag(), m);
    }
    case GroupTag::GeneralLinearMinus: {
      const Mat j = reflection(n);
      Mat m = j * ((j * a.matrix()) * (j * b.matrix()));
      return GroupElement::trusted(a.tag(), m);
    }
    case GroupTag::Affine: {
      Mat m = a.matrix() * b.matrix();
      double d = m.determinant();
      if (d == 0.0 || !std::isfinite(d)) throw DomainError("compose: singular linear part");
      Vec t = a.translation() + a.matrix() * b.translation();
      return GroupElement::trusted(a.tag(), m, t);
    }
    default: {
      Mat m = a.matrix() * b.matrix();
      if (!m.allFinite()) throw DomainError("compose: overflow");
      return GroupElement::trusted(a.tag(), m);
    }
  }
}

GroupElement invert(const GroupElement& g) {
  const int n = g.dim();
  switch (g.tag()) {
    case GroupTag::Rotation:
      return GroupElement::trusted(g.tag(), g.matrix().transpose());
    case GroupTag::PositiveDiagonal: {
      Mat m = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) m(i, i) = 1.0 / g.matrix()(i, i);
      return GroupElement::trusted(g.tag(), m);
    }
    case GroupTag::Unipotent:
      return GroupElement::trusted(g.tag(), detail::unipotent_inverse(g.matrix()));
    case GroupTag::GeneralLinearMinus: {
      // x with J(Jg * Jx) = J, i.e. Jx = (Jg)^-1
      const Mat j = reflection(n);
      Mat jg = j * g.matrix();
      if (jg.determinant() == 0.0) throw DomainError("invert: singular matrix");
      return GroupElement::trusted(g.tag(), j * Mat(jg.inverse()));
    }
    case GroupTag::Affine: {
      if (g.matrix().determinant() == 0.0) throw DomainError("invert: singular matrix");
      Mat inv = g.matrix().inverse();
      return GroupElement::trusted(g.tag(), inv, -(inv * g.translation()));
    }
    default: {
      if (g.matrix().determinant() == 0.0) throw DomainError("invert: singular matrix");
      return GroupElement::trusted(g.tag(), g.matrix().inverse());
    }
  }
}

double invariant_defect(const GroupElement& g) {
  const Mat& m = g.matrix();
  const int n = g.dim();
  switch (g.tag()) {
    case GroupTag::Rotation:
      return std::max((m.transpose() * m - Mat::Identity(n, n)).cwiseAbs().maxCoeff(),
                      std::abs(m.determinant() - 1.0));
    case GroupTag::PositiveDiagonal: {
      double d = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) d = std::max(d, std::abs(m(i, j)));
      for (int i = 0; i < n; ++i)
        if (!(m(i, i) > 0)) return INFINITY;
      return d;
    }
    case GroupTag::Unipotent: {
      double d = 0.0;
      for (int i = 0; i < n; ++i) {
        d = std::max(d, std::abs(m(i, i) - 1.0));
        for (int j = 0; j < i; ++j) d = std::max(d, std::abs(m(i, j)));
      }
      return d;
    }
    case GroupTag::SpecialLinear:
      return std::abs(m.determinant() - 1.0);
    case GroupTag::GeneralLinearPlus:
      return m.determinant() > 0 ? 0.0 : INFINITY;
    case GroupTag::GeneralLinearMinus:
      return m.determinant() < 0 ? 0.0 : INFINITY;
    case GroupTag::Affine:
      return (m.determinant() != 0 && g.translation().size() == n) ? 0.0 : INFINITY;
  }
  return INFINITY;
}

GroupElement gl_minus_transport(const GroupElement& g) {
  if (g.tag() == GroupTag::Affine) throw ContractViolation("gl_minus_transport: affine element");
  if (!(g.matrix().determinant() < 0)) throw DomainError("gl_minus_transport: det >= 0");
  return GroupElement::trusted(GroupTag::GeneralLinearPlus, reflection(g.dim()) * g.matrix());
}

GroupElement gl_minus_transport_inverse(const GroupElement& h) {
  if (h.tag() == GroupTag::Affine) throw ContractViolation("gl_minus_transport_inverse: affine element");
  if (!(h.matrix().determinant() > 0)) throw DomainError("gl_minus_transport_inverse: det <= 0");
  return GroupElement::trusted(GroupTag::GeneralLinearMinus, reflection(h.dim()) * h.matrix());
}

namespace detail {

void gram_schmidt(const Mat& g, Mat& k, Mat& r) {
  const int n = static_cast<int>(g.rows());
  k.resize(n, n);
  r = Mat::Zero(n, n);
  const double scale = std::max(g.cwiseAbs().maxCoeff(), 1e-300);
  for (int j = 0; j < n; ++j) {
    Vec v = g.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        double c = k.col(i).dot(v);
        r(i, j) += c;
        v -= c * k.col(i);
      }
    }
    double len = v.norm();
    if (!(len > 1e-14 * scale)) throw DomainError("iwasawa: singular matrix");
    r(j, j) = len;
    k.col(j) = v / len;
  }
}

void kna(const Mat& g, Mat& k, Mat& n, Vec& a) {
  Mat r;
  gram_schmidt(g, k, r);
  const int d = static_cast<int>(g.rows());
  a.resize(d);
  n = Mat::Identity(d, d);
  for (int j = 0; j < d; ++j) a(j) = r(j, j);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) n(i, j) = r(i, j) / r(j, j);
}

Mat unipotent_inverse(const Mat& u) {
  const int d = static_cast<int>(u.rows());
  Mat x = Mat::Identity(d, d);
  // back substitution column by column
  for (int j = 0; j < d; ++j) {
    for (int i = j - 1; i >= 0; --i) {
      double s = 0.0;
      for (int l = i + 1; l <= j; ++l) s += u(i, l) * x(l, j);
      x(i, j) = -s;
    }
  }
  return x;
}

void nak(const Mat& g, Mat& n, Vec& a, Mat& k) {
  // g^-1 = k1 a1 n1 (KAN), so g = n1^-1 a1^-1 k1^T
  Mat k1, n1;
  Vec a1;
  kna(Mat(g.inverse()), k1, n1, a1);
  const int d = static_cast<int>(g.rows());
  // KAN unipotent: a1^-1 n1 a1
  Mat n_kan = n1;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) n_kan(i, j) = n1(i, j) * a1(j) / a1(i);
  n = unipotent_inverse(n_kan);
  a.resize(d);
  for (int i = 0; i < d; ++i) a(i) = 1.0 / a1(i);
  k = k1.transpose();
}

}  // namespace detail

namespace {

Mat conjugate_unipotent(const Mat& n, const Mat& a, bool a_inv_n_a) {
  Mat out = n;
  for (int i = 0; i < n.rows(); ++i)
    for (int j = i + 1; j < n.cols(); ++j)
      out(i, j) = a_inv_n_a ? n(i, j) * a(j, j) / a(i, i) : n(i, j) * a(i, i) / a(j, j);
  return out;
}

bool k_on_left(Ordering o) { return o == Ordering::KNA || o == Ordering::KAN; }

}  // namespace

Mat IwasawaFactors::recompose() const {
  const Mat& K = k.matrix();
  const Mat& N = n.matrix();
  const Mat& A = a.matrix();
  switch (ordering) {
    case Ordering::KNA: return K * N * A;
    case Ordering::NAK: return N * A * K;
    case Ordering::ANK: return A * N * K;
    case Ordering::KAN: return K * A * N;
  }
  return Mat();
}

IwasawaFactors iwasawa_decompose(const GroupElement& g, Ordering ordering) {
  if (g.tag() == GroupTag::Affine || g.tag() == GroupTag::GeneralLinearMinus)
    throw ContractViolation("iwasawa_decompose: element must be in SL(n)");
  if (std::abs(g.matrix().determinant() - 1.0) > 1e-10 * det_scale(g.matrix()))
    throw ContractViolation("iwasawa_decompose: det != 1");
  const int d = g.dim();
  Mat K, N;
  Vec a;
  if (k_on_left(ordering)) {
    detail::kna(g.matrix(), K, N, a);
  } else {
    detail::nak(g.matrix(), N, a, K);
  }
  Mat A = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i) A(i, i) = a(i);
  IwasawaFactors f{GroupElement::trusted(GroupTag::Rotation, K), GroupElement::trusted(GroupTag::Unipotent, N),
                   GroupElement::trusted(GroupTag::PositiveDiagonal, A),
                   k_on_left(ordering) ? Ordering::KNA : Ordering::NAK};
  return f.ordering == ordering ? f : reorder_iwasawa(f, ordering);
}

IwasawaFactors reorder_iwasawa(const IwasawaFactors& f, Ordering target) {
  if (f.ordering == target) return f;
  if (k_on_left(f.ordering) == k_on_left(target)) {
    // k n a = k a (a^-1 n a) and n a k = a (a^-1 n a) k
    bool n_first_source = f.ordering == Ordering::KNA || f.ordering == Ordering::NAK;
    Mat n2 = conjugate_unipotent(f.n.matrix(), f.a.matrix(), n_first_source);
    return IwasawaFactors{f.k, GroupElement::trusted(GroupTag::Unipotent, n2), f.a, target};
  }
  GroupElement g = GroupElement::trusted(GroupTag::SpecialLinear, f.recompose());
  return iwasawa_decompose(g, target);
}

GlPlusSplit split_gl_plus(const GroupElement& g) {
  if (g.tag() == GroupTag::Affine) throw ContractViolation("split_gl_plus: affine element");
  const int n = g.dim();
  double d = g.matrix().determinant();
  if (!(d > 0)) throw DomainError("split_gl_plus: det <= 0");
  double t = std::pow(d, 1.0 / n);
  return GlPlusSplit{GroupElement::trusted(GroupTag::SpecialLinear, g.matrix() / t), t};
}

Mat GroupSampler::gaussian_matrix(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = normal();
  return m;
}

GroupElement GroupSampler::rotation(int n) {
  Mat k, r;
  Mat g;
  do {
    g = gaussian_matrix(n);
  } while (std::abs(g.determinant()) < 1e-3);
  detail::gram_schmidt(g, k, r);
  if (k.determinant() < 0) k.col(0) = -k.col(0);
  return GroupElement::trusted(GroupTag::Rotation, k);
}

GroupElement GroupSampler::positive_diagonal(int n, double spread) {
  Vec u(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    u(i) = spread * normal();
    mean += u(i) / n;
  }
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = std::exp(u(i) - mean);
  return GroupElement::trusted(GroupTag::PositiveDiagonal, m);
}

GroupElement GroupSampler::unipotent(int n, double spread) {
  Mat m = Mat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(i, j) = spread * normal();
  return GroupElement::trusted(GroupTag::Unipotent, m);
}

GroupElement GroupSampler::special_linear(int n) {
  Mat g;
  double d;
  do {
    g = gaussian_matrix(n);
    d = g.determinant();
  } while (std::abs(d) < 0.05);
  if (d < 0) {
    g.col(0) = -g.col(0);
    d = -d;
  }
  return GroupElement::trusted(GroupTag::SpecialLinear, g / std::pow(d, 1.0 / n));
}

GroupElement GroupSampler::general_linear_plus(int n) {
  Mat s = special_linear(n).matrix();
  return GroupElement::trusted(GroupTag::GeneralLinearPlus, s * std::exp(0.5 * normal()));
}

GroupElement GroupSampler::general_linear_minus(int n) {
  return GroupElement::trusted(GroupTag::GeneralLinearMinus, reflection(n) * general_linear_plus(n).matrix());
}

GroupElement GroupSampler::affine(int n) {
  Vec t(n);
  for (int i = 0; i < n; ++i) t(i) = normal();
  return GroupElement::trusted(GroupTag::Affine, general_linear_plus(n).matrix(), t);
}

}  // namespace gaf
