#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string_view>

#include "gaf/types.hpp"

namespace gaf {

enum class GroupTag {
  Rotation,
  PositiveDiagonal,
  Unipotent,
  SpecialLinear,
  GeneralLinearPlus,
  GeneralLinearMinus,
  Affine,
};

std::string_view to_string(GroupTag tag);

// An element of one of the matrix groups. The tag fixes the group law used by compose().
// Affine elements carry (translation, linear part) with linear part in GL(n).
class GroupElement {
 public:
  static GroupElement rotation(const Mat& k);
  static GroupElement positive_diagonal(const Vec& diagonal);
  static GroupElement unipotent(const Mat& u);
  static GroupElement special_linear(const Mat& g);
  // Tag chosen from the sign of det.
  static GroupElement general_linear(const Mat& g);
  static GroupElement affine(const Vec& translation, const Mat& linear);
  static GroupElement identity(GroupTag tag, int n);

  // Skips validation; for results whose invariants hold by construction.
  static GroupElement trusted(GroupTag tag, const Mat& m, const Vec& translation = Vec());

  GroupTag tag() const noexcept { return tag_; }
  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const Mat& matrix() const noexcept { return matrix_; }
  const Vec& translation() const noexcept { return translation_; }

 private:
  GroupElement(GroupTag tag, const Mat& m, const Vec& t) : tag_(tag), matrix_(m), translation_(t) {}

  GroupTag tag_;
  Mat matrix_;
  Vec translation_;
};

using GroupFunction = std::function<cplx(const GroupElement&)>;

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement invert(const GroupElement& g);

// Max-norm defect of the tag's defining conditions (orthogonality, det, shape).
double invariant_defect(const GroupElement& g);

// diag(-1, 1, ..., 1)
Mat reflection(int n);

// GL- -> GL+ by left multiplication with the reflection.
GroupElement gl_minus_transport(const GroupElement& g);
GroupElement gl_minus_transport_inverse(const GroupElement& h);

enum class Ordering { KNA, NAK, ANK, KAN };

std::string_view to_string(Ordering o);

struct IwasawaFactors {
  GroupElement k;
  GroupElement n;
  GroupElement a;
  Ordering ordering;

  Mat recompose() const;
};

// g in SL(n). Uses Gram-Schmidt with one reorthogonalisation pass.
IwasawaFactors iwasawa_decompose(const GroupElement& g, Ordering ordering);
IwasawaFactors reorder_iwasawa(const IwasawaFactors& f, Ordering target);

struct GlPlusSplit {
  GroupElement s;  // det 1
  double t;        // det^(1/n)
};

GlPlusSplit split_gl_plus(const GroupElement& g);

namespace detail {
// Raw factorisation g = k * r with r upper triangular, positive diagonal. Throws on singular g.
void gram_schmidt(const Mat& g, Mat& k, Mat& r);
// g = k n a for any g with positive det (a then carries the scale).
void kna(const Mat& g, Mat& k, Mat& n, Vec& a);
// g = n a k, same conventions.
void nak(const Mat& g, Mat& n, Vec& a, Mat& k);
Mat unipotent_inverse(const Mat& u);
}  // namespace detail

// Seeded generator of random group elements.
class GroupSampler {
 public:
  explicit GroupSampler(std::uint64_t seed) : rng_(seed) {}

  GroupElement rotation(int n);
  // log-diagonal entries ~ N(0, spread^2), projected to zero sum.
  GroupElement positive_diagonal(int n, double spread = 0.5);
  GroupElement unipotent(int n, double spread = 1.0);
  GroupElement special_linear(int n);
  GroupElement general_linear_plus(int n);
  GroupElement general_linear_minus(int n);
  GroupElement affine(int n);

  double normal() { return normal_(rng_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::mt19937_64& engine() { return rng_; }

 private:
  Mat gaussian_matrix(int n);

  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gaf
