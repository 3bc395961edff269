#pragma once

#include <span>
#include <string>
#include <vector>

#include "gaf/grid.hpp"
#include "gaf/group.hpp"

namespace gaf {

// Coordinate maps for the factors.
//   nilpotent: strictly upper entries of an m x m unipotent, row-major
//   diagonal:  u in R^(n-1), a_i = exp(u_i), a_n = exp(-sum u)
//   compact:   theta for SO(2); z-y-z Euler angles (alpha, beta, gamma) for SO(3)
int nilpotent_dim(int m);
int compact_dim(int n);
Mat unipotent_from_coords(int m, std::span<const double> x);
void unipotent_coords(const Mat& u, std::span<double> out);
Vec diagonal_from_log(int n, std::span<const double> u);
void diagonal_log(const Vec& a, std::span<double> out);
Mat rotation_from_angles(int n, std::span<const double> angles);
void rotation_angles(const Mat& k, std::span<double> out);
// closed form of the GL+(2) NAK chart, coordinates (ut, u1, x12, theta); no domain checks
void nak_coords_gl2(double g00, double g01, double g10, double g11, double out[4]);

enum class ChartKind {
  Euclidean,          // R^n
  Nilpotent,          // (n+1) x (n+1) unipotent
  Solvable,           // n a in SL(n)
  SpecialLinear,      // k n a or n a k
  GeneralLinearPlus,  // t * (SL chart)
  AffinePlus,         // (A, GL+ chart)
};

std::string to_string(ChartKind kind);

// Global coordinates of one group level. Coordinates are ordered
// translation, scale, diagonal, nilpotent, compact.
class Chart {
 public:
  Chart(ChartKind kind, int n, Ordering ordering = Ordering::NAK);

  ChartKind kind() const { return kind_; }
  int n() const { return n_; }
  Ordering ordering() const { return ordering_; }
  GroupTag tag() const;
  std::size_t dimension() const { return kinds_.size(); }
  const std::vector<AxisKind>& axis_kinds() const { return kinds_; }
  const std::vector<std::string>& axis_labels() const { return labels_; }

  GroupElement element(std::span<const double> coords) const;
  void coords(const GroupElement& g, std::span<double> out) const;

  // Matrix-level fast paths (no GroupElement validation).
  void linear_coords(const Mat& g, std::span<double> out) const;
  Mat linear_element(std::span<const double> coords) const;

 private:
  ChartKind kind_;
  int n_;
  Ordering ordering_;
  std::vector<AxisKind> kinds_;
  std::vector<std::string> labels_;
  int translation_ = 0, scale_ = 0, diagonal_ = 0, nilpotent_ = 0, compact_ = 0;
  int nil_size_ = 0;
};

}  // namespace gaf
