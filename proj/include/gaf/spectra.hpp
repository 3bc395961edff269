#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gaf/grid.hpp"
#include "gaf/group.hpp"
#include "gaf/quadrature.hpp"

namespace gaf {

// Boundary samples must stay below this fraction of the peak before a truncated
// grid is trusted to represent an integral over the whole line.
inline constexpr double kDecayThreshold = 1e-14;

// Throws PreconditionError naming the axis if |f| on either end face of the axis
// exceeds kDecayThreshold * max|f|.
void require_boundary_decay(const GridFunction& f, std::size_t axis, const std::string& context);
double boundary_ratio(const GridFunction& f, std::size_t axis);

using EuclideanSpectrum = GridFunction;
using MellinSpectrum = GridFunction;

// M(k, j) = w_j exp(-i lambda_k x_j)
CMat euclid_matrix(const Axis& spatial, const Axis& freq);
// M(j, k) = w~_k exp(+i lambda_k x_j), w~ already carries 1/(2 pi)
CMat euclid_inverse_matrix(const Axis& freq, const Axis& spatial);

// Transform one non-compact axis (Translation, Nilpotent, Scale or Diagonal) in place of the axis.
GridFunction transform_axis(const GridFunction& f, std::size_t axis, const Axis& freq);
GridFunction inverse_transform_axis(const GridFunction& F, std::size_t axis, const Axis& spatial);

// Every axis of f is transformed; freq[i] pairs with axis i.
EuclideanSpectrum euclid_ft(const SampledFunction& f, const std::vector<Axis>& freq);
SampledFunction euclid_ift(const EuclideanSpectrum& F, const std::vector<Axis>& spatial);

// f sampled on a single log axis u = log t; computes int f(t) t^(-i eta) dt / t.
MellinSpectrum mellin_ft(const SampledFunction& f, const Axis& eta);
MellinSpectrum mellin_ft(const std::function<cplx(double)>& f_of_t, const Axis& log_axis, const Axis& eta);
SampledFunction mellin_ift(const MellinSpectrum& F, const Axis& log_axis);

// Wigner small-d matrix, rows and columns indexed m, m' = -l..l.
Eigen::MatrixXd wigner_small_d(int l, double beta);
// D^l_{m m'} = exp(-i m alpha) d^l_{m m'}(beta) exp(-i m' gamma), a representation of Rz Ry Rz.
CMat wigner_D(int l, double alpha, double beta, double gamma);
// SO(2): [exp(i m theta)]; SO(3): Wigner D^l of k.
CMat irrep_matrix(int label, const GroupElement& k);

struct CompactSpectrum {
  int group_n = 2;
  int band_limit = 0;
  std::map<int, CMat> blocks;

  // sum_gamma d_gamma ||block||_HS^2
  double energy() const;
};

// Throws ConfigurationError unless the rule integrates products of band-limited
// matrix coefficients exactly.
void require_compact_quadrature(const std::vector<Axis>& axes, int band);

CompactSpectrum peter_weyl(const GroupFunction& f, const QuadratureRule& rule, int band);
// f sampled on the K axes (theta, or alpha, beta, gamma).
CompactSpectrum peter_weyl(const SampledFunction& f, int band);
cplx peter_weyl_evaluate(const CompactSpectrum& spec, const GroupElement& k);
GroupFunction peter_weyl_inverse(const CompactSpectrum& spec);
double compact_plancherel_residual(const GroupFunction& f, const QuadratureRule& rule, int band);

// Axis-form transforms on a K block starting at `first` (1 axis for SO(2), 3 for SO(3)).
GridFunction compact_forward(const GridFunction& f, std::size_t first, int band);
GridFunction compact_inverse(const GridFunction& F, std::size_t axis, const std::vector<Axis>& spatial);

CompactSpectrum compact_spectrum_from_axis(const GridFunction& F);

}  // namespace gaf
