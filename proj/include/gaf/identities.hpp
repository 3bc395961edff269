#pragma once

#include <cstdint>

#include "gaf/bundle.hpp"
#include "gaf/level.hpp"
#include "gaf/quadrature.hpp"
#include "gaf/report.hpp"

namespace gaf {

// Per-axis quadrature used by the convolution identities: `count` nodes on
// [-range, range] for translation and nilpotent axes, on [-log_range, log_range]
// for scale and diagonal (log) axes, and `compact_nodes` angles.
struct ConvolutionGrid {
  int count = 8;
  double range = 4.5;
  double log_range = 2.5;
  int compact_nodes = 8;
  int points = 10;  // sampled evaluation points (or spectral points)

  ConvolutionGrid refined(int factor) const;
  std::string descriptor() const;
};

// Convolution on S = N x| A (n = 2): g * f~ against the direct-product convolution, evaluated
// at sampled points of N x A x A. Left side: nodes on g's variables with the group law.
// Right side: nodes on f~'s variables after the change of variables.
IdentityReport solvable_convolution_identity(const ConvolutionGrid& grid, std::uint64_t seed);
// Integrating the (n, a, b)-spectrum of g * f~ over the b-frequency equals the
// (n, a)-spectrum of f~ at b = identity times the spectrum of g.
IdentityReport solvable_spectral_identity(const ConvolutionGrid& grid, std::uint64_t seed);
// Same pair of pipelines on H+ for GA+(2).
IdentityReport affine_convolution_identity(const ConvolutionGrid& grid, std::uint64_t seed);
// Transform of the convolution against the product of transforms, GA+(2), at sampled spectral points.
IdentityReport affine_spectral_identity(const ConvolutionGrid& grid, std::uint64_t seed, bool characters_only = false);

// Left translation by (c, I) multiplies the mu axis by exp(-i mu c).
IdentityReport shift_equivariance(const LevelGrid& grid, const TestFunctionBundle& bundle, const Vec& shift);

struct ComponentIntegrals {
  double plus = 0.0;
  double minus = 0.0;
  double total = 0.0;
};

// Quadrature of |f|^2 over both components of GL (or GA): f_minus is evaluated on
// GL- matrices J h for h on the GL+ grid.
ComponentIntegrals gl_full_integrals(const LevelGrid& grid, const GroupFunction& f_plus, const GroupFunction& f_minus);
// left = total, right = 2 * plus part.
// Non-compact counts (odd, 3..63), then compact counts, are lowered until the grid has at most max_nodes nodes.
IdentityReport component_doubling(const LevelGrid& grid, const TestFunctionBundle& bundle,
                                  std::size_t max_nodes = std::size_t{1} << 19);

// int f(nak) a^-2rho dn da dk against int f(kan) a^2rho dn da dk on SL(2).
IdentityReport order_swap_identity(int count, double range, int compact_nodes);

// det of the central-difference Jacobian of n -> a n a^-1 in nilpotent coordinates.
double conjugation_jacobian_fd(const Vec& a, const Mat& n, double step = 1e-3);
// Worst |det J_fd - prod a_i/a_j| over random (a, n).
IdentityReport modulus_check(int n, int samples, std::uint64_t seed);

IdentityReport haar_invariance(RuleFactor factor, int n, int count, std::uint64_t seed);
// Worst sampled deviation of the extension invariances (tilde on H+, tilde on S, Upsilon).
IdentityReport extension_invariance(int n, int samples, std::uint64_t seed);

IdentityReport zero_function_sanity(const LevelGrid& grid);

}  // namespace gaf
