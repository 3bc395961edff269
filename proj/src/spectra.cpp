#include "gaf/spectra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gaf/charts.hpp"
#include "gaf/errors.hpp"
#include "gaf/kernels.hpp"

namespace gaf {

namespace {

constexpr cplx kI(0.0, 1.0);

bool non_compact_spatial(AxisKind k) {
  return k == AxisKind::Translation || k == AxisKind::Nilpotent || k == AxisKind::Scale || k == AxisKind::Diagonal;
}

// single-term seed d^l_{m m'} at l = max(|m|, |m'|), from the Wigner sum
double wigner_seed(int l, int m, int mp, double beta) {
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  double acc = 0.0;
  const double pre = 0.5 * (std::lgamma(l + m + 1.0) + std::lgamma(l - m + 1.0) + std::lgamma(l + mp + 1.0) +
                            std::lgamma(l - mp + 1.0));
  for (int k = std::max(0, m - mp); k <= std::min(l + m, l - mp); ++k) {
    double lg = pre - std::lgamma(l + m - k + 1.0) - std::lgamma(k + 1.0) - std::lgamma(mp - m + k + 1.0) -
                std::lgamma(l - mp - k + 1.0);
    int pc = 2 * l + m - mp - 2 * k, ps = mp - m + 2 * k;
    double term = std::exp(lg) * std::pow(c, pc) * std::pow(s, ps);
    acc += ((mp - m + k) % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

double boundary_ratio(const GridFunction& f, std::size_t axis) {
  if (axis >= f.rank()) throw ContractViolation("boundary_ratio: axis out of range");
  std::size_t inner = 1;
  for (std::size_t d = axis + 1; d < f.rank(); ++d) inner *= f.axis(d).size();
  const std::size_t n = f.axis(axis).size();
  double peak = 0.0, edge = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double v = std::abs(f[i]);
    peak = std::max(peak, v);
    const std::size_t k = (i / inner) % n;
    if (k == 0 || k == n - 1) edge = std::max(edge, v);
  }
  return peak > 0 ? edge / peak : 0.0;
}

void require_boundary_decay(const GridFunction& f, std::size_t axis, const std::string& context) {
  const double r = boundary_ratio(f, axis);
  if (r > kDecayThreshold) {
    std::ostringstream os;
    os << context << ": function does not decay on axis " << f.axis(axis).label << " (boundary/peak = " << r
       << ", decay threshold " << kDecayThreshold << ")";
    throw PreconditionError(os.str());
  }
}

CMat euclid_matrix(const Axis& spatial, const Axis& freq) {
  CMat m(freq.size(), spatial.size());
  for (std::size_t k = 0; k < freq.size(); ++k)
    for (std::size_t j = 0; j < spatial.size(); ++j)
      m(k, j) = spatial.weights[j] * std::exp(-kI * (freq.nodes[k] * spatial.nodes[j]));
  return m;
}

CMat euclid_inverse_matrix(const Axis& freq, const Axis& spatial) {
  CMat m(spatial.size(), freq.size());
  for (std::size_t j = 0; j < spatial.size(); ++j)
    for (std::size_t k = 0; k < freq.size(); ++k)
      m(j, k) = freq.weights[k] * std::exp(kI * (freq.nodes[k] * spatial.nodes[j]));
  return m;
}

GridFunction transform_axis(const GridFunction& f, std::size_t axis, const Axis& freq) {
  const Axis& a = f.axis(axis);
  if (!non_compact_spatial(a.kind)) throw ContractViolation("transform_axis: axis " + a.label + " is not a non-compact spatial axis");
  require_boundary_decay(f, axis, "transform on " + a.label);
  return kernels::apply_along(f, axis, euclid_matrix(a, freq), freq);
}

GridFunction inverse_transform_axis(const GridFunction& F, std::size_t axis, const Axis& spatial) {
  const Axis& a = F.axis(axis);
  if (!is_spectral(a.kind) || is_compact(a.kind))
    throw ContractViolation("inverse_transform_axis: axis " + a.label + " is not a frequency axis");
  return kernels::apply_along(F, axis, euclid_inverse_matrix(a, spatial), spatial);
}

EuclideanSpectrum euclid_ft(const SampledFunction& f, const std::vector<Axis>& freq) {
  if (freq.size() != f.rank()) throw ContractViolation("euclid_ft: need one frequency axis per spatial axis");
  GridFunction g = f;
  for (std::size_t d = 0; d < freq.size(); ++d) g = transform_axis(g, d, freq[d]);
  return g;
}

SampledFunction euclid_ift(const EuclideanSpectrum& F, const std::vector<Axis>& spatial) {
  if (spatial.size() != F.rank()) throw ContractViolation("euclid_ift: need one spatial axis per frequency axis");
  GridFunction g = F;
  for (std::size_t d = 0; d < spatial.size(); ++d) g = inverse_transform_axis(g, d, spatial[d]);
  return g;
}

MellinSpectrum mellin_ft(const SampledFunction& f, const Axis& eta) {
  if (f.rank() != 1 || (f.axis(0).kind != AxisKind::Scale && f.axis(0).kind != AxisKind::Diagonal))
    throw ContractViolation("mellin_ft: expected one log-coordinate axis");
  return transform_axis(f, 0, eta);
}

MellinSpectrum mellin_ft(const std::function<cplx(double)>& f_of_t, const Axis& log_axis, const Axis& eta) {
  auto f = sample({log_axis}, [&](std::span<const double> u) { return f_of_t(std::exp(u[0])); });
  return mellin_ft(f, eta);
}

SampledFunction mellin_ift(const MellinSpectrum& F, const Axis& log_axis) {
  if (F.rank() != 1) throw ContractViolation("mellin_ift: expected one frequency axis");
  return inverse_transform_axis(F, 0, log_axis);
}

Eigen::MatrixXd wigner_small_d(int l, double beta) {
  if (l < 0) throw ContractViolation("wigner_small_d: l must be >= 0");
  const int d = 2 * l + 1;
  const double x = std::cos(beta);
  Eigen::MatrixXd out(d, d);
  for (int m = -l; m <= l; ++m)
    for (int mp = -l; mp <= l; ++mp) {
      const int l0 = std::max(std::abs(m), std::abs(mp));
      double prev = 0.0, cur = wigner_seed(l0, m, mp, beta);
      for (int j = l0; j < l; ++j) {
        const double jj = j;
        const double mm = (j == 0) ? 0.0 : static_cast<double>(m) * mp / (jj * (jj + 1.0));
        const double back = (j == 0) ? 0.0 : std::sqrt((jj * jj - m * m) * (jj * jj - mp * mp)) / (jj * (2.0 * jj + 1.0));
        const double lead = (jj + 1.0) * (2.0 * jj + 1.0) /
                            std::sqrt(((jj + 1.0) * (jj + 1.0) - m * m) * ((jj + 1.0) * (jj + 1.0) - mp * mp));
        const double next = lead * ((x - mm) * cur - back * prev);
        prev = cur;
        cur = next;
      }
      out(m + l, mp + l) = cur;
    }
  return out;
}

CMat wigner_D(int l, double alpha, double beta, double gamma) {
  Eigen::MatrixXd dm = wigner_small_d(l, beta);
  CMat D(2 * l + 1, 2 * l + 1);
  for (int m = -l; m <= l; ++m)
    for (int mp = -l; mp <= l; ++mp)
      D(m + l, mp + l) = std::exp(-kI * (m * alpha)) * dm(m + l, mp + l) * std::exp(-kI * (mp * gamma));
  return D;
}

CMat irrep_matrix(int label, const GroupElement& k) {
  if (k.tag() != GroupTag::Rotation) throw ContractViolation("irrep_matrix: expected a rotation");
  if (k.dim() == 2) {
    double th[1];
    rotation_angles(k.matrix(), th);
    CMat m(1, 1);
    m(0, 0) = std::exp(kI * (label * th[0]));
    return m;
  }
  if (k.dim() == 3) {
    if (label < 0) throw ContractViolation("irrep_matrix: SO(3) label must be >= 0");
    double e[3];
    rotation_angles(k.matrix(), e);
    return wigner_D(label, e[0], e[1], e[2]);
  }
  throw UnsupportedFeature("irrep_matrix: SO(" + std::to_string(k.dim()) + ") is not supported");
}

double CompactSpectrum::energy() const {
  double s = 0.0;
  for (const auto& [label, block] : blocks) s += block.rows() * block.squaredNorm();
  return s;
}

void require_compact_quadrature(const std::vector<Axis>& axes, int band) {
  std::vector<std::string> issues;
  if (band < 0) issues.push_back("band-limit must be >= 0");
  if (axes.size() == 1 && axes[0].kind == AxisKind::Circle) {
    if (static_cast<int>(axes[0].size()) < 2 * band + 1)
      issues.push_back("SO(2) trapezoid with " + std::to_string(axes[0].size()) + " nodes cannot resolve band-limit " +
                       std::to_string(band) + " (need >= " + std::to_string(2 * band + 1) + ")");
  } else if (axes.size() == 3 && axes[0].kind == AxisKind::EulerAlpha && axes[1].kind == AxisKind::EulerBeta &&
             axes[2].kind == AxisKind::EulerGamma) {
    if (static_cast<int>(axes[0].size()) < 2 * band + 1 || static_cast<int>(axes[2].size()) < 2 * band + 1)
      issues.push_back("SO(3) alpha/gamma nodes must be >= " + std::to_string(2 * band + 1) + " for band-limit " +
                       std::to_string(band));
    if (static_cast<int>(axes[1].size()) < band + 1)
      issues.push_back("SO(3) beta Gauss-Legendre nodes must be >= " + std::to_string(band + 1) + " for band-limit " +
                       std::to_string(band));
  } else {
    throw ContractViolation("require_compact_quadrature: axes are not a K rule");
  }
  if (!issues.empty()) throw ConfigurationError(issues);
}

GridFunction compact_forward(const GridFunction& f, std::size_t first, int band) {
  const Axis& a0 = f.axis(first);
  if (a0.kind == AxisKind::Circle) {
    require_compact_quadrature({a0}, band);
    Axis dual = dual_circle_axis("m", band);
    CMat m(dual.size(), a0.size());
    for (std::size_t k = 0; k < dual.size(); ++k)
      for (std::size_t j = 0; j < a0.size(); ++j) m(k, j) = a0.weights[j] * std::exp(-kI * (dual.nodes[k] * a0.nodes[j]));
    return kernels::apply_along(f, first, m, dual);
  }
  if (a0.kind != AxisKind::EulerAlpha || first + 3 > f.rank())
    throw ContractViolation("compact_forward: expected theta or (alpha, beta, gamma) axes");
  const Axis& ab = f.axis(first + 1);
  const Axis& ag = f.axis(first + 2);
  require_compact_quadrature({a0, ab, ag}, band);
  const int L = band, D = 2 * L + 1;
  // Fourier in alpha -> q and gamma -> p with kernel w exp(+i q alpha), w exp(+i p gamma)
  Axis qa = dual_circle_axis("_q", L), pa = dual_circle_axis("_p", L);
  CMat ma(D, a0.size()), mg(D, ag.size());
  for (int q = -L; q <= L; ++q)
    for (std::size_t j = 0; j < a0.size(); ++j) ma(q + L, j) = a0.weights[j] * std::exp(kI * (q * a0.nodes[j]));
  for (int p = -L; p <= L; ++p)
    for (std::size_t j = 0; j < ag.size(); ++j) mg(p + L, j) = ag.weights[j] * std::exp(kI * (p * ag.nodes[j]));
  GridFunction g = kernels::apply_along(f, first, ma, qa);
  g = kernels::apply_along(g, first + 2, mg, pa);
  // beta contraction: T^l_{pq} = sum_b w_b d^l_{qp}(beta_b) G(q, b, p)
  const std::size_t nb = ab.size();
  std::vector<Eigen::MatrixXd> dtab;  // dtab[b * (L+1) + l]
  for (std::size_t b = 0; b < nb; ++b)
    for (int l = 0; l <= L; ++l) dtab.push_back(wigner_small_d(l, ab.nodes[b]));
  std::size_t outer = 1, trailing = 1;
  for (std::size_t d = 0; d < first; ++d) outer *= g.axis(d).size();
  for (std::size_t d = first + 3; d < g.rank(); ++d) trailing *= g.axis(d).size();
  Axis dual = dual_rotation3_axis("lpq", L);
  std::vector<Axis> axes;
  for (std::size_t d = 0; d < first; ++d) axes.push_back(g.axis(d));
  axes.push_back(dual);
  for (std::size_t d = first + 3; d < g.rank(); ++d) axes.push_back(g.axis(d));
  GridFunction out(std::move(axes));
  const std::size_t rows = dual.size();
  const std::size_t in_block = static_cast<std::size_t>(D) * nb * D;
  const std::ptrdiff_t tasks = static_cast<std::ptrdiff_t>(outer * rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t task = 0; task < tasks; ++task) {
    const std::size_t o = static_cast<std::size_t>(task) / rows, r = static_cast<std::size_t>(task) % rows;
    const SO3Index ix = so3_index(r);
    for (std::size_t t = 0; t < trailing; ++t) {
      cplx acc = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const double dv = dtab[b * (L + 1) + ix.l](ix.q + ix.l, ix.p + ix.l);
        const std::size_t src = ((o * in_block) + (static_cast<std::size_t>(ix.q + L) * nb + b) * D + (ix.p + L)) * trailing + t;
        acc += ab.weights[b] * dv * g[src];
      }
      out[(o * rows + r) * trailing + t] = acc;
    }
  }
  out.ordering = f.ordering;
  return out;
}

GridFunction compact_inverse(const GridFunction& F, std::size_t axis, const std::vector<Axis>& spatial) {
  const Axis& dual = F.axis(axis);
  if (dual.kind == AxisKind::DualCircle) {
    if (spatial.size() != 1 || spatial[0].kind != AxisKind::Circle) throw ContractViolation("compact_inverse: expected theta axis");
    const Axis& th = spatial[0];
    CMat m(th.size(), dual.size());
    for (std::size_t j = 0; j < th.size(); ++j)
      for (std::size_t k = 0; k < dual.size(); ++k) m(j, k) = std::exp(kI * (dual.nodes[k] * th.nodes[j]));
    return kernels::apply_along(F, axis, m, th);
  }
  if (dual.kind != AxisKind::DualRotation3 || spatial.size() != 3)
    throw ContractViolation("compact_inverse: expected a K dual axis and matching spatial axes");
  const int L = dual.band_limit, D = 2 * L + 1;
  const Axis &aa = spatial[0], &ab = spatial[1], &ag = spatial[2];
  const std::size_t nb = ab.size();
  std::vector<Eigen::MatrixXd> dtab;
  for (std::size_t b = 0; b < nb; ++b)
    for (int l = 0; l <= L; ++l) dtab.push_back(wigner_small_d(l, ab.nodes[b]));
  std::size_t outer = 1, trailing = 1;
  for (std::size_t d = 0; d < axis; ++d) outer *= F.axis(d).size();
  for (std::size_t d = axis + 1; d < F.rank(); ++d) trailing *= F.axis(d).size();
  // G(q, b, p) = sum_l (2l+1) T^l_{pq} d^l_{qp}(beta_b)
  Axis qa = dual_circle_axis("_q", L), pa = dual_circle_axis("_p", L);
  std::vector<Axis> axes;
  for (std::size_t d = 0; d < axis; ++d) axes.push_back(F.axis(d));
  axes.push_back(qa);
  axes.push_back(ab);
  axes.push_back(pa);
  for (std::size_t d = axis + 1; d < F.rank(); ++d) axes.push_back(F.axis(d));
  GridFunction g(std::move(axes));
  const std::size_t rows = dual.size();
  const std::size_t block = static_cast<std::size_t>(D) * nb * D;
  const std::ptrdiff_t tasks = static_cast<std::ptrdiff_t>(outer * block);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t task = 0; task < tasks; ++task) {
    const std::size_t o = static_cast<std::size_t>(task) / block, r = static_cast<std::size_t>(task) % block;
    const int q = static_cast<int>(r / (nb * D)) - L;
    const std::size_t b = (r / D) % nb;
    const int p = static_cast<int>(r % D) - L;
    for (std::size_t t = 0; t < trailing; ++t) {
      cplx acc = 0.0;
      for (int l = std::max(std::abs(p), std::abs(q)); l <= L; ++l) {
        const double dv = dtab[b * (L + 1) + l](q + l, p + l);
        acc += (2.0 * l + 1.0) * dv * F[(o * rows + so3_flat(l, p, q)) * trailing + t];
      }
      g[(o * block + r) * trailing + t] = acc;
    }
  }
  CMat ma(aa.size(), D), mg(ag.size(), D);
  for (std::size_t j = 0; j < aa.size(); ++j)
    for (int q = -L; q <= L; ++q) ma(j, q + L) = std::exp(-kI * (q * aa.nodes[j]));
  for (std::size_t j = 0; j < ag.size(); ++j)
    for (int p = -L; p <= L; ++p) mg(j, p + L) = std::exp(-kI * (p * ag.nodes[j]));
  g = kernels::apply_along(g, axis, ma, aa);
  g = kernels::apply_along(g, axis + 2, mg, ag);
  g.ordering = F.ordering;
  return g;
}

CompactSpectrum compact_spectrum_from_axis(const GridFunction& F) {
  if (F.rank() != 1) throw ContractViolation("compact_spectrum_from_axis: expected a single dual axis");
  const Axis& a = F.axis(0);
  CompactSpectrum s;
  s.band_limit = a.band_limit;
  if (a.kind == AxisKind::DualCircle) {
    s.group_n = 2;
    for (std::size_t k = 0; k < a.size(); ++k) {
      CMat b(1, 1);
      b(0, 0) = F[k];
      s.blocks[static_cast<int>(a.nodes[k])] = b;
    }
    return s;
  }
  if (a.kind != AxisKind::DualRotation3) throw ContractViolation("compact_spectrum_from_axis: not a K dual axis");
  s.group_n = 3;
  for (int l = 0; l <= a.band_limit; ++l) {
    CMat b(2 * l + 1, 2 * l + 1);
    for (int p = -l; p <= l; ++p)
      for (int q = -l; q <= l; ++q) b(p + l, q + l) = F[so3_flat(l, p, q)];
    s.blocks[l] = b;
  }
  return s;
}

CompactSpectrum peter_weyl(const SampledFunction& f, int band) {
  if (f.rank() != 1 && f.rank() != 3) throw ContractViolation("peter_weyl: expected K axes only");
  return compact_spectrum_from_axis(compact_forward(f, 0, band));
}

CompactSpectrum peter_weyl(const GroupFunction& f, const QuadratureRule& rule, int band) {
  if (rule.factor() != RuleFactor::K_SO2 && rule.factor() != RuleFactor::K_SO3)
    throw ContractViolation("peter_weyl: rule is not a K rule");
  require_compact_quadrature(rule.axes(), band);
  const int n = rule.factor() == RuleFactor::K_SO2 ? 2 : 3;
  auto sampled = sample(rule.axes(), [&](std::span<const double> x) {
    return f(GroupElement::trusted(GroupTag::Rotation, rotation_from_angles(n, x)));
  });
  return peter_weyl(sampled, band);
}

cplx peter_weyl_evaluate(const CompactSpectrum& spec, const GroupElement& k) {
  cplx acc = 0.0;
  for (const auto& [label, block] : spec.blocks) {
    CMat D = irrep_matrix(label, k);
    acc += static_cast<double>(block.rows()) * (block * D).trace();
  }
  return acc;
}

GroupFunction peter_weyl_inverse(const CompactSpectrum& spec) {
  return [spec](const GroupElement& k) { return peter_weyl_evaluate(spec, k); };
}

double compact_plancherel_residual(const GroupFunction& f, const QuadratureRule& rule, int band) {
  const int n = rule.factor() == RuleFactor::K_SO2 ? 2 : 3;
  auto sampled = sample(rule.axes(), [&](std::span<const double> x) {
    return f(GroupElement::trusted(GroupTag::Rotation, rotation_from_angles(n, x)));
  });
  const double left = kernels::weighted_norm2(sampled);
  const double right = peter_weyl(sampled, band).energy();
  return std::abs(left - right) / std::max(left, 1e-300);
}

}  // namespace gaf
