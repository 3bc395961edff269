#include "gaf/kernels.hpp"

#include "gaf/errors.hpp"

namespace gaf::kernels {

namespace {

void check_shapes(std::span<const cplx> in, std::size_t outer, std::size_t trailing, const CMat& m,
                  std::span<cplx> out) {
  if (in.size() != outer * static_cast<std::size_t>(m.cols()) * trailing ||
      out.size() != outer * static_cast<std::size_t>(m.rows()) * trailing)
    throw ContractViolation("contract: buffer sizes do not match the matrix shape");
}

GridFunction apply_block_impl(const GridFunction& f, std::size_t first, std::size_t count, const CMat& m,
                              const Axis& target, bool parallel) {
  if (first + count > f.rank() || count == 0) throw ContractViolation("apply_along: axis range out of bounds");
  std::size_t outer = 1, block = 1, trailing = 1;
  for (std::size_t d = 0; d < first; ++d) outer *= f.axis(d).size();
  for (std::size_t d = first; d < first + count; ++d) block *= f.axis(d).size();
  for (std::size_t d = first + count; d < f.rank(); ++d) trailing *= f.axis(d).size();
  if (static_cast<std::size_t>(m.cols()) != block || static_cast<std::size_t>(m.rows()) != target.size())
    throw ContractViolation("apply_along: matrix shape does not match axes");
  std::vector<Axis> axes;
  for (std::size_t d = 0; d < first; ++d) axes.push_back(f.axis(d));
  axes.push_back(target);
  for (std::size_t d = first + count; d < f.rank(); ++d) axes.push_back(f.axis(d));
  GridFunction out(std::move(axes));
  if (parallel)
    contract(f.values(), outer, trailing, m, out.values());
  else
    contract_serial(f.values(), outer, trailing, m, out.values());
  out.ordering = f.ordering;
  return out;
}

}  // namespace

void contract(std::span<const cplx> in, std::size_t outer, std::size_t trailing, const CMat& m,
              std::span<cplx> out) {
  check_shapes(in, outer, trailing, m, out);
  const std::ptrdiff_t rows = m.rows(), cols = m.cols();
  const std::ptrdiff_t tasks = static_cast<std::ptrdiff_t>(outer) * rows;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t task = 0; task < tasks; ++task) {
    const std::ptrdiff_t o = task / rows, s = task % rows;
    // real arithmetic: complex operator* takes the slow NaN-recovery path
    double* __restrict dst = reinterpret_cast<double*>(out.data() + (o * rows + s) * static_cast<std::ptrdiff_t>(trailing));
    for (std::size_t t = 0; t < 2 * trailing; ++t) dst[t] = 0.0;
    const cplx* src = in.data() + o * cols * static_cast<std::ptrdiff_t>(trailing);
    for (std::ptrdiff_t b = 0; b < cols; ++b) {
      const double cr = m(s, b).real(), ci = m(s, b).imag();
      const double* __restrict row = reinterpret_cast<const double*>(src + b * static_cast<std::ptrdiff_t>(trailing));
      for (std::size_t t = 0; t < trailing; ++t) {
        const double xr = row[2 * t], xi = row[2 * t + 1];
        dst[2 * t] += cr * xr - ci * xi;
        dst[2 * t + 1] += cr * xi + ci * xr;
      }
    }
  }
}

void contract_serial(std::span<const cplx> in, std::size_t outer, std::size_t trailing, const CMat& m,
                     std::span<cplx> out) {
  check_shapes(in, outer, trailing, m, out);
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t s = 0; s < rows; ++s)
      for (std::size_t t = 0; t < trailing; ++t) {
        cplx acc = 0.0;
        for (std::size_t b = 0; b < cols; ++b) acc += m(s, b) * in[(o * cols + b) * trailing + t];
        out[(o * rows + s) * trailing + t] = acc;
      }
}

GridFunction apply_along(const GridFunction& f, std::size_t axis, const CMat& m, const Axis& target) {
  return apply_block_impl(f, axis, 1, m, target, true);
}

GridFunction apply_along_serial(const GridFunction& f, std::size_t axis, const CMat& m, const Axis& target) {
  return apply_block_impl(f, axis, 1, m, target, false);
}

GridFunction apply_along_block(const GridFunction& f, std::size_t first, std::size_t count, const CMat& m,
                               const Axis& target) {
  return apply_block_impl(f, first, count, m, target, true);
}

double weighted_norm2(const GridFunction& f) {
  const std::vector<double> w = f.weights();
  const auto& v = f.values();
  return deterministic_sum<double>(v.size(), [&](std::size_t i) { return w[i] * std::norm(v[i]); });
}

double weighted_norm2_serial(const GridFunction& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.weight(i) * std::norm(f[i]);
  return s;
}

cplx weighted_sum(const GridFunction& f) {
  const std::vector<double> w = f.weights();
  const auto& v = f.values();
  return deterministic_sum<cplx>(v.size(), [&](std::size_t i) { return w[i] * v[i]; });
}

cplx weighted_sum_serial(const GridFunction& f) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += f.weight(i) * f[i];
  return s;
}

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace gaf::kernels
