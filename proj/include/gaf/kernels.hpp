#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <omp.h>

#include "gaf/grid.hpp"
#include "gaf/types.hpp"

// Data-parallel building blocks. Each OpenMP kernel has a plain serial twin used as
// the test reference. Reductions split work into fixed-size blocks and combine the
// partial sums pairwise in block order, so the result does not depend on thread count.
namespace gaf::kernels {

inline constexpr std::size_t kReduceBlock = 512;

// out[o, s, t] = sum_b m(s, b) * in[o, b, t], with in of shape (outer, m.cols(), trailing)
// and out of shape (outer, m.rows(), trailing).
void contract(std::span<const cplx> in, std::size_t outer, std::size_t trailing, const CMat& m,
              std::span<cplx> out);
void contract_serial(std::span<const cplx> in, std::size_t outer, std::size_t trailing, const CMat& m,
                     std::span<cplx> out);

// Apply m along axis `axis` of f, replacing that axis by `target`.
GridFunction apply_along(const GridFunction& f, std::size_t axis, const CMat& m, const Axis& target);
GridFunction apply_along_serial(const GridFunction& f, std::size_t axis, const CMat& m, const Axis& target);
// Same, for a block of `count` consecutive axes flattened into one (row-major).
GridFunction apply_along_block(const GridFunction& f, std::size_t first, std::size_t count, const CMat& m,
                               const Axis& target);

// sum_i w_i |v_i|^2 with w the product-grid weights.
double weighted_norm2(const GridFunction& f);
double weighted_norm2_serial(const GridFunction& f);
cplx weighted_sum(const GridFunction& f);
cplx weighted_sum_serial(const GridFunction& f);

namespace detail {
template <class T>
T combine_pairwise(std::vector<T>& partial) {
  if (partial.empty()) return T{};
  for (std::size_t stride = 1; stride < partial.size(); stride *= 2)
    for (std::size_t i = 0; i + stride < partial.size(); i += 2 * stride) partial[i] += partial[i + stride];
  return partial[0];
}
}  // namespace detail

// sum_{i < count} term(i), thread-count independent.
template <class T, class F>
T deterministic_sum(std::size_t count, F&& term) {
  const std::size_t blocks = (count + kReduceBlock - 1) / kReduceBlock;
  std::vector<T> partial(blocks, T{});
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kReduceBlock;
    const std::size_t hi = std::min(count, lo + kReduceBlock);
    T s{};
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[static_cast<std::size_t>(b)] = s;
  }
  return detail::combine_pairwise(partial);
}

template <class T, class F>
T serial_sum(std::size_t count, F&& term) {
  T s{};
  for (std::size_t i = 0; i < count; ++i) s += term(i);
  return s;
}

// Evaluate out[i] = fn(i) for every i in parallel.
template <class T, class F>
void parallel_fill(std::vector<T>& out, F&& fn) {
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(out.size()); ++i)
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
}

void set_thread_count(int n);
int thread_count();

}  // namespace gaf::kernels
