#pragma once

#include <complex>

#include <Eigen/Dense>

namespace gaf {

using cplx = std::complex<double>;

// Largest matrix we ever build: the unipotent (n+1)x(n+1) level at n = 3.
inline constexpr int kMaxDim = 4;

// Dynamic size with inline storage, so hot loops never touch the heap.
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, kMaxDim, kMaxDim>;
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using CMat = Eigen::MatrixXcd;

}  // namespace gaf
