#pragma once

#include <cstdint>
#include <string>

#include "gaf/types.hpp"

namespace gaf {

struct IdentityReport {
  std::string identity;
  std::string level;
  int n = 2;
  cplx left{0.0, 0.0};
  cplx right{0.0, 0.0};
  double residual = 0.0;
  std::string grid;
  double seconds = 0.0;
  std::uint64_t seed = 0;
  // Negative tolerance means the report is informational only.
  double tolerance = -1.0;
  bool passed = true;
  std::string note;

  bool asserted() const { return tolerance >= 0.0; }
};

// |l - r| / max(|l|, 1e-300)
double relative_residual(cplx left, cplx right);

// Sets residual from left/right and pass/fail from tolerance.
void finalize(IdentityReport& r, double tolerance);

}  // namespace gaf
