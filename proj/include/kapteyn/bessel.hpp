#pragma once

#include <complex>
#include <cstddef>

namespace kapteyn {

using ComplexValue = std::complex<double>;

/// Result of a truncated series evaluation.
struct SeriesEvalReport {
  ComplexValue value;
  std::size_t terms_used = 0;
  // Bound on the magnitude of everything that was left out.
  double tail_bound = 0.0;
  // Rough floating-point error estimate: eps times the sum of |term|.
  double rounding_bound = 0.0;
};

/// Throws Error(domain) unless both components are finite.
void require_finite(ComplexValue z, const char* what);

/// J_n(n z) from the ascending series
///
///   J_n(nz) = sum_j (-1)^j / (j! (n+j)!) (nz/2)^(n+2j)
///
/// The leading term is formed in log space and the rest by the ratio
/// recurrence, so no factorial is ever materialised. Summation stops once
/// j > |nz/2| and the remaining tail is provably below `tol` (absolute).
///
/// Throws Error(invalid_argument) for n < 1 or tol <= 0, Error(domain) for
/// |z| > 4 or non-finite z, Error(tolerance_not_reached) after 10000 terms.
SeriesEvalReport bessel_jn_scaled(int n, ComplexValue z, double tol);

/// sqrt(1 - z^2) on the branch with Re >= 0; Im >= 0 when Re == 0.
ComplexValue sqrt1mz2(ComplexValue z);

}  // namespace kapteyn
