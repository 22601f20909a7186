#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kapteyn {

// Exact arithmetic is GMP underneath; mpq_class stays in lowest terms with
// a positive denominator through every arithmetic operation.
using BigInteger = mpz_class;
using BigRational = mpq_class;

/// "p/q", or just "p" when the denominator is 1.
std::string to_string(const BigRational& value);

/// The exact value of a finite double (every double is a dyadic rational).
BigRational rational_from_double(double value);

/// round(t * 2^64) / 2^64, ties to even. Throws Error(domain) for non-finite t.
BigRational dyadic_round(double t);

/// ln|value| for a nonzero integer of any size.
double log_abs(const BigInteger& value);

/// m!! with 0!! = 1. Throws Error(invalid_argument) for m < 0.
BigInteger double_factorial(int m);

/// C_k^n = cos((n-k) pi/2) k^n / ((n-k)!! (n+k)!!), for 1 <= n, 0 <= k <= n.
/// The cosine is evaluated combinatorially: zero for odd n-k, (-1)^((n-k)/2)
/// otherwise.
BigRational coeff_closed_form(int n, int k);

/// Triangular table C[n][k], 1 <= n <= max_n, 0 <= k <= n. Immutable once
/// built, so it can be shared read-only between threads.
class CoefficientTable {
 public:
  int max_n() const { return static_cast<int>(rows_.size()) - 1; }

  /// Throws Error(invalid_argument) outside 1 <= n <= max_n, 0 <= k <= n.
  const BigRational& at(int n, int k) const;

  /// Row n, indexed by k = 0..n.
  const std::vector<BigRational>& row(int n) const;

  std::size_t entry_count() const;

 private:
  friend CoefficientTable coeff_table_recurrence(int max_n);
  // rows_[0] is the A_0 = 0 row the recurrence starts from.
  std::vector<std::vector<BigRational>> rows_;
};

/// Builds the table from (n^2 - k^2) C_k^n = -k^2 C_k^{n-2}, seeded on the
/// diagonal with C_n^n = n^n / (2n)!! and C_{n-1}^n = 0.
CoefficientTable coeff_table_recurrence(int max_n);

/// A_n(t) as an exact coefficient vector indexed by the power of t.
struct APoly {
  int n = 0;
  std::vector<BigRational> coeffs;  // size n + 1

  /// Horner evaluation.
  BigRational operator()(const BigRational& t) const;
};

/// A_n(t) = (-1)^n/n! sum_{k<=n/2} (-1)^k binom(n,k) (k - n/2)^n t^(n-2k).
APoly a_poly(int n);

BigRational a_eval_exact(int n, const BigRational& t);

struct LogAbs {
  double log_abs = 0.0;  // -inf when sign == 0
  int sign = 0;
};

/// ln|A_n(t)| and its sign. t is first rounded to a dyadic rational with 64
/// fractional bits; A_n is then evaluated exactly at that point and only the
/// final logarithm is taken in floating point.
LogAbs a_eval_logabs(int n, double t);

/// ln|A_n(t)| and its sign at an exact rational t.
LogAbs a_eval_logabs(int n, const BigRational& t);

}  // namespace kapteyn
