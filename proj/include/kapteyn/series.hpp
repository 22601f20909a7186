#pragma once

#include <cstddef>
#include <vector>

#include "kapteyn/bessel.hpp"
#include "kapteyn/coeffs.hpp"

namespace kapteyn {

enum class SequenceConvention { kapteyn_alpha, taylor_a };

/// Coefficients indexed from 1: values[0] holds index 1.
struct CoeffSequence {
  std::vector<double> values;
  SequenceConvention convention = SequenceConvention::taylor_a;
};

/// How a Kapteyn expansion is normalised.
///   plain:   f(z) = sum_{n>=1} alpha_n J_n(nz)
///   theorem: f(z) = alpha_0 + 2 sum_{n>=1} alpha_n J_n(nz)
/// The two differ by a factor 2 on every alpha_n, n >= 1.
enum class KapteynNormalization { plain, theorem };

struct ThetaTerm {
  int exponent = 0;
  BigRational coefficient;
};

/// Kapteyn polynomial Theta_n(z) as a Laurent polynomial, nonzero terms only.
///   Theta_0(z) = 1/z
///   Theta_n(z) = 1/4 sum_{k<=n/2} (n-2k)^2 (n-k-1)!/k! (nz/2)^(2k-n)
///
/// The residue of Theta_n f does not pair with a_{n-2k} as written; that
/// pairing needs the extra factor 2/(nz). See README.
struct ThetaPoly {
  int n = 0;
  std::vector<ThetaTerm> terms;  // ascending exponent
};

ThetaPoly theta_poly(int n);

/// F(z, t) = sum t^n J_n(nz), summed until five consecutive terms fall below
/// tol * max(1, |partial sum|); at most 2000 terms.
/// Throws Error(not_in_domain) unless Omega(z)|t| < 1 and
/// Error(no_convergence) at the cap.
SeriesEvalReport eval_direct(ComplexValue z, double t, double tol);

/// F(z, t) = sum A_n(t) z^n with every A_n(t) evaluated exactly at the
/// double t and rounded once. Same stopping rule as eval_direct.
/// Throws Error(outside_radius) unless |z| < R(|t|) - 1e-6.
SeriesEvalReport eval_power(ComplexValue z, double t, double tol);

/// |1/(1-z) - 1 - 2 F(z, 1)|.
double fundamental_residual(ComplexValue z, double tol);

/// Taylor -> Kapteyn:
///   alpha_n = 1/4 sum_{k<=n/2} (n-2k)^2 (n-k-1)! / (k! (n/2)^(n-2k+1)) a_{n-2k}
/// which is the theorem normalisation; plain doubles it.
std::vector<BigRational> taylor_to_kapteyn_exact(
    const std::vector<BigRational>& a, std::size_t count,
    KapteynNormalization normalization = KapteynNormalization::plain);

/// Kapteyn (plain) -> Taylor:
///   a_k = sum_{n<=k} alpha_n cos(pi (k-n)/2) n^k / ((k-n)!! (k+n)!!)
std::vector<BigRational> kapteyn_to_taylor_exact(
    const std::vector<BigRational>& alpha, std::size_t count);

/// Double-valued wrappers: inputs are converted exactly, the maps run in
/// rationals and each output is rounded once. Throws Error(invalid_argument)
/// on a convention mismatch or fewer than `count` input values.
CoeffSequence taylor_to_kapteyn(
    const CoeffSequence& a, std::size_t count,
    KapteynNormalization normalization = KapteynNormalization::plain);
CoeffSequence kapteyn_to_taylor(const CoeffSequence& alpha, std::size_t count);

}  // namespace kapteyn
