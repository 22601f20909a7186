#pragma once

#include <cstddef>

#include "kapteyn/bessel.hpp"

namespace kapteyn {

enum class RadiusBranch { small_t, large_t, kapteyn_domain };

const char* to_string(RadiusBranch branch);

/// Output of an implicit-equation solve.
struct RadiusResult {
  double t = 0.0;
  double radius = 0.0;
  RadiusBranch branch = RadiusBranch::small_t;
  double residual = 0.0;  // |LHS - 1| of the defining equation, < 1e-12
  std::size_t iterations = 0;
};

/// Omega(z) = |z exp(w) / (1 + w)| with w = sqrt1mz2(z).
double omega(ComplexValue z);

/// True iff Omega(z) |t| < 1, i.e. sum t^n J_n(nz) converges.
bool kapteyn_converges(ComplexValue z, double t);

/// Radius r(t) of the disc |z| < r(t) on which the Kapteyn series converges:
///   r exp(sqrt(1+r^2)) / (1 + sqrt(1+r^2)) * t = 1.
/// Throws Error(domain) for t <= 0 or non-finite t.
RadiusResult solve_r(double t);

/// Radius R(t) of the power series sum A_n(t) z^n.
///
/// For 0 < t <= 1:
///   e^{-sqrt 2} (1 + sqrt 2) R exp(sqrt(1+R^2)) / (1 + sqrt(1+R^2)) * t = 1
/// For t >= 1 (R searched in (0, 1]):
///   R exp(sqrt(1-R^2)) / (1 + sqrt(1-R^2)) * t = 1
///
/// At t = 1 both equations give R = 1; the large-t value is returned after
/// checking it against the small-t one. Throws Error(domain) for t <= 0.
RadiusResult solve_R(double t);

/// Small-t asymptote of psi = 1/R: 1 / (-ln t + sqrt 2 + ln(sqrt 2 - 1)).
/// Throws Error(domain) outside 0 < t < 1.
double psi_small_t(double t);

/// Large-t asymptote of psi = 1/R: (e/2) t. Note psi_large_t(1) = e/2 while
/// the exact psi(1) is 1. Throws Error(domain) for t < 1.
double psi_large_t(double t);

/// |A_n(t)|^(-1/n), computed in the log domain from the exact coefficient.
/// Throws Error(zero_coefficient) when A_n(t) is exactly zero.
double coeff_radius_estimate(int n, double t);

}  // namespace kapteyn
