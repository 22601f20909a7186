#include "kapteyn/domain.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "kapteyn/coeffs.hpp"
#include "kapteyn/error.hpp"

namespace kapteyn {
namespace {

constexpr double kBracketLow = 1e-300;
constexpr double kResidualLimit = 1e-12;
constexpr int kMaxIterations = 5000;

const double kSqrt2 = std::numbers::sqrt2;
// ln(e^{-sqrt 2} (1 + sqrt 2)); the small-t equation is shifted by this.
const double kSmallTShift = -kSqrt2 + std::log1p(kSqrt2);

void require_positive_t(double t) {
  if (!std::isfinite(t) || !(t > 0.0)) {
    throw Error(ErrorKind::domain, "t must be finite and > 0");
  }
}

// ln[x exp(sqrt(1+x^2)) / (1 + sqrt(1+x^2))]
double log_kernel_plus(double x) {
  const double u = std::hypot(1.0, x);
  return std::log(x) + u - std::log1p(u);
}

// ln[x exp(sqrt(1-x^2)) / (1 + sqrt(1-x^2))], 0 < x <= 1
double log_kernel_minus(double x) {
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  return std::log(x) + s - std::log1p(s);
}

struct Root {
  double x;
  double residual;
  std::size_t iterations;
};

// Solves exp(log_lhs(x)) = 1 for log_lhs strictly increasing. The bracket
// starts at [1e-300, 1]; the upper end doubles until it straddles the root
// unless `cap_at_one` is set. Bisection runs until the midpoint is no longer
// representable strictly inside the bracket.
Root bisect(const std::function<double(double)>& log_lhs, bool cap_at_one) {
  double lo = kBracketLow;
  double hi = 1.0;
  std::size_t iterations = 0;

  double f_hi = log_lhs(hi);
  while (f_hi < 0.0) {
    if (cap_at_one) {
      throw Error(ErrorKind::numerical, "no root in (0, 1]");
    }
    lo = hi;
    hi *= 2.0;
    f_hi = log_lhs(hi);
    if (++iterations > kMaxIterations || !std::isfinite(hi)) {
      throw Error(ErrorKind::numerical, "bracket expansion failed");
    }
  }
  if (f_hi == 0.0) return {hi, 0.0, iterations};
  double f_lo = log_lhs(lo);
  if (f_lo >= 0.0) {
    throw Error(ErrorKind::numerical, "root below 1e-300");
  }

  while (iterations < kMaxIterations) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    ++iterations;
    const double f_mid = log_lhs(mid);
    if (f_mid == 0.0) return {mid, 0.0, iterations};
    if (f_mid < 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double res_lo = std::abs(std::expm1(f_lo));
  const double res_hi = std::abs(std::expm1(f_hi));
  return res_lo < res_hi ? Root{lo, res_lo, iterations}
                         : Root{hi, res_hi, iterations};
}

RadiusResult finish(double t, RadiusBranch branch, const Root& root) {
  if (!(root.residual < kResidualLimit) || !(root.x > 0.0)) {
    throw Error(ErrorKind::numerical,
                "radius solve left residual " + std::to_string(root.residual));
  }
  return {t, root.x, branch, root.residual, root.iterations};
}

RadiusResult solve_R_small(double t) {
  const double log_t = std::log(t);
  return finish(t, RadiusBranch::small_t, bisect([&](double x) {
                  return kSmallTShift + log_kernel_plus(x) + log_t;
                }, false));
}

RadiusResult solve_R_large(double t) {
  const double log_t = std::log(t);
  return finish(t, RadiusBranch::large_t, bisect([&](double x) {
                  return log_kernel_minus(x) + log_t;
                }, true));
}

}  // namespace

const char* to_string(RadiusBranch branch) {
  switch (branch) {
    case RadiusBranch::small_t: return "small_t";
    case RadiusBranch::large_t: return "large_t";
    case RadiusBranch::kapteyn_domain: return "kapteyn_domain";
  }
  return "?";
}

double omega(ComplexValue z) {
  require_finite(z, "z");
  const ComplexValue w = sqrt1mz2(z);
  // Re(w) >= 0 keeps 1 + w away from zero.
  return std::abs(z) * std::exp(w.real()) / std::abs(1.0 + w);
}

bool kapteyn_converges(ComplexValue z, double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::domain, "t must be finite");
  return omega(z) * std::abs(t) < 1.0;
}

RadiusResult solve_r(double t) {
  require_positive_t(t);
  const double log_t = std::log(t);
  return finish(t, RadiusBranch::kapteyn_domain, bisect([&](double x) {
                  return log_kernel_plus(x) + log_t;
                }, false));
}

RadiusResult solve_R(double t) {
  require_positive_t(t);
  if (t < 1.0) return solve_R_small(t);
  RadiusResult large = solve_R_large(t);
  if (t == 1.0) {
    const RadiusResult small = solve_R_small(t);
    if (std::abs(small.radius - large.radius) > 1e-10) {
      throw Error(ErrorKind::numerical, "R(1) branches disagree");
    }
  }
  return large;
}

double psi_small_t(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw Error(ErrorKind::domain, "psi_small_t needs 0 < t < 1");
  }
  return 1.0 / (-std::log(t) + kSqrt2 + std::log(kSqrt2 - 1.0));
}

double psi_large_t(double t) {
  if (!(t >= 1.0) || !std::isfinite(t)) {
    throw Error(ErrorKind::domain, "psi_large_t needs t >= 1");
  }
  return 0.5 * std::numbers::e * t;
}

double coeff_radius_estimate(int n, double t) {
  const LogAbs a = a_eval_logabs(n, t);
  if (a.sign == 0) {
    throw Error(ErrorKind::zero_coefficient,
                "A_" + std::to_string(n) + "(t) is exactly zero; perturb t");
  }
  return std::exp(-a.log_abs / n);
}

}  // namespace kapteyn
