#include "kapteyn/bessel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "bessel_detail.hpp"
#include "kapteyn/error.hpp"

namespace kapteyn {
namespace {

constexpr int kMaxTerms = 10000;
constexpr double kMaxAbsZ = 4.0;

// u^n by repeated squaring; keeps real inputs exactly real.
ComplexValue integer_power(ComplexValue u, int n) {
  ComplexValue result{1.0, 0.0};
  while (n > 0) {
    if (n & 1) result *= u;
    u *= u;
    n >>= 1;
  }
  return result;
}

}  // namespace

void require_finite(ComplexValue z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::domain, std::string(what) + " must be finite");
  }
}

namespace detail {

SeriesEvalReport scaled_jn_series(int n, ComplexValue z, double tol,
                                  double log_scale) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "order n must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "tol must be > 0");
  require_finite(z, "z");
  if (std::abs(z) > kMaxAbsZ) {
    throw Error(ErrorKind::domain, "|z| > 4 is outside the supported range");
  }

  SeriesEvalReport report;
  if (z == ComplexValue{0.0, 0.0}) {
    report.terms_used = 1;
    return report;
  }

  const ComplexValue w = 0.5 * static_cast<double>(n) * z;
  const double abs_w = std::abs(w);
  const ComplexValue x = -w * w;
  const double abs_x = abs_w * abs_w;

  // (w^n / n!) * exp(log_scale), magnitude and phase formed separately.
  const double log_mag =
      n * std::log(abs_w) - std::lgamma(n + 1.0) + log_scale;
  ComplexValue term = std::exp(log_mag) * integer_power(w / abs_w, n);

  ComplexValue sum{0.0, 0.0};
  double abs_sum = 0.0;
  for (int j = 0; j < kMaxTerms; ++j) {
    sum += term;
    abs_sum += std::abs(term);
    const ComplexValue next =
        term * x / (static_cast<double>(j + 1) * static_cast<double>(n + j + 1));
    // Every later ratio |term_{m+1}/term_m| is at most this one.
    const double q =
        abs_x / (static_cast<double>(j + 2) * static_cast<double>(n + j + 2));
    if (j + 1 > abs_w && q < 1.0) {
      const double tail = std::abs(next) / (1.0 - q);
      if (tail < tol) {
        report.value = sum;
        report.terms_used = static_cast<std::size_t>(j + 1);
        report.tail_bound = tail;
        report.rounding_bound =
            2.0 * std::numeric_limits<double>::epsilon() * abs_sum;
        return report;
      }
    }
    term = next;
  }
  throw Error(ErrorKind::tolerance_not_reached,
              "Bessel series did not reach tolerance in 10000 terms");
}

}  // namespace detail

SeriesEvalReport bessel_jn_scaled(int n, ComplexValue z, double tol) {
  return detail::scaled_jn_series(n, z, tol, 0.0);
}

ComplexValue sqrt1mz2(ComplexValue z) {
  // (1-z)(1+z) keeps accuracy near z = +-1.
  ComplexValue w = std::sqrt((1.0 - z) * (1.0 + z));
  if (w.real() == 0.0) w = {0.0, std::abs(w.imag())};
  return w;
}

}  // namespace kapteyn
