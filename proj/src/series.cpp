#include "kapteyn/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bessel_detail.hpp"
#include "kapteyn/domain.hpp"
#include "kapteyn/error.hpp"

namespace kapteyn {
namespace {

constexpr int kMaxSeriesTerms = 2000;
constexpr std::size_t kQuietRun = 5;
constexpr double kRadiusMargin = 1e-6;

BigInteger factorial(int n) {
  BigInteger f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

BigRational rational_power(const BigRational& base, int exponent) {
  BigRational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(),
             static_cast<unsigned long>(exponent));
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(),
             static_cast<unsigned long>(exponent));
  return result;  // a power of a reduced fraction is reduced
}

// 1/4 (n-2k)^2 (n-k-1)! / k!
BigRational theta_prefactor(int n, int k) {
  const int m = n - 2 * k;
  BigRational c{BigInteger(m) * m * factorial(n - k - 1), 4 * factorial(k)};
  c.canonicalize();
  return c;
}

void require_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) {
    throw Error(ErrorKind::invalid_argument, "tol must be finite and > 0");
  }
}

// Shared stopping rule for both evaluators: stop after kQuietRun consecutive
// terms below tol * max(1, |sum|). The tail is estimated as a geometric
// series through the recent terms; its ratio q is the larger of the known
// limiting ratio and the ratio between the maxima of the last two blocks of
// kQuietRun terms (single-term ratios are useless once A_n(t) oscillates).
class SeriesAccumulator {
 public:
  SeriesAccumulator(double tol, double limit_ratio)
      : tol_(tol), limit_ratio_(limit_ratio) {}

  // Returns true once the sum is converged.
  bool add(ComplexValue term) {
    sum_ += term;
    const double mag = std::abs(term);
    abs_sum_ += mag;
    mags_.push_back(mag);

    if (mag < tol_ * std::max(1.0, std::abs(sum_))) {
      ++quiet_;
    } else {
      quiet_ = 0;
    }
    if (quiet_ < kQuietRun) return false;

    const double q = std::max(limit_ratio_, block_ratio());
    if (!(q < 1.0)) return false;
    // Envelope carried to the last index, so one accidentally small term
    // cannot shrink the estimate.
    double envelope = 0.0;
    for (std::size_t back = 0; back < kQuietRun; ++back) {
      envelope = std::max(envelope,
                          mags_[mags_.size() - 1 - back] * std::pow(q, back));
    }
    tail_ = envelope * q / (1.0 - q);
    return true;
  }

  ComplexValue sum() const { return sum_; }

  SeriesEvalReport report(double extra_tail, double extra_rounding) const {
    SeriesEvalReport r;
    r.value = sum_;
    r.terms_used = mags_.size();
    r.tail_bound = tail_ + extra_tail;
    r.rounding_bound =
        extra_rounding + 2.0 * std::numeric_limits<double>::epsilon() * abs_sum_;
    return r;
  }

 private:
  double block_max(std::size_t end) const {
    return *std::max_element(mags_.begin() + static_cast<std::ptrdiff_t>(end - kQuietRun),
                             mags_.begin() + static_cast<std::ptrdiff_t>(end));
  }

  double block_ratio() const {
    const std::size_t n = mags_.size();
    if (n < 2 * kQuietRun) {
      // Too short for blocks: all-zero terms are converged, anything else
      // falls back to the worst single-step ratio.
      double worst = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        if (mags_[i] == 0.0) continue;
        worst = std::max(worst, mags_[i - 1] == 0.0
                                    ? std::numeric_limits<double>::infinity()
                                    : mags_[i] / mags_[i - 1]);
      }
      return worst;
    }
    const double recent = block_max(n);
    const double earlier = block_max(n - kQuietRun);
    if (recent == 0.0) return 0.0;
    if (earlier == 0.0) return std::numeric_limits<double>::infinity();
    return std::pow(recent / earlier, 1.0 / kQuietRun);
  }

  double tol_;
  double limit_ratio_;
  ComplexValue sum_{0.0, 0.0};
  double abs_sum_ = 0.0;
  std::vector<double> mags_;
  std::size_t quiet_ = 0;
  double tail_ = 0.0;
};

SeriesEvalReport zero_report() {
  SeriesEvalReport r;
  r.terms_used = kQuietRun;
  return r;
}

void require_sequence(const CoeffSequence& seq, SequenceConvention expected,
                      std::size_t count) {
  if (seq.convention != expected) {
    throw Error(ErrorKind::invalid_argument, "coefficient convention mismatch");
  }
  if (seq.values.size() < count) {
    throw Error(ErrorKind::invalid_argument,
                "sequence has " + std::to_string(seq.values.size()) +
                    " values, need " + std::to_string(count));
  }
}

std::vector<BigRational> to_exact(const std::vector<double>& values,
                                  std::size_t count) {
  std::vector<BigRational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(rational_from_double(values[i]));
  }
  return out;
}

std::vector<double> to_double(const std::vector<BigRational>& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.get_d());
  return out;
}

}  // namespace

ThetaPoly theta_poly(int n) {
  if (n < 0) throw Error(ErrorKind::invalid_argument, "n must be >= 0");
  ThetaPoly poly;
  poly.n = n;
  if (n == 0) {
    poly.terms.push_back({-1, BigRational(1)});
    return poly;
  }
  // (nz/2)^(2k-n) contributes (2/n)^(n-2k) to the coefficient.
  BigRational two_over_n{2, n};
  two_over_n.canonicalize();
  for (int k = 0; k <= n / 2; ++k) {
    if (n == 2 * k) continue;  // (n-2k)^2 = 0
    BigRational c = theta_prefactor(n, k) * rational_power(two_over_n, n - 2 * k);
    c.canonicalize();
    poly.terms.push_back({2 * k - n, std::move(c)});
  }
  return poly;
}

SeriesEvalReport eval_direct(ComplexValue z, double t, double tol) {
  require_tol(tol);
  require_finite(z, "z");
  if (!kapteyn_converges(z, t)) {
    throw Error(ErrorKind::not_in_domain,
                "Omega(z)|t| >= 1: the Kapteyn series diverges here");
  }
  if (t == 0.0 || z == ComplexValue{0.0, 0.0}) return zero_report();

  const double log_abs_t = std::log(std::abs(t));
  const bool negate_odd = t < 0.0;
  // |t^n J_n(nz)|^(1/n) -> Omega(z)|t|
  SeriesAccumulator acc(tol, omega(z) * std::abs(t));
  double bessel_tail = 0.0;
  double bessel_rounding = 0.0;
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    const double bessel_tol = 1e-3 * tol * std::max(1.0, std::abs(acc.sum()));
    const SeriesEvalReport jn =
        detail::scaled_jn_series(n, z, bessel_tol, n * log_abs_t);
    bessel_tail += jn.tail_bound;
    bessel_rounding += jn.rounding_bound;
    const ComplexValue term = (negate_odd && n % 2 != 0) ? -jn.value : jn.value;
    if (acc.add(term)) {
      SeriesEvalReport r = acc.report(bessel_tail, bessel_rounding);
      if (!std::isfinite(r.rounding_bound)) {
        throw Error(ErrorKind::numerical, "precision lost in Bessel terms");
      }
      return r;
    }
  }
  throw Error(ErrorKind::no_convergence,
              "Kapteyn series not converged after 2000 terms");
}

SeriesEvalReport eval_power(ComplexValue z, double t, double tol) {
  require_tol(tol);
  require_finite(z, "z");
  if (!std::isfinite(t)) throw Error(ErrorKind::domain, "t must be finite");
  if (t == 0.0 || z == ComplexValue{0.0, 0.0}) return zero_report();

  const double radius = solve_R(std::abs(t)).radius;
  const double abs_z = std::abs(z);
  if (!(abs_z < radius - kRadiusMargin)) {
    throw Error(ErrorKind::outside_radius,
                "|z| must be below R(|t|) = " + std::to_string(radius));
  }

  const BigRational exact_t = rational_from_double(t);
  const ComplexValue phase = z / abs_z;
  const double log_abs_z = std::log(abs_z);
  ComplexValue phase_power{1.0, 0.0};
  SeriesAccumulator acc(tol, abs_z / radius);
  for (int n = 1; n <= kMaxSeriesTerms; ++n) {
    phase_power *= phase;
    const LogAbs a = a_eval_logabs(n, exact_t);
    const ComplexValue term =
        a.sign == 0 ? ComplexValue{0.0, 0.0}
                    : static_cast<double>(a.sign) *
                          std::exp(a.log_abs + n * log_abs_z) * phase_power;
    if (acc.add(term)) return acc.report(0.0, 0.0);
  }
  throw Error(ErrorKind::no_convergence,
              "power series not converged after 2000 terms");
}

double fundamental_residual(ComplexValue z, double tol) {
  const SeriesEvalReport f = eval_direct(z, 1.0, tol);
  return std::abs(1.0 / (1.0 - z) - 1.0 - 2.0 * f.value);
}

std::vector<BigRational> taylor_to_kapteyn_exact(
    const std::vector<BigRational>& a, std::size_t count,
    KapteynNormalization normalization) {
  if (a.size() < count) {
    throw Error(ErrorKind::invalid_argument, "Taylor sequence too short");
  }
  std::vector<BigRational> alpha(count, BigRational(0));
  for (std::size_t idx = 0; idx < count; ++idx) {
    const int n = static_cast<int>(idx) + 1;
    BigRational two_over_n{2, n};
    two_over_n.canonicalize();
    BigRational sum(0);
    for (int k = 0; 2 * k < n; ++k) {
      const auto& coeff = a[static_cast<std::size_t>(n - 2 * k - 1)];
      if (coeff == 0) continue;
      sum += theta_prefactor(n, k) *
             rational_power(two_over_n, n - 2 * k + 1) * coeff;
    }
    if (normalization == KapteynNormalization::plain) sum *= 2;
    alpha[idx] = std::move(sum);
  }
  return alpha;
}

std::vector<BigRational> kapteyn_to_taylor_exact(
    const std::vector<BigRational>& alpha, std::size_t count) {
  if (alpha.size() < count) {
    throw Error(ErrorKind::invalid_argument, "Kapteyn sequence too short");
  }
  std::vector<BigRational> a(count, BigRational(0));
  for (std::size_t idx = 0; idx < count; ++idx) {
    const int k = static_cast<int>(idx) + 1;
    BigRational sum(0);
    // cos(pi (k-n)/2) vanishes for odd k-n.
    for (int n = (k % 2 == 0) ? 2 : 1; n <= k; n += 2) {
      const auto& coeff = alpha[static_cast<std::size_t>(n - 1)];
      if (coeff == 0) continue;
      BigInteger numerator;
      mpz_ui_pow_ui(numerator.get_mpz_t(), static_cast<unsigned long>(n),
                    static_cast<unsigned long>(k));
      if (((k - n) / 2) % 2 != 0) numerator = -numerator;
      BigRational c{numerator,
                    double_factorial(k - n) * double_factorial(k + n)};
      c.canonicalize();
      sum += c * coeff;
    }
    a[idx] = std::move(sum);
  }
  return a;
}

CoeffSequence taylor_to_kapteyn(const CoeffSequence& a, std::size_t count,
                                KapteynNormalization normalization) {
  require_sequence(a, SequenceConvention::taylor_a, count);
  return {to_double(taylor_to_kapteyn_exact(to_exact(a.values, count), count,
                                            normalization)),
          SequenceConvention::kapteyn_alpha};
}

CoeffSequence kapteyn_to_taylor(const CoeffSequence& alpha, std::size_t count) {
  require_sequence(alpha, SequenceConvention::kapteyn_alpha, count);
  return {to_double(kapteyn_to_taylor_exact(to_exact(alpha.values, count), count)),
          SequenceConvention::taylor_a};
}

}  // namespace kapteyn
