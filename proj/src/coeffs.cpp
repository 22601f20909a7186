#include "kapteyn/coeffs.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "kapteyn/error.hpp"

namespace kapteyn {
namespace {

constexpr int kDyadicBits = 64;

void require_order(int n) {
  if (n < 1) throw Error(ErrorKind::invalid_argument, "n must be >= 1");
}

BigInteger binomial(int n, int k) {
  BigInteger b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return b;
}

BigInteger power(const BigInteger& base, int exponent) {
  BigInteger p;
  mpz_pow_ui(p.get_mpz_t(), base.get_mpz_t(),
             static_cast<unsigned long>(exponent));
  return p;
}

BigInteger factorial(int n) {
  BigInteger f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// Integer numerators b_k = (-1)^k binom(n,k) (2k - n)^n of the rearranged
// form, so that A_n(t) = (-1)^n / (2^n n!) * sum_k b_k t^(n-2k).
std::vector<BigInteger> rearranged_numerators(int n) {
  std::vector<BigInteger> b(static_cast<std::size_t>(n / 2 + 1));
  for (int k = 0; k <= n / 2; ++k) {
    BigInteger term = binomial(n, k) * power(BigInteger(2 * k - n), n);
    if (k % 2 != 0) term = -term;
    b[static_cast<std::size_t>(k)] = std::move(term);
  }
  return b;
}

// ln|num/den| without forming either logarithm separately: the binary
// exponents cancel exactly, so only the final value is rounded.
double log_ratio(const BigInteger& num, const BigInteger& den) {
  long e_num = 0;
  long e_den = 0;
  const double m_num = mpz_get_d_2exp(&e_num, num.get_mpz_t());
  const double m_den = mpz_get_d_2exp(&e_den, den.get_mpz_t());
  return std::log(std::abs(m_num / m_den)) +
         static_cast<double>(e_num - e_den) * std::log(2.0);
}

}  // namespace

std::string to_string(const BigRational& value) { return value.get_str(); }

BigRational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::domain, "value must be finite");
  }
  BigRational r(value);  // mpq_set_d is exact
  r.canonicalize();
  return r;
}

BigRational dyadic_round(double t) {
  if (!std::isfinite(t)) throw Error(ErrorKind::domain, "t must be finite");
  // Scaling by a power of two is exact; below 2^53 the rounding happens here,
  // above it the value is already an integer.
  const double scaled = std::nearbyint(std::ldexp(t, kDyadicBits));
  BigRational r{BigInteger(scaled), BigInteger(1)};
  mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), kDyadicBits);
  return r;
}

double log_abs(const BigInteger& value) {
  if (value == 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(std::abs(mantissa)) +
         static_cast<double>(exponent) * std::log(2.0);
}

BigInteger double_factorial(int m) {
  if (m < 0) throw Error(ErrorKind::invalid_argument, "m!! needs m >= 0");
  BigInteger result;
  mpz_2fac_ui(result.get_mpz_t(), static_cast<unsigned long>(m));
  return result;
}

BigRational coeff_closed_form(int n, int k) {
  require_order(n);
  if (k < 0 || k > n) {
    throw Error(ErrorKind::invalid_argument, "k must satisfy 0 <= k <= n");
  }
  if ((n - k) % 2 != 0) return BigRational(0);
  BigRational c{power(BigInteger(k), n),
                double_factorial(n - k) * double_factorial(n + k)};
  c.canonicalize();
  if (((n - k) / 2) % 2 != 0) c = -c;
  return c;
}

const BigRational& CoefficientTable::at(int n, int k) const {
  if (n < 1 || n > max_n() || k < 0 || k > n) {
    throw Error(ErrorKind::invalid_argument,
                "table index (" + std::to_string(n) + ", " +
                    std::to_string(k) + ") out of range");
  }
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

const std::vector<BigRational>& CoefficientTable::row(int n) const {
  if (n < 1 || n > max_n()) {
    throw Error(ErrorKind::invalid_argument, "row out of range");
  }
  return rows_[static_cast<std::size_t>(n)];
}

std::size_t CoefficientTable::entry_count() const {
  std::size_t count = 0;
  for (std::size_t n = 1; n < rows_.size(); ++n) count += rows_[n].size();
  return count;
}

CoefficientTable coeff_table_recurrence(int max_n) {
  require_order(max_n);
  CoefficientTable table;
  auto& rows = table.rows_;
  rows.resize(static_cast<std::size_t>(max_n) + 1);
  rows[0] = {BigRational(0)};

  for (int n = 1; n <= max_n; ++n) {
    auto& row = rows[static_cast<std::size_t>(n)];
    row.assign(static_cast<std::size_t>(n) + 1, BigRational(0));

    BigRational diagonal{power(BigInteger(n), n), double_factorial(2 * n)};
    diagonal.canonicalize();
    row[static_cast<std::size_t>(n)] = diagonal;

    if (n < 2) continue;
    const auto& below = rows[static_cast<std::size_t>(n - 2)];
    for (int k = 0; k <= n - 2; ++k) {
      const auto& prev = below[static_cast<std::size_t>(k)];
      if (prev == 0) continue;
      row[static_cast<std::size_t>(k)] =
          -BigRational(k * k) * prev / BigRational(n * n - k * k);
    }
  }
  return table;
}

BigRational APoly::operator()(const BigRational& t) const {
  BigRational acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc *= t;
    acc += *it;
  }
  return acc;
}

APoly a_poly(int n) {
  require_order(n);
  APoly poly;
  poly.n = n;
  poly.coeffs.assign(static_cast<std::size_t>(n) + 1, BigRational(0));

  const auto numerators = rearranged_numerators(n);
  BigInteger denominator = factorial(n);
  mpz_mul_2exp(denominator.get_mpz_t(), denominator.get_mpz_t(),
               static_cast<unsigned long>(n));
  for (int k = 0; k <= n / 2; ++k) {
    BigRational c{numerators[static_cast<std::size_t>(k)], denominator};
    c.canonicalize();
    if (n % 2 != 0) c = -c;
    poly.coeffs[static_cast<std::size_t>(n - 2 * k)] = std::move(c);
  }
  return poly;
}

BigRational a_eval_exact(int n, const BigRational& t) { return a_poly(n)(t); }

LogAbs a_eval_logabs(int n, double t) {
  return a_eval_logabs(n, dyadic_round(t));
}

LogAbs a_eval_logabs(int n, const BigRational& t) {
  require_order(n);
  const BigInteger& p = t.get_num();
  const BigInteger& q = t.get_den();
  const BigInteger p2 = p * p;
  const BigInteger q2 = q * q;

  // S = q^n * sum_k b_k (p/q)^(n-2k) = sum_k b_k p^(n-2k) q^(2k), by Horner
  // in p^2 with the matching powers of q^2 folded in.
  const auto b = rearranged_numerators(n);
  BigInteger acc = b[0];
  BigInteger q_power = 1;
  for (std::size_t k = 1; k < b.size(); ++k) {
    q_power *= q2;
    acc = acc * p2 + b[k] * q_power;
  }
  if (n % 2 != 0) acc *= p;

  LogAbs result;
  const int s = sgn(acc);
  if (s == 0) {
    result.log_abs = -std::numeric_limits<double>::infinity();
    return result;
  }
  result.sign = (n % 2 != 0) ? -s : s;
  BigInteger denominator = factorial(n);
  mpz_mul_2exp(denominator.get_mpz_t(), denominator.get_mpz_t(),
               static_cast<unsigned long>(n));
  denominator *= power(q, n);
  result.log_abs = log_ratio(acc, denominator);
  return result;
}

}  // namespace kapteyn
