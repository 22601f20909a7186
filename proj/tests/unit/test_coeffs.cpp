#include <doctest.h>

#include "approx.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "kapteyn/coeffs.hpp"
#include "kapteyn/error.hpp"
#include "oracles.hpp"

using kapteyn::BigInteger;
using kapteyn::BigRational;

namespace {

BigRational q(long p, long d = 1) {
  BigRational r(p, d);
  r.canonicalize();
  return r;
}

// sum_{k=0}^{n} (-1)^k binom(n,k) (k - n/2)^n t^(n-2k) * (-1)^n / n!,
// i.e. A_n(t) + A_n(1/t) written out term by term.
BigRational reflection_sum(int n, const BigRational& t) {
  BigRational sum = 0;
  const BigRational half_n(n, 2);
  for (int k = 0; k <= n; ++k) {
    BigInteger binom;
    mpz_bin_uiui(binom.get_mpz_t(), n, k);
    BigRational base = BigRational(k) - half_n;
    BigRational term = binom;
    for (int i = 0; i < n; ++i) term *= base;
    const int e = n - 2 * k;
    for (int i = 0; i < std::abs(e); ++i) term = e > 0 ? BigRational(term * t) : BigRational(term / t);
    sum += (k % 2 == 0) ? term : BigRational(-term);
  }
  BigInteger fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  sum /= fact;
  return n % 2 == 0 ? sum : BigRational(-sum);
}

}  // namespace

TEST_CASE("double factorials") {
  const long expected[] = {1, 1, 2, 3, 8, 15, 48, 105, 384, 945, 3840, 10395};
  for (int m = 0; m < 12; ++m) CHECK(kapteyn::double_factorial(m) == expected[m]);
  CHECK_THROWS_AS(kapteyn::double_factorial(-1), kapteyn::Error);
}

TEST_CASE("closed-form coefficients") {
  CHECK(kapteyn::coeff_closed_form(3, 1) == q(-1, 16));
  CHECK(kapteyn::coeff_closed_form(5, 5) == q(625, 768));
  CHECK(kapteyn::coeff_closed_form(4, 3) == 0);
  CHECK(kapteyn::coeff_closed_form(3, 3) == q(9, 16));  // needs 0!! = 1
  CHECK_THROWS_AS(kapteyn::coeff_closed_form(0, 0), kapteyn::Error);
  CHECK_THROWS_AS(kapteyn::coeff_closed_form(3, 4), kapteyn::Error);
  CHECK_THROWS_AS(kapteyn::coeff_closed_form(3, -1), kapteyn::Error);
}

TEST_CASE("closed form agrees with the loop oracle") {
  for (int n = 1; n <= 40; ++n) {
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(kapteyn::coeff_closed_form(n, k) == oracle::closed_form_loops(n, k));
    }
  }
}

TEST_CASE("recurrence table, small cases") {
  const auto t2 = kapteyn::coeff_table_recurrence(2);
  CHECK(t2.at(1, 1) == q(1, 2));
  CHECK(t2.at(2, 2) == q(1, 2));
  CHECK(t2.at(1, 0) == 0);
  CHECK(t2.at(2, 0) == 0);
  CHECK(t2.at(2, 1) == 0);
  CHECK(t2.entry_count() == 5);

  const auto t4 = kapteyn::coeff_table_recurrence(4);
  CHECK(t4.at(4, 4) == q(2, 3));
  CHECK(t4.at(4, 2) == q(-1, 6));

  const auto t6 = kapteyn::coeff_table_recurrence(6);
  BigRational sum = 0;
  for (const auto& c : t6.row(6)) sum += c;
  CHECK(sum == q(1, 2));

  CHECK_THROWS_AS(t6.at(7, 0), kapteyn::Error);
  CHECK_THROWS_AS(t6.at(3, 4), kapteyn::Error);
  CHECK_THROWS_AS(kapteyn::coeff_table_recurrence(0), kapteyn::Error);
}

TEST_CASE("recurrence table equals the closed form up to n = 60") {
  const auto table = kapteyn::coeff_table_recurrence(60);
  std::size_t compared = 0;
  for (int n = 1; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(table.at(n, k) == kapteyn::coeff_closed_form(n, k));
      ++compared;
    }
  }
  CHECK(compared == table.entry_count());
}

TEST_CASE("table structure") {
  const auto table = kapteyn::coeff_table_recurrence(40);
  for (int n = 1; n <= 40; ++n) {
    CHECK(table.at(n, 0) == 0);
    CHECK(table.at(n, n - 1) == 0);
    CHECK(table.at(n, n) > 0);
    BigRational sum = 0;
    for (int k = 0; k <= n; ++k) {
      if ((n - k) % 2 != 0) CHECK(table.at(n, k) == 0);
      sum += table.at(n, k);
    }
    CHECK(sum == q(1, 2));
  }
}

TEST_CASE("a_poly low orders") {
  const auto a1 = kapteyn::a_poly(1);
  CHECK(a1.coeffs.size() == 2);
  CHECK(a1.coeffs[0] == 0);
  CHECK(a1.coeffs[1] == q(1, 2));

  const auto a3 = kapteyn::a_poly(3);
  CHECK(a3.coeffs[0] == 0);
  CHECK(a3.coeffs[1] == q(-1, 16));
  CHECK(a3.coeffs[2] == 0);
  CHECK(a3.coeffs[3] == q(9, 16));

  CHECK_THROWS_AS(kapteyn::a_poly(0), kapteyn::Error);
}

TEST_CASE("a_poly matches the closed form coefficientwise") {
  for (int n : {7, 12, 33, 80}) {
    const auto poly = kapteyn::a_poly(n);
    for (int k = 0; k <= n; ++k) {
      CAPTURE(n);
      CAPTURE(k);
      CHECK(poly.coeffs[static_cast<std::size_t>(k)] ==
            oracle::closed_form_loops(n, k));
    }
  }
}

TEST_CASE("a_eval_exact boundary values and parity") {
  CHECK(kapteyn::a_eval_exact(100, 1) == q(1, 2));
  CHECK(kapteyn::a_eval_exact(17, 0) == 0);
  CHECK(kapteyn::a_eval_exact(9, q(-3, 7)) == -kapteyn::a_eval_exact(9, q(3, 7)));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 25);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 30;
    const BigRational t = q(num(rng), den(rng));
    const BigRational lhs = kapteyn::a_eval_exact(n, -t);
    const BigRational rhs = kapteyn::a_eval_exact(n, t);
    CHECK(lhs == (n % 2 == 0 ? rhs : BigRational(-rhs)));
  }
}

TEST_CASE("reflection identity A_n(t) + A_n(1/t)") {
  for (int n = 1; n <= 25; ++n) {
    CHECK(kapteyn::a_eval_exact(n, 1) + kapteyn::a_eval_exact(n, 1) == 1);
    for (const auto& t : {q(2, 3), q(-5, 2), q(7, 11)}) {
      const BigRational inv = 1 / t;
      CAPTURE(n);
      CHECK(kapteyn::a_eval_exact(n, t) + kapteyn::a_eval_exact(n, inv) ==
            reflection_sum(n, t));
    }
  }
}

TEST_CASE("large-t leading behaviour") {
  const int n = 30;
  const BigRational t = 100;
  BigInteger fact;
  mpz_fac_ui(fact.get_mpz_t(), n);
  BigRational lead = 1;
  for (int i = 0; i < n; ++i) lead *= BigRational(n) * t / 2;
  lead /= fact;
  const BigRational rel = (kapteyn::a_eval_exact(n, t) - lead) / lead;
  CHECK(std::abs(rel.get_d()) < 0.01);
}

TEST_CASE("a_eval_logabs") {
  const auto a4 = kapteyn::a_eval_logabs(4, 1.0);
  CHECK(a4.sign == 1);
  CHECK(a4.log_abs == rel(std::log(0.5), 1e-15));

  const auto a500 = kapteyn::a_eval_logabs(500, 1.0);
  CHECK(a500.sign == 1);
  CHECK(a500.log_abs == rel(std::log(0.5), 1e-14));

  // The root t = 1/3 of A_3 is not dyadic; the exact overload sees it.
  CHECK(kapteyn::a_eval_logabs(3, q(1, 3)).sign == 0);
  CHECK(kapteyn::a_eval_logabs(3, 1.0 / 3.0).sign != 0);
  CHECK(kapteyn::a_eval_logabs(3, 0.0).sign == 0);
  CHECK(std::isinf(kapteyn::a_eval_logabs(3, 0.0).log_abs));
}

TEST_CASE("a_eval_logabs agrees with the exact value") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-6.0, 6.0);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 1 + trial % 45;
    const double t = dist(rng);
    const BigRational exact = kapteyn::a_eval_exact(n, kapteyn::dyadic_round(t));
    const auto la = kapteyn::a_eval_logabs(n, t);
    CAPTURE(n);
    CAPTURE(t);
    CHECK(la.sign == sgn(exact));
    // Independent route: 60-digit division, then the logarithm.
    oracle::HighFloat value(exact.get_num().get_str());
    value /= oracle::HighFloat(exact.get_den().get_str());
    const double expected = static_cast<double>(log(abs(value)));
    CHECK(la.log_abs == rel(expected, 1e-14));
  }
}

TEST_CASE("dyadic rounding keeps 64 fractional bits") {
  const BigRational r = kapteyn::dyadic_round(0.1);
  BigInteger two64 = 1;
  two64 <<= 64;
  CHECK(r.get_den() <= two64);
  const BigRational diff = r - kapteyn::rational_from_double(0.1);
  CHECK(std::abs(diff.get_d()) <= std::ldexp(1.0, -65));
  CHECK(kapteyn::dyadic_round(3.0) == 3);
  CHECK(kapteyn::dyadic_round(1e30) == kapteyn::rational_from_double(1e30));
  CHECK_THROWS_AS(kapteyn::dyadic_round(INFINITY), kapteyn::Error);
}

TEST_CASE("rational printing") {
  CHECK(kapteyn::to_string(q(-1, 16)) == "-1/16");
  CHECK(kapteyn::to_string(q(4, 2)) == "2");
  CHECK(kapteyn::to_string(q(0)) == "0");
}
