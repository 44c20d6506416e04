#include <catch2/catch_amalgamated.hpp>

#include "altharm/faulhaber.hpp"

using altharm::BernoulliTable;
using altharm::binomial;
using altharm::FaulhaberCoeffs;
using altharm::FaulhaberTable;
using altharm::Integer;
using altharm::int_pow;
using altharm::Rational;

namespace {

// oracle: sum_{l=t}^{n} l^m literally
Rational plain_power_sum(int m, long long t, long long n) {
  Rational acc;
  for (long long l = t; l <= n; ++l)
    acc += Rational(int_pow(Integer(static_cast<long>(l)), static_cast<unsigned long>(m)));
  return acc;
}

// oracle: sum_{l=t}^{n} (-1)^{l-1} l^m literally
Rational alternating_power_sum(int m, long long t, long long n) {
  Rational acc;
  for (long long l = t; l <= n; ++l) {
    const Rational term(int_pow(Integer(static_cast<long>(l)), static_cast<unsigned long>(m)));
    acc += (l - 1) % 2 == 0 ? term : -term;
  }
  return acc;
}

}  // namespace

TEST_CASE("bernoulli numbers, plus convention") {
  BernoulliTable B;
  CHECK(B.at(0) == Rational(1));
  CHECK(B.at(1) == Rational(1, 2));
  CHECK(B.at(2) == Rational(1, 6));
  CHECK(B.at(4) == Rational(-1, 30));
  CHECK(B.at(10) == Rational(5, 66));
  CHECK(B.at(12) == Rational(-691, 2730));

  SECTION("odd indices vanish") {
    for (int k = 1; k <= 12; ++k) CHECK(B.at(2 * static_cast<std::size_t>(k) + 1) == Rational(0));
  }

  SECTION("defining recurrence holds for every stored prefix") {
    for (int k = 0; k <= 30; ++k) {
      Rational acc;
      for (int j = 0; j <= k; ++j) acc += Rational(binomial(k + 1, j)) * B.at(static_cast<std::size_t>(j));
      CHECK(acc == Rational(k + 1));
    }
  }
}

TEST_CASE("coefficient families at small degree") {
  FaulhaberTable table;

  const FaulhaberCoeffs& F0 = table.coeffs(0);
  CHECK(F0.c[1] == Rational(1));
  CHECK(F0.d[1] == Rational(1));
  CHECK(F0.e0 == Rational(-1));  // so sum_{l=t}^{n} 1 = n - t + 1
  CHECK(F0.c1[0] == Rational(1, 2));
  CHECK(F0.d1[0] == Rational(1, 2));

  const FaulhaberCoeffs& F1 = table.coeffs(1);
  CHECK(F1.c[1] == Rational(1, 2));
  CHECK(F1.c[2] == Rational(1, 2));
  CHECK(F1.d[1] == Rational(-1, 2));
  CHECK(F1.d[2] == Rational(1, 2));
  CHECK(F1.e0 == Rational(0));
}

TEST_CASE("truncated power-sum identities against brute force") {
  FaulhaberTable table;
  for (int m = 0; m <= 25; ++m) {
    const FaulhaberCoeffs& F = table.coeffs(m);
    for (long long n = 1; n <= 40; ++n) {
      for (long long t = 1; t <= n; ++t) {
        Rational plain;
        for (int j = 1; j <= m + 1; ++j) {
          const Rational npow(int_pow(Integer(static_cast<long>(n)), static_cast<unsigned long>(j)));
          const Rational tpow(int_pow(Integer(static_cast<long>(t)), static_cast<unsigned long>(j)));
          plain += F.c[static_cast<std::size_t>(j)] * npow - F.d[static_cast<std::size_t>(j)] * tpow;
        }
        plain -= F.e0;
        REQUIRE(plain == plain_power_sum(m, t, n));

        Rational alt;
        for (int j = 0; j <= m; ++j) {
          const Rational npow(int_pow(Integer(static_cast<long>(n)), static_cast<unsigned long>(j)));
          const Rational tpow(int_pow(Integer(static_cast<long>(t)), static_cast<unsigned long>(j)));
          const Rational ns = (n - 1) % 2 == 0 ? npow : -npow;
          const Rational ts = (t - 1) % 2 == 0 ? tpow : -tpow;
          alt += F.c1[static_cast<std::size_t>(j)] * ns + F.d1[static_cast<std::size_t>(j)] * ts;
        }
        REQUIRE(alt == alternating_power_sum(m, t, n));
      }
    }
  }
}

TEST_CASE("reflected-coefficient identities report pass") {
  FaulhaberTable table;
  CHECK(check_coefficient_identities(table, 0).passed());
  CHECK(check_coefficient_identities(table, 1).passed());
  const auto report = check_coefficient_identities(table, 25);
  CHECK(report.passed());
  CHECK(report.checked_count > 0);
  CHECK_FALSE(report.counterexample.has_value());

  // c(1,1) = 1/2 forces d(1,1) = -1/2 under the reflection
  CHECK(table.coeffs(1).d[1] == Rational(-1, 2));
}
