#pragma once

// Truncated power-sum coefficients. For m >= 0 and 1 <= t <= n:
//
//   sum_{l=t}^{n} l^m           = sum_{j=1}^{m+1} c(m,j) n^j
//                                 - sum_{j=1}^{m+1} d(m,j) t^j - e(m,0)
//   sum_{l=t}^{n} (-1)^{l-1}l^m = sum_{j=0}^{m} c1(m,j) (-1)^{n-1} n^j
//                                 + sum_{j=0}^{m} d1(m,j) (-1)^{t-1} t^j
//
// with
//
//   c(m,j)  = 1/(m+1) C(m+1,m+1-j) B_{m+1-j}
//   d(m,j)  = 1/(m+1) sum_{k=j-1}^{m} C(m+1,m-k) B_{m-k} C(1+k,j) (-1)^{1+k-j}
//   e(m,0)  = 1/(m+1) sum_{k=0}^{m} C(m+1,m-k) B_{m-k} (-1)^{1+k}
//   c1(m,j) = 1/(2(m+1)) sum_{k=0}^{m-j} C(m+1,k) B_k 2^k C(m+1-k,j) (-1)^{m-k-j}
//   d1(m,j) = 1/(2(m+1)) sum_{k=j}^{m} C(k,j) (-1)^{k-j}
//               sum_{x=0}^{m-k} C(m+1,x) B_x 2^x C(m+1-x,k) (-1)^{m-x-k}
//
// (B_* in the plus convention). d and d1 are always computed from these
// closed forms; the reflected identities c(m,j) = (-1)^{m+1-j} d(m,j) and
// c1(m,j) = (-1)^{m-j} d1(m,j) are verified over a finite range by
// check_coefficient_identities and never assumed.

#include <cstdint>
#include <string>
#include <vector>

#include "altharm/bernoulli.hpp"
#include "altharm/check_report.hpp"
#include "altharm/rational.hpp"

namespace altharm {

struct FaulhaberCoeffs {
  int m = 0;
  std::vector<Rational> c;   // index j in [1, m+1]; [0] stays zero
  std::vector<Rational> d;   // index j in [1, m+1]; [0] stays zero
  Rational e0;               // e(m,0)
  std::vector<Rational> c1;  // index j in [0, m]
  std::vector<Rational> d1;  // index j in [0, m]
};

// Memoized coefficient families per degree m. The kernel engine re-queries
// the same small m values constantly, so tables are computed once and kept.
class FaulhaberTable {
 public:
  const FaulhaberCoeffs& coeffs(int m) {
    while (static_cast<int>(memo_.size()) <= m) memo_.push_back(compute(static_cast<int>(memo_.size())));
    return memo_[static_cast<std::size_t>(m)];
  }

  BernoulliTable& bernoulli() { return bern_; }

 private:
  static int neg_one_pow(long e) { return (e % 2 == 0) ? 1 : -1; }

  FaulhaberCoeffs compute(int m) {
    FaulhaberCoeffs F;
    F.m = m;
    const Rational inv_m1(Integer(1), Integer(m + 1));
    const Rational inv_2m1(Integer(1), Integer(2 * (m + 1)));

    F.c.assign(static_cast<std::size_t>(m) + 2, Rational());
    F.d.assign(static_cast<std::size_t>(m) + 2, Rational());
    for (int j = 1; j <= m + 1; ++j) {
      F.c[static_cast<std::size_t>(j)] =
          inv_m1 * Rational(binomial(m + 1, m + 1 - j)) * bern_.at(static_cast<std::size_t>(m + 1 - j));
      Rational acc;
      for (int k = j - 1; k <= m; ++k) {
        Rational term = Rational(binomial(m + 1, m - k)) * bern_.at(static_cast<std::size_t>(m - k)) *
                        Rational(binomial(1 + k, j));
        acc += Rational(neg_one_pow(1 + k - j)) * term;
      }
      F.d[static_cast<std::size_t>(j)] = inv_m1 * acc;
    }

    {
      Rational acc;
      for (int k = 0; k <= m; ++k)
        acc += Rational(neg_one_pow(1 + k)) * Rational(binomial(m + 1, m - k)) *
               bern_.at(static_cast<std::size_t>(m - k));
      F.e0 = inv_m1 * acc;
    }

    F.c1.assign(static_cast<std::size_t>(m) + 1, Rational());
    F.d1.assign(static_cast<std::size_t>(m) + 1, Rational());
    for (int j = 0; j <= m; ++j) {
      Rational acc;
      for (int k = 0; k <= m - j; ++k) {
        Rational term = Rational(binomial(m + 1, k)) * bern_.at(static_cast<std::size_t>(k)) *
                        Rational(int_pow(Integer(2), static_cast<unsigned long>(k))) *
                        Rational(binomial(m + 1 - k, j));
        acc += Rational(neg_one_pow(m - k - j)) * term;
      }
      F.c1[static_cast<std::size_t>(j)] = inv_2m1 * acc;

      Rational acc2;
      for (int k = j; k <= m; ++k) {
        Rational inner;
        for (int x = 0; x <= m - k; ++x) {
          Rational term = Rational(binomial(m + 1, x)) * bern_.at(static_cast<std::size_t>(x)) *
                          Rational(int_pow(Integer(2), static_cast<unsigned long>(x))) *
                          Rational(binomial(m + 1 - x, k));
          inner += Rational(neg_one_pow(m - x - k)) * term;
        }
        acc2 += Rational(neg_one_pow(k - j)) * Rational(binomial(k, j)) * inner;
      }
      F.d1[static_cast<std::size_t>(j)] = inv_2m1 * acc2;
    }
    return F;
  }

  BernoulliTable bern_;
  std::vector<FaulhaberCoeffs> memo_;
};

// e(m,0) = -delta_{m0}, c(m,j) = (-1)^{m+1-j} d(m,j), c1(m,j) = (-1)^{m-j} d1(m,j),
// checked exactly for all 0 <= m <= m_max. The two reflected identities are
// unproven in general, so this reports rather than assumes.
inline CheckReport check_coefficient_identities(FaulhaberTable& table, int m_max) {
  std::int64_t checked = 0;
  const std::string params = "m_max=" + std::to_string(m_max);
  for (int m = 0; m <= m_max; ++m) {
    const FaulhaberCoeffs& F = table.coeffs(m);
    const Rational expected_e0 = (m == 0) ? Rational(-1) : Rational(0);
    ++checked;
    if (!(F.e0 == expected_e0)) {
      return CheckReport::fail("remarks", params, checked,
                               {"e(" + std::to_string(m) + ",0)", expected_e0.str(), F.e0.str()});
    }
    for (int j = 1; j <= m + 1; ++j) {
      ++checked;
      const Rational want = Rational((m + 1 - j) % 2 == 0 ? 1 : -1) * F.d[static_cast<std::size_t>(j)];
      if (!(F.c[static_cast<std::size_t>(j)] == want)) {
        return CheckReport::fail("remarks", params, checked,
                                 {"c(" + std::to_string(m) + "," + std::to_string(j) + ")",
                                  want.str(), F.c[static_cast<std::size_t>(j)].str()});
      }
    }
    for (int j = 0; j <= m; ++j) {
      ++checked;
      const Rational want = Rational((m - j) % 2 == 0 ? 1 : -1) * F.d1[static_cast<std::size_t>(j)];
      if (!(F.c1[static_cast<std::size_t>(j)] == want)) {
        return CheckReport::fail("remarks", params, checked,
                                 {"c1(" + std::to_string(m) + "," + std::to_string(j) + ")",
                                  want.str(), F.c1[static_cast<std::size_t>(j)].str()});
      }
    }
  }
  return CheckReport::pass("remarks", params, checked);
}

}  // namespace altharm
