#pragma once

// Floating-point series machinery: compensated summation, Euler-Maclaurin
// zeta tails, Boole-type alternating tails, and iterated averaging of
// partial sums for alternating series.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace altharm {

struct NumericValue {
  double value = 0.0;
  double err_est = 0.0;
};

struct KahanAccumulator {
  double sum = 0.0;
  double c = 0.0;
  void add(double x) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

namespace numdetail {
// B_{2k}/(2k)! for k = 1..5 (B2=1/6, B4=-1/30, B6=1/42, B8=-1/30, B10=5/66).
inline constexpr double kEMCoeff[5] = {
    1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0, 1.0 / 47900160.0};
}  // namespace numdetail

// Z_s(a) = sum_{n>=a} n^{-s} for s > 1, via Euler-Maclaurin through B10:
//   a^{1-s}/(s-1) + a^{-s}/2 + sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * a^{-s-2k+1}
inline double zeta_tail(double s, double a) {
  if (!(s > 1.0)) throw std::domain_error("zeta_tail requires s > 1");
  if (!(a >= 2.0)) throw std::domain_error("zeta_tail requires a >= 2");
  double out = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
  double rising = s;            // s(s+1)...(s+2k-2)
  double apow = std::pow(a, -s - 1.0);
  const double inv_a2 = 1.0 / (a * a);
  for (int k = 1; k <= 5; ++k) {
    out += numdetail::kEMCoeff[k - 1] * rising * apow;
    rising *= (s + 2 * k - 1) * (s + 2 * k);
    apow *= inv_a2;
  }
  return out;
}

// zeta(s) for s > 1: direct sum to 100 plus the Euler-Maclaurin tail.
inline double zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta requires s > 1");
  KahanAccumulator acc;
  for (int n = 1; n <= 100; ++n) acc.add(std::pow(static_cast<double>(n), -s));
  return acc.value() + zeta_tail(s, 101.0);
}

// Zbar_s(a) = sum_{n>=a} (-1)^{n-1} n^{-s} for s > 0 (asymptotic in a):
//   (-1)^{a-1} [ a^{-s}/2 + (s/4) a^{-s-1} - (s(s+1)(s+2)/48) a^{-s-3}
//                + (s(s+1)(s+2)(s+3)(s+4)/480) a^{-s-5} ]
inline double alt_zeta_tail(double s, double a) {
  if (!(s > 0.0)) throw std::domain_error("alt_zeta_tail requires s > 0");
  if (!(a >= 2.0)) throw std::domain_error("alt_zeta_tail requires a >= 2");
  const double as = std::pow(a, -s);
  double bracket = 0.5 * as + (s / 4.0) * as / a;
  bracket -= s * (s + 1.0) * (s + 2.0) / 48.0 * as / (a * a * a);
  bracket += s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) / 480.0 * as / (a * a * a * a * a);
  const long long ai = static_cast<long long>(a);
  return ((ai - 1) % 2 == 0 ? 1.0 : -1.0) * bracket;
}

// Iterated pairwise averaging of tail partial sums; `partials` holds the last
// d+1 partial sums of the series. Returns the depth-d average together with
// the size of the final averaging correction.
inline NumericValue average_partial_sums(std::vector<double> partials) {
  if (partials.empty()) throw std::invalid_argument("average_partial_sums needs data");
  double prev = partials[0];
  while (partials.size() > 1) {
    prev = partials[0];
    for (std::size_t i = 0; i + 1 < partials.size(); ++i)
      partials[i] = 0.5 * (partials[i] + partials[i + 1]);
    partials.pop_back();
  }
  return {partials[0], std::abs(partials[0] - prev)};
}

// Round to `digits` significant digits (used for deterministic float output).
inline double round_significant(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

}  // namespace altharm
