#pragma once

// Exact evaluation of the harmonic-number families:
//
//   H_n^{(p)}     = sum_{j<=n} j^{-p}            (p <= 0 gives power sums)
//   Hbar_n^{(p)}  = sum_{j<=n} (-1)^{j-1} j^{-p}
//   H_n^{(p,r,s1,s2)} : iterated (plain/alternating per the pattern cycle)
//                       prefix sums with base H_n^{(p,1,s1,s2)} = H_n^{(p)}.
//
// Pattern (1,0) is the classical all-plain tower H_n^{(p,r)}; pattern (0,1)
// makes every level alternating.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "altharm/check_report.hpp"
#include "altharm/rational.hpp"
#include "altharm/tengine.hpp"

namespace altharm {

struct HarmonicSpec {
  int p = 1;
  bool alternating = false;
};

struct HyperSpec {
  int p = 1;
  int r = 1;
  Pattern pattern{1, 0};

  std::string str() const {
    return "p=" + std::to_string(p) + " r=" + std::to_string(r) + " pattern=" + pattern.str();
  }
};

class HyperEngine {
 public:
  // sum_{j=1}^{n} (+-1)^{j-1} j^{-p}, exact. Memoized as a prefix table per
  // (p, alternating); extension is append-only. Returned by value: the memo
  // vectors reallocate as they grow, so references into them would dangle.
  Rational harmonic(int p, bool alternating, long long n) {
    if (n < 1) throw std::invalid_argument("harmonic requires n >= 1");
    auto& table = harmonic_memo_[{p, alternating}];
    while (static_cast<long long>(table.size()) < n) {
      const long long j = static_cast<long long>(table.size()) + 1;
      Rational term = rational_pow(j, -p);
      if (alternating && (j - 1) % 2 != 0) term = -term;
      table.push_back(table.empty() ? term : table.back() + term);
    }
    return table[static_cast<std::size_t>(n - 1)];
  }

  Rational harmonic(const HarmonicSpec& spec, long long n) {
    return harmonic(spec.p, spec.alternating, n);
  }

  // H_n^{(p,r,s1,s2)} by the literal recursion; each level is the running
  // (signed) prefix sum of the previous one, so tabulation is linear per
  // level and n-prefixes are reused across calls.
  Rational hyper(const HyperSpec& spec, long long n) {
    validate(spec, n);
    auto& levels = hyper_memo_[{spec.pattern.s1, spec.pattern.s2, spec.p}];
    if (levels.empty()) levels.emplace_back();  // level index r-1
    while (static_cast<int>(levels.size()) < spec.r) levels.emplace_back();

    // extend level 1 (plain/alternating base is always H^{(p)})
    auto& base = levels[0];
    while (static_cast<long long>(base.size()) < n)
      base.push_back(harmonic(spec.p, false, static_cast<long long>(base.size()) + 1));

    for (int r = 2; r <= spec.r; ++r) {
      auto& prev = levels[static_cast<std::size_t>(r - 2)];
      auto& cur = levels[static_cast<std::size_t>(r - 1)];
      const bool alternating = step_kind(spec.pattern, r) == StepKind::alternating;
      while (static_cast<long long>(cur.size()) < n) {
        const long long k = static_cast<long long>(cur.size()) + 1;
        Rational term = prev[static_cast<std::size_t>(k - 1)];
        if (alternating && (k - 1) % 2 != 0) term = -term;
        cur.push_back(cur.empty() ? term : cur.back() + term);
      }
    }
    return levels[static_cast<std::size_t>(spec.r - 1)][static_cast<std::size_t>(n - 1)];
  }

  // Same number through the kernel route: H_n^{(p,r,s1,s2)} =
  // sum_{t=1}^{n} t^{-p} T(r,s1,s2,n,t).
  Rational hyper_via_kernel(const HyperSpec& spec, long long n, TEngine& tengine) {
    validate(spec, n);
    const SignedBiPoly& kernel = tengine.build(spec.pattern, spec.r);
    Rational total;
    for (long long t = 1; t <= n; ++t)
      total += rational_pow(t, -spec.p) * kernel.evaluate(n, t);
    return total;
  }

  // |H_n^{(p,r,s1,s2)}| <= H_n^{(p,r)} for all n <= n_max, exactly.
  CheckReport bound_check(const HyperSpec& spec, long long n_max) {
    const std::string params = spec.str() + " n_max=" + std::to_string(n_max);
    const HyperSpec classical{spec.p, spec.r, Pattern(1, 0)};
    std::int64_t checked = 0;
    for (long long n = 1; n <= n_max; ++n) {
      ++checked;
      const Rational lhs = hyper(spec, n).abs();
      const Rational rhs = hyper(classical, n);
      if (lhs > rhs) {
        return CheckReport::fail("bounds", params,
                                 checked, {spec.str() + " n=" + std::to_string(n),
                                           "<= " + rhs.str(), lhs.str()});
      }
    }
    return CheckReport::pass("bounds", params, checked);
  }

 private:
  static void validate(const HyperSpec& spec, long long n) {
    if (spec.p < 1) throw std::invalid_argument("hyper requires p >= 1");
    if (spec.r < 1) throw std::invalid_argument("hyper requires r >= 1");
    if (n < 1) throw std::invalid_argument("hyper requires n >= 1");
  }

  std::map<std::pair<int, bool>, std::vector<Rational>> harmonic_memo_;
  std::map<std::tuple<int, int, int>, std::vector<std::vector<Rational>>> hyper_memo_;
};

}  // namespace altharm
