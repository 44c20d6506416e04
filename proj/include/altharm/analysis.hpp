#pragma once

// Structure and conjecture scanning over a range of patterns and depths.
// Every scan returns a CheckReport; a failing scan carries the minimal
// counterexample (smallest r, then pattern order, then lexicographic
// (m,j,k)). Conjectural suites never fail a build: their failures are
// findings for the caller to surface.

#include <cstdint>
#include <functional>
#include <future>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "altharm/check_report.hpp"
#include "altharm/eulersum.hpp"
#include "altharm/faulhaber.hpp"
#include "altharm/hyperharmonic.hpp"
#include "altharm/tengine.hpp"

namespace altharm {

inline std::vector<Pattern> default_patterns() {
  return {Pattern(1, 1), Pattern(2, 1), Pattern(1, 2), Pattern(3, 1),
          Pattern(1, 3), Pattern(2, 2), Pattern(3, 2)};
}

namespace analysisdetail {

inline std::string pattern_list_str(const std::vector<Pattern>& pats) {
  std::string out;
  for (const Pattern& p : pats) {
    if (!out.empty()) out += " ";
    out += p.str();
  }
  return out;
}

inline std::string coeff_location(const Pattern& pat, int r, int m, int j, int k) {
  return "pattern=" + pat.str() + " r=" + std::to_string(r) + " m=" + std::to_string(m) +
         " j=" + std::to_string(j) + " k=" + std::to_string(k);
}

}  // namespace analysisdetail

// b(m,j,k) = (-1)^{m+j} b(j,m,k) for every coefficient of every kernel.
inline CheckReport check_transpose_symmetry(TEngine& tengine, const std::vector<Pattern>& patterns,
                                            int r_max) {
  const std::string params =
      "patterns=[" + analysisdetail::pattern_list_str(patterns) + "] r_max=" + std::to_string(r_max);
  std::int64_t checked = 0;
  for (int r = 1; r <= r_max; ++r) {
    for (const Pattern& pat : patterns) {
      const SignedBiPoly& P = tengine.build(pat, r);
      const int f = degree(pat, r);
      for (int m = 0; m <= f; ++m) {
        for (int j = 0; j <= f - m; ++j) {
          for (int k = 0; k < kSectorCount; ++k) {
            ++checked;
            const Rational lhs = P.coeff(m, j, k);
            const Rational rhs = Rational((m + j) % 2 == 0 ? 1 : -1) * P.coeff(j, m, k);
            if (!(lhs == rhs)) {
              return CheckReport::fail("conjecture-transpose", params, checked,
                                       {analysisdetail::coeff_location(pat, r, m, j, k),
                                        rhs.str(), lhs.str()},
                                       true);
            }
          }
        }
      }
    }
  }
  return CheckReport::pass("conjecture-transpose", params, checked, true);
}

// sum_{j=0}^{m} sum_k b(m-j, j, k) = delta_{m0} for 0 <= m <= f.
inline CheckReport check_antidiagonal_sums(TEngine& tengine, const std::vector<Pattern>& patterns,
                                           int r_max) {
  const std::string params =
      "patterns=[" + analysisdetail::pattern_list_str(patterns) + "] r_max=" + std::to_string(r_max);
  std::int64_t checked = 0;
  for (int r = 1; r <= r_max; ++r) {
    for (const Pattern& pat : patterns) {
      const SignedBiPoly& P = tengine.build(pat, r);
      const int f = degree(pat, r);
      for (int m = 0; m <= f; ++m) {
        Rational sum;
        for (int j = 0; j <= m; ++j)
          for (int k = 0; k < kSectorCount; ++k) sum += P.coeff(m - j, j, k);
        ++checked;
        const Rational expected(m == 0 ? 1 : 0);
        if (!(sum == expected)) {
          return CheckReport::fail("conjecture-antidiagonal", params, checked,
                                   {"pattern=" + pat.str() + " r=" + std::to_string(r) +
                                        " m+j=" + std::to_string(m),
                                    expected.str(), sum.str()},
                                   true);
        }
      }
    }
  }
  return CheckReport::pass("conjecture-antidiagonal", params, checked, true);
}

// sgn(sum_k b(m,j,k)) = (-1)^j, nonzero, for all m+j <= f.
inline CheckReport check_sign_pattern(TEngine& tengine, const std::vector<Pattern>& patterns,
                                      int r_max) {
  const std::string params =
      "patterns=[" + analysisdetail::pattern_list_str(patterns) + "] r_max=" + std::to_string(r_max);
  std::int64_t checked = 0;
  for (int r = 1; r <= r_max; ++r) {
    for (const Pattern& pat : patterns) {
      const SignedBiPoly& P = tengine.build(pat, r);
      const int f = degree(pat, r);
      for (int m = 0; m <= f; ++m) {
        for (int j = 0; j <= f - m; ++j) {
          Rational sum;
          for (int k = 0; k < kSectorCount; ++k) sum += P.coeff(m, j, k);
          ++checked;
          const int expected = j % 2 == 0 ? 1 : -1;
          if (sum.sign() != expected) {
            return CheckReport::fail(
                "conjecture-sign", params, checked,
                {"pattern=" + pat.str() + " r=" + std::to_string(r) + " m=" + std::to_string(m) +
                     " j=" + std::to_string(j),
                 expected > 0 ? "sign +" : "sign -",
                 sum.is_zero() ? "0" : (sum.sign() > 0 ? "sign + (" : "sign - (") + sum.str() + ")"},
                true);
          }
        }
      }
    }
  }
  return CheckReport::pass("conjecture-sign", params, checked, true);
}

// Aggregated convergence-bound scan: |H_n^{(p,r,s1,s2)}| <= H_n^{(p,r)}.
inline CheckReport check_bounds(HyperEngine& hyper, const std::vector<Pattern>& patterns,
                                const std::vector<int>& ps, int r_max, long long n_max) {
  std::string p_list;
  for (int p : ps) p_list += (p_list.empty() ? "" : ",") + std::to_string(p);
  const std::string params = "patterns=[" + analysisdetail::pattern_list_str(patterns) + "] p in {" +
                             p_list + "} r_max=" + std::to_string(r_max) +
                             " n_max=" + std::to_string(n_max);
  std::int64_t checked = 0;
  for (const Pattern& pat : patterns) {
    for (int p : ps) {
      for (int r = 1; r <= r_max; ++r) {
        CheckReport sub = hyper.bound_check(HyperSpec{p, r, pat}, n_max);
        checked += sub.checked_count;
        if (!sub.passed()) {
          sub.suite = "bounds";
          sub.params = params;
          sub.checked_count = checked;
          return sub;
        }
      }
    }
  }
  return CheckReport::pass("bounds", params, checked);
}

// Numeric reduction soundness on a list of (spec, q) cases: the brute-force
// partial sum and the reduced combination of classical sums must agree within
// tolerance (and within their combined error estimates).
inline CheckReport check_reduction_soundness(
    const std::vector<std::pair<HyperSpec, double>>& cases, double tolerance,
    const EvalOptions& opts = {}) {
  TEngine tengine;
  std::int64_t checked = 0;
  std::string params = "tolerance=" + std::to_string(tolerance);
  for (const auto& [spec, q] : cases) {
    ++checked;
    const NumericValue direct = eval_direct(spec, q, opts);
    const Reduction red = reduce(tengine, spec, q);
    const NumericValue reduced = eval_reduction(red, tolerance, opts);
    const double diff = std::abs(direct.value - reduced.value);
    if (!(diff < tolerance)) {
      return CheckReport::fail("reduction", params, checked,
                               {spec.str() + " q=" + std::to_string(q),
                                "|direct-reduced| < " + std::to_string(tolerance),
                                std::to_string(diff)});
    }
  }
  return CheckReport::pass("reduction", params, checked);
}

struct AnalysisConfig {
  std::vector<Pattern> patterns = default_patterns();
  int r_max = 12;
  int remark_m_max = 25;
  std::vector<int> bound_ps = {1, 2};
  int bound_r_max = 8;
  long long bound_n_max = 50;
  std::vector<std::pair<HyperSpec, double>> reduction_cases = {
      {{1, 4, Pattern(2, 1)}, 5.0}, {{2, 3, Pattern(2, 1)}, 5.0}, {{1, 3, Pattern(1, 2)}, 4.0},
      {{2, 6, Pattern(1, 2)}, 7.0}, {{1, 2, Pattern(1, 1)}, 4.0}};
  double reduction_tolerance = 1e-6;
  EvalOptions eval;
  int jobs = 1;
};

// Deterministic ordered report list: remarks, per-pattern structure audits,
// bounds, the three conjecture scans, reduction soundness. Tasks are
// independent (each builds its own engines) so they may run concurrently;
// assembly order is fixed regardless of jobs.
inline std::vector<CheckReport> run_all(const AnalysisConfig& config) {
  std::vector<std::function<CheckReport()>> tasks;

  tasks.emplace_back([&config] {
    FaulhaberTable table;
    return check_coefficient_identities(table, config.remark_m_max);
  });
  for (const Pattern& pat : config.patterns) {
    tasks.emplace_back([&config, pat] {
      TEngine tengine;
      return tengine.verify_kernel_structure(pat, config.r_max);
    });
  }
  tasks.emplace_back([&config] {
    HyperEngine hyper;
    return check_bounds(hyper, config.patterns, config.bound_ps, config.bound_r_max,
                        config.bound_n_max);
  });
  tasks.emplace_back([&config] {
    TEngine tengine;
    return check_transpose_symmetry(tengine, config.patterns, config.r_max);
  });
  tasks.emplace_back([&config] {
    TEngine tengine;
    return check_antidiagonal_sums(tengine, config.patterns, config.r_max);
  });
  tasks.emplace_back([&config] {
    TEngine tengine;
    return check_sign_pattern(tengine, config.patterns, config.r_max);
  });
  tasks.emplace_back([&config] {
    return check_reduction_soundness(config.reduction_cases, config.reduction_tolerance,
                                     config.eval);
  });

  std::vector<CheckReport> reports(tasks.size());
  if (config.jobs <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) reports[i] = tasks[i]();
    return reports;
  }
  std::vector<std::future<void>> running;
  std::size_t next = 0;
  std::mutex mu;
  const int jobs = std::min<int>(config.jobs, static_cast<int>(tasks.size()));
  for (int w = 0; w < jobs; ++w) {
    running.push_back(std::async(std::launch::async, [&] {
      while (true) {
        std::size_t i;
        {
          std::lock_guard<std::mutex> lock(mu);
          if (next >= tasks.size()) return;
          i = next++;
        }
        reports[i] = tasks[i]();
      }
    }));
  }
  for (auto& f : running) f.get();
  return reports;
}

}  // namespace altharm
