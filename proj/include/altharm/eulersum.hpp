#pragma once

// Reduction of sum_n H_n^{(p,r,s1,s2)}/n^q to classical (alternating) Euler
// sums, plus floating evaluation of both sides.
//
// Writing the kernel as T(r,s1,s2,n,t) = sum b[m][j][k] s_k(n,t) t^j n^m and
// swapping the (n,t) summation order, the stored coefficient of t^j n^m in
// sector k contributes
//
//   b[m][j][k] * S^{sigma(k)}_{p-j, q-m},   sigma: 0->(+,+) 1->(-,-) 2->(+,-) 3->(-,+)
//
// where S^{s1,s2}_{p,q} = sum_n (outer sign) {H or Hbar}_n^{(p)} / n^q. The
// same kernel expansion turns products of hyperharmonics into classical
// nonlinear Euler sums: each factor i contributes coef * n^{m_i} * (sign) *
// {H,Hbar}_n^{(p_i - j_i)} and the (-1)^{n-1} factors cancel pairwise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "altharm/hyperharmonic.hpp"
#include "altharm/numerics.hpp"
#include "altharm/rational.hpp"
#include "altharm/tengine.hpp"

namespace altharm {

enum class Sign { plus, minus };
inline char sign_char(Sign s) { return s == Sign::plus ? '+' : '-'; }

struct DivergentTermError : std::runtime_error {
  explicit DivergentTermError(const std::string& what) : std::runtime_error(what) {}
};

// One classical sum descriptor sigma-pair/(p,q) with a rational weight.
// Convergence predicate (conservative): with g = max(0, 1-p),
//   outer '+': q - g > 1,   outer '-': q > g.
struct EulerSumTerm {
  Sign sigma1 = Sign::plus;  // inner-sum alternation
  Sign sigma2 = Sign::plus;  // outer alternation
  int p = 1;
  double q = 2.0;
  Rational coef;

  double growth() const { return std::max(0.0, 1.0 - static_cast<double>(p)); }
  bool converges() const {
    return sigma2 == Sign::plus ? q - growth() > 1.0 : q > growth();
  }

  std::string key_str() const {
    return std::string("S^{") + sign_char(sigma1) + "," + sign_char(sigma2) + "}_{" +
           std::to_string(p) + "," + std::to_string(q) + "}";
  }

  auto key() const { return std::make_tuple(static_cast<int>(sigma1), static_cast<int>(sigma2), p, q); }
};

struct Reduction {
  std::vector<EulerSumTerm> terms;   // merged, deterministic order
  bool below_hypothesis = false;     // q < r+1 but every term converges
};

inline Reduction reduce(TEngine& tengine, const HyperSpec& spec, double q) {
  if (spec.p < 1 || spec.r < 1) throw std::invalid_argument("reduce requires p >= 1 and r >= 1");
  const SignedBiPoly& kernel = tengine.build(spec.pattern, spec.r);

  static constexpr Sign kSectorMap[4][2] = {{Sign::plus, Sign::plus},
                                            {Sign::minus, Sign::minus},
                                            {Sign::plus, Sign::minus},
                                            {Sign::minus, Sign::plus}};
  std::map<std::tuple<int, int, int, double>, Rational> merged;
  for (const auto& [key, coef] : kernel.terms()) {
    const int pp = spec.p - key.j;
    const double qq = q - key.m;
    const auto mk = std::make_tuple(static_cast<int>(kSectorMap[key.k][0]),
                                    static_cast<int>(kSectorMap[key.k][1]), pp, qq);
    auto [it, inserted] = merged.emplace(mk, coef);
    if (!inserted) it->second += coef;
  }

  Reduction out;
  out.below_hypothesis = q < spec.r + 1;
  for (const auto& [mk, coef] : merged) {
    if (coef.is_zero()) continue;
    EulerSumTerm term;
    term.sigma1 = static_cast<Sign>(std::get<0>(mk));
    term.sigma2 = static_cast<Sign>(std::get<1>(mk));
    term.p = std::get<2>(mk);
    term.q = std::get<3>(mk);
    term.coef = coef;
    if (!term.converges())
      throw DivergentTermError("reduction produced divergent term " + term.key_str());
    out.terms.push_back(std::move(term));
  }
  return out;
}

struct EvalOptions {
  long long max_terms = 100000;
  int euler_depth = 20;
};

namespace numdetail {

inline double inner_increment(Sign sigma1, int p, long long n) {
  double v = std::pow(static_cast<double>(n), -static_cast<double>(p));
  if (sigma1 == Sign::minus && (n - 1) % 2 != 0) v = -v;
  return v;
}

// sum_{j>N} s1(j) j^{-p} Z_q(j) expanded through the Euler-Maclaurin series
// of Z_q; the j-sums collapse to plain/alternating zeta tails at N+1.
inline double swapped_tail(Sign sigma1, int p, double q, double a) {
  const auto T = [&](double s) {
    return sigma1 == Sign::plus ? zeta_tail(s, a) : alt_zeta_tail(s, a);
  };
  double out = T(p + q - 1.0) / (q - 1.0) + 0.5 * T(p + q);
  out += (q / 12.0) * T(p + q + 1.0);
  out -= (q * (q + 1.0) * (q + 2.0) / 720.0) * T(p + q + 3.0);
  out += (q * (q + 1.0) * (q + 2.0) * (q + 3.0) * (q + 4.0) / 30240.0) * T(p + q + 5.0);
  return out;
}

}  // namespace numdetail

// Floating estimate of S^{sigma1,sigma2}_{p,q}. Plain outer sums get the full
// Euler-Maclaurin tail correction (value includes it); alternating outer sums
// are resolved by iterated averaging of the last euler_depth+1 partial sums.
inline NumericValue eval_classical(const EulerSumTerm& term, double precision_target,
                                   const EvalOptions& opts = {}) {
  if (!term.converges()) throw DivergentTermError("cannot evaluate divergent " + term.key_str());
  const long long N = std::max<long long>(opts.max_terms, opts.euler_depth + 32);
  const double q = term.q;

  double inner = 0.0;
  KahanAccumulator acc, absacc;

  if (term.sigma2 == Sign::plus) {
    for (long long n = 1; n <= N; ++n) {
      inner += numdetail::inner_increment(term.sigma1, term.p, n);
      const double a = inner * std::pow(static_cast<double>(n), -q);
      acc.add(a);
      absacc.add(std::abs(a));
    }
    const double a1 = static_cast<double>(N + 1);
    const double tail = inner * zeta_tail(q, a1) + numdetail::swapped_tail(term.sigma1, term.p, q, a1);
    const double value = acc.value() + tail;
    // truncation of the tail expansions at N ~ 1e5 sits far below the pow()
    // roundoff of the tail itself, so roundoff terms dominate the estimate
    const double err = 8.0 * std::numeric_limits<double>::epsilon() * absacc.value() +
                       1e-13 * std::abs(tail) + 1e-18;
    (void)precision_target;
    return {value, err};
  }

  // alternating outer sum
  const int depth = opts.euler_depth;
  std::vector<double> ring;
  ring.reserve(static_cast<std::size_t>(depth) + 1);
  double w_half = 0.0, w_last = 0.0;
  int sign_changes = 0;
  double prev_w = 0.0;
  for (long long n = 1; n <= N; ++n) {
    inner += numdetail::inner_increment(term.sigma1, term.p, n);
    double w = inner * std::pow(static_cast<double>(n), -q);
    if ((n - 1) % 2 != 0) w = -w;
    acc.add(w);
    absacc.add(std::abs(w));
    if (n == N / 2) w_half = w;
    if (n > N - 8 && prev_w != 0.0 && w * prev_w < 0.0) ++sign_changes;
    prev_w = w;
    w_last = w;
    if (n > N - depth - 1) ring.push_back(acc.value());
  }
  NumericValue averaged = average_partial_sums(std::move(ring));
  double err = averaged.err_est + 8.0 * std::numeric_limits<double>::epsilon() * absacc.value();
  if (sign_changes < 4 && w_half != 0.0 && w_last != 0.0) {
    // terms did not alternate near the end: averaging does not cancel the
    // tail, so add a power-law remainder estimate
    const double alpha = std::log2(std::abs(w_half) / std::abs(w_last));
    if (alpha > 1.0) err += std::abs(w_last) * static_cast<double>(N) / (alpha - 1.0);
    else err += std::abs(w_last) * static_cast<double>(N);
  }
  (void)precision_target;
  return {averaged.value, err};
}

// sum of coef * S over a reduction; error adds |coef|-weighted estimates.
inline NumericValue eval_reduction(const Reduction& red, double precision_target,
                                   const EvalOptions& opts = {}) {
  KahanAccumulator acc;
  double err = 0.0;
  for (const EulerSumTerm& term : red.terms) {
    const NumericValue v = eval_classical(term, precision_target, opts);
    const double c = term.coef.to_double();
    acc.add(c * v.value);
    err += std::abs(c) * v.err_est;
  }
  return {acc.value(), err};
}

// Partial sum sum_{n<=N} H_n^{(p,r,s1,s2)} / n^q in doubles, tail estimate
// attached as err_est (the value itself is the bare partial sum).
inline NumericValue eval_direct(const HyperSpec& spec, double q, const EvalOptions& opts = {}) {
  if (spec.p < 1 || spec.r < 1) throw std::invalid_argument("eval_direct requires p >= 1 and r >= 1");
  const long long N = std::max<long long>(opts.max_terms, 64);

  std::vector<double> levels(static_cast<std::size_t>(spec.r), 0.0);
  std::vector<StepKind> kinds(static_cast<std::size_t>(spec.r), StepKind::plain);
  for (int r = 2; r <= spec.r; ++r)
    kinds[static_cast<std::size_t>(r - 1)] = step_kind(spec.pattern, r);

  KahanAccumulator acc, absacc;
  double h_half = 0.0, h_prev2 = 0.0, h_prev = 0.0, h_last = 0.0;
  for (long long n = 1; n <= N; ++n) {
    const bool odd = (n - 1) % 2 != 0;
    double carry = std::pow(static_cast<double>(n), -static_cast<double>(spec.p));
    levels[0] += carry;
    carry = levels[0];
    for (int r = 2; r <= spec.r; ++r) {
      const auto i = static_cast<std::size_t>(r - 1);
      levels[i] += (kinds[i] == StepKind::alternating && odd) ? -carry : carry;
      carry = levels[i];
    }
    const double a = carry * std::pow(static_cast<double>(n), -q);
    acc.add(a);
    absacc.add(std::abs(a));
    if (n == N / 2) h_half = carry;
    h_prev2 = h_prev;
    h_prev = h_last;
    h_last = carry;
  }

  // tail estimate: alternating-sign hyper values leave at most one term;
  // otherwise extrapolate |hyper| ~ n^alpha from the two sampled points
  const double aN = std::abs(h_last) * std::pow(static_cast<double>(N), -q);
  double tail_est;
  const bool oscillating = (h_last * h_prev < 0.0) && (h_prev * h_prev2 < 0.0);
  if (oscillating) {
    tail_est = aN;
  } else if (h_half != 0.0 && h_last != 0.0) {
    const double alpha = std::log2(std::abs(h_last) / std::abs(h_half));
    const double s_eff = q - alpha;
    tail_est = s_eff > 1.0 ? aN * static_cast<double>(N) / (s_eff - 1.0)
                           : std::numeric_limits<double>::infinity();
  } else {
    tail_est = aN * static_cast<double>(N);
  }
  const double err = tail_est + 8.0 * std::numeric_limits<double>::epsilon() * absacc.value();
  return {acc.value(), err};
}

// ---------------------------------------------------------------------------
// Nonlinear products
// ---------------------------------------------------------------------------

// One expanded monomial of a product of kernel expansions:
//   coef * (outer sign) * n^{n_power} * prod_i {H or Hbar}_n^{(order_i)}
struct NonlinearTerm {
  Rational coef;
  int n_power = 0;          // J
  Sign outer = Sign::plus;  // minus means an uncancelled (-1)^{n-1}
  std::vector<std::pair<bool, int>> factors;  // (inner alternating?, order), sorted

  double growth() const {
    double g = n_power;
    for (const auto& [alt, ord] : factors) g += std::max(0.0, 1.0 - static_cast<double>(ord));
    return g;
  }
  bool converges(double q) const {
    return outer == Sign::plus ? q - growth() > 1.0 : q - growth() > 0.0;
  }

  std::string key_str() const {
    std::string s = "n^" + std::to_string(n_power);
    if (outer == Sign::minus) s += " (-1)^(n-1)";
    for (const auto& [alt, ord] : factors)
      s += std::string(" ") + (alt ? "Hbar^(" : "H^(") + std::to_string(ord) + ")";
    return s;
  }
};

inline std::vector<NonlinearTerm> expand_product(TEngine& tengine,
                                                 const std::vector<HyperSpec>& specs, double q) {
  if (specs.empty()) throw std::invalid_argument("expand_product requires at least one factor");

  struct Component {
    Rational coef;
    int n_power;
    bool alt_outer;   // carries (-1)^{n-1}
    bool alt_inner;   // Hbar vs H
    int order;
  };
  std::vector<std::vector<Component>> factors;
  double combinations = 1.0;
  for (const HyperSpec& spec : specs) {
    if (spec.p < 1 || spec.r < 1) throw std::invalid_argument("factor requires p >= 1 and r >= 1");
    const SignedBiPoly& kernel = tengine.build(spec.pattern, spec.r);
    std::vector<Component> comps;
    for (const auto& [key, coef] : kernel.terms()) {
      comps.push_back({coef, key.m, key.k == 1 || key.k == 2, key.k == 1 || key.k == 3,
                       spec.p - key.j});
    }
    combinations *= static_cast<double>(comps.size());
    factors.push_back(std::move(comps));
  }
  if (combinations > 2e6)
    throw std::invalid_argument("product expansion too large (" +
                                std::to_string(static_cast<long long>(combinations)) + " monomials)");

  using Key = std::tuple<int, int, std::vector<std::pair<bool, int>>>;
  std::map<Key, Rational> merged;
  std::vector<std::size_t> idx(factors.size(), 0);
  while (true) {
    Rational coef(1);
    int n_power = 0;
    int alt_count = 0;
    std::vector<std::pair<bool, int>> parts;
    parts.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Component& c = factors[i][idx[i]];
      coef *= c.coef;
      n_power += c.n_power;
      alt_count += c.alt_outer ? 1 : 0;
      parts.emplace_back(c.alt_inner, c.order);
    }
    std::sort(parts.begin(), parts.end());
    const Key key{n_power, alt_count % 2, std::move(parts)};
    auto [it, inserted] = merged.emplace(key, coef);
    if (!inserted) it->second += coef;

    std::size_t pos = 0;
    while (pos < idx.size() && ++idx[pos] == factors[pos].size()) idx[pos++] = 0;
    if (pos == idx.size()) break;
  }

  std::vector<NonlinearTerm> out;
  for (auto& [key, coef] : merged) {
    if (coef.is_zero()) continue;
    NonlinearTerm term;
    term.coef = coef;
    term.n_power = std::get<0>(key);
    term.outer = std::get<1>(key) == 0 ? Sign::plus : Sign::minus;
    term.factors = std::get<2>(key);
    if (!term.converges(q))
      throw DivergentTermError("expanded product term diverges at q=" + std::to_string(q) + ": " +
                               term.key_str());
    out.push_back(std::move(term));
  }
  return out;
}

// sum_n [sum of expanded terms]/n^q by streaming the inner prefix values.
inline NumericValue eval_nonlinear(const std::vector<NonlinearTerm>& terms, double q,
                                   const EvalOptions& opts = {}) {
  const long long N = std::max<long long>(opts.max_terms, 64);
  std::map<std::pair<bool, int>, double> inner;
  for (const NonlinearTerm& t : terms)
    for (const auto& f : t.factors) inner.emplace(f, 0.0);

  std::vector<double> coefs;
  coefs.reserve(terms.size());
  for (const NonlinearTerm& t : terms) coefs.push_back(t.coef.to_double());

  KahanAccumulator acc, absacc;
  double total_last = 0.0;
  for (long long n = 1; n <= N; ++n) {
    for (auto& [key, val] : inner)
      val += numdetail::inner_increment(key.first ? Sign::minus : Sign::plus, key.second, n);
    const double nq = std::pow(static_cast<double>(n), -q);
    const bool odd = (n - 1) % 2 != 0;
    double row = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const NonlinearTerm& t = terms[i];
      double v = coefs[i] * std::pow(static_cast<double>(n), t.n_power);
      if (t.outer == Sign::minus && odd) v = -v;
      for (const auto& f : t.factors) v *= inner.at(f);
      row += v;
    }
    const double a = row * nq;
    acc.add(a);
    absacc.add(std::abs(a));
    total_last = a;
  }
  // crude power-law tail: decay exponent at least 2 under the convergence
  // predicate margins used in practice
  const double err = std::abs(total_last) * static_cast<double>(N) +
                     8.0 * std::numeric_limits<double>::epsilon() * absacc.value();
  return {acc.value(), err};
}

// sum_{n<=N} prod_i H_n^{(p_i,r_i,pattern_i)} / n^q in doubles.
inline NumericValue eval_product_direct(const std::vector<HyperSpec>& specs, double q,
                                        const EvalOptions& opts = {}) {
  if (specs.empty()) throw std::invalid_argument("eval_product_direct requires a factor");
  const long long N = std::max<long long>(opts.max_terms, 64);

  struct FactorState {
    std::vector<double> levels;
    std::vector<StepKind> kinds;
    int p;
  };
  std::vector<FactorState> state;
  for (const HyperSpec& spec : specs) {
    FactorState fs;
    fs.levels.assign(static_cast<std::size_t>(spec.r), 0.0);
    fs.kinds.assign(static_cast<std::size_t>(spec.r), StepKind::plain);
    for (int r = 2; r <= spec.r; ++r)
      fs.kinds[static_cast<std::size_t>(r - 1)] = step_kind(spec.pattern, r);
    fs.p = spec.p;
    state.push_back(std::move(fs));
  }

  KahanAccumulator acc, absacc;
  double a_last = 0.0;
  for (long long n = 1; n <= N; ++n) {
    const bool odd = (n - 1) % 2 != 0;
    double prod = 1.0;
    for (FactorState& fs : state) {
      double carry = std::pow(static_cast<double>(n), -static_cast<double>(fs.p));
      fs.levels[0] += carry;
      carry = fs.levels[0];
      for (std::size_t i = 1; i < fs.levels.size(); ++i) {
        fs.levels[i] += (fs.kinds[i] == StepKind::alternating && odd) ? -carry : carry;
        carry = fs.levels[i];
      }
      prod *= carry;
    }
    const double a = prod * std::pow(static_cast<double>(n), -q);
    acc.add(a);
    absacc.add(std::abs(a));
    a_last = a;
  }
  const double err = std::abs(a_last) * static_cast<double>(N) +
                     8.0 * std::numeric_limits<double>::epsilon() * absacc.value();
  return {acc.value(), err};
}

inline EvalOptions eval_options_from_env() {
  EvalOptions opts;
  if (const char* cap = std::getenv("ALTHARM_MAX_TERMS")) {
    char* end = nullptr;
    const long long v = std::strtoll(cap, &end, 10);
    if (end != cap && v > 0) opts.max_terms = v;
  }
  return opts;
}

}  // namespace altharm
