#pragma once

// Sign-sector bivariate polynomials in (n, t):
//
//   P(n,t) = sum_{m,j,k} b[m][j][k] * s_k(n,t) * t^j * n^m
//
// over the four sign sectors
//
//   s_0 = 1,  s_1 = (-1)^{n-1+t-1},  s_2 = (-1)^{n-1},  s_3 = (-1)^{t-1}.
//
// Sparse canonical form: zero coefficients are never stored, so equality is
// structural. `deg` is the declared degree budget; every stored key satisfies
// m + j <= deg.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>

#include "altharm/rational.hpp"

namespace altharm {

inline constexpr int kSectorCount = 4;

// s_k(n,t) as +-1.
inline int sector_sign(int k, long long n, long long t) {
  switch (k) {
    case 0: return 1;
    case 1: return ((n - 1) + (t - 1)) % 2 == 0 ? 1 : -1;
    case 2: return (n - 1) % 2 == 0 ? 1 : -1;
    case 3: return (t - 1) % 2 == 0 ? 1 : -1;
    default: throw std::invalid_argument("sector id must be in 0..3");
  }
}

// Image of sector k under multiplication by (-1)^{n-1}: 0<->2, 1<->3.
inline int alternation_image(int k) {
  switch (k) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 0;
    case 3: return 1;
    default: throw std::invalid_argument("sector id must be in 0..3");
  }
}

class SignedBiPoly {
 public:
  // Key order (k, m, j) doubles as the wire-format term order.
  struct Key {
    int k = 0;
    int m = 0;
    int j = 0;
    auto operator<=>(const Key&) const = default;
  };
  using TermMap = std::map<Key, Rational>;

  explicit SignedBiPoly(int degree_budget = 0) : deg_(degree_budget) {
    if (degree_budget < 0) throw std::invalid_argument("degree budget must be nonnegative");
  }

  static SignedBiPoly constant(const Rational& value) {
    SignedBiPoly p(0);
    p.add_term(0, 0, 0, value);
    return p;
  }

  int degree_budget() const { return deg_; }

  // Max m+j over stored keys; 0 for the zero polynomial.
  int total_degree() const {
    int d = 0;
    for (const auto& [key, coef] : terms_) d = std::max(d, key.m + key.j);
    return d;
  }

  // Accumulates into b[m][j][k], dropping the entry if it cancels to zero.
  void add_term(int m, int j, int k, const Rational& coef) {
    if (m < 0 || j < 0) throw std::invalid_argument("monomial exponents must be nonnegative");
    if (k < 0 || k >= kSectorCount) throw std::invalid_argument("sector id must be in 0..3");
    if (coef.is_zero()) return;
    if (m + j > deg_) throw std::logic_error("term exceeds declared degree budget");
    const Key key{k, m, j};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, coef);
    } else {
      it->second += coef;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  // b[m][j][k]; zero when absent.
  Rational coeff(int m, int j, int k) const {
    auto it = terms_.find(Key{k, m, j});
    return it == terms_.end() ? Rational() : it->second;
  }

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  std::set<int> active_sectors() const {
    std::set<int> out;
    for (const auto& [key, coef] : terms_) out.insert(key.k);
    return out;
  }

  Rational evaluate(long long n, long long t) const {
    Rational total;
    for (const auto& [key, coef] : terms_) {
      const Integer power = int_pow(Integer(static_cast<long>(t)), static_cast<unsigned long>(key.j)) *
                            int_pow(Integer(static_cast<long>(n)), static_cast<unsigned long>(key.m));
      Rational monomial = coef * Rational(power);
      total += sector_sign(key.k, n, t) < 0 ? -monomial : monomial;
    }
    return total;
  }

  // Representation of (-1)^{n-1} * P: sectors permute 0<->2, 1<->3 and
  // coefficients are untouched.
  SignedBiPoly mul_alternation() const {
    SignedBiPoly out(deg_);
    for (const auto& [key, coef] : terms_) out.add_term(key.m, key.j, alternation_image(key.k), coef);
    return out;
  }

  // Re-declare the budget (e.g. to the exact budget of a build level).
  SignedBiPoly with_degree_budget(int budget) const {
    if (total_degree() > budget) throw std::logic_error("degree budget below actual total degree");
    SignedBiPoly out(budget);
    out.terms_ = terms_;
    return out;
  }

  // Structural equality of canonical forms == agreement at all (n,t).
  // The declared budget is metadata and does not participate.
  friend bool operator==(const SignedBiPoly& a, const SignedBiPoly& b) {
    return a.terms_ == b.terms_;
  }

 private:
  int deg_;
  TermMap terms_;
};

}  // namespace altharm
