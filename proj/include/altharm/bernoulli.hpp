#pragma once

#include <cstddef>
#include <vector>

#include "altharm/rational.hpp"

namespace altharm {

// Bernoulli numbers in the plus convention (B_1 = +1/2), i.e. the expansion
// coefficients of t/(1 - e^{-t}). Determined by
//
//   sum_{j=0}^{k} C(k+1,j) B_j = k + 1        (k >= 0)
//
// so B_k = (k+1 - sum_{j<k} C(k+1,j) B_j) / (k+1). Table grows lazily and is
// immutable once extended; extend from a single thread before sharing.
class BernoulliTable {
 public:
  const Rational& at(std::size_t n) {
    while (values_.size() <= n) grow();
    return values_[n];
  }

  std::size_t size() const { return values_.size(); }

 private:
  void grow() {
    const std::size_t k = values_.size();
    if (k == 0) {
      values_.emplace_back(1);
      return;
    }
    Rational acc(static_cast<long>(k) + 1);
    for (std::size_t j = 0; j < k; ++j)
      acc -= Rational(binomial(static_cast<long>(k) + 1, static_cast<long>(j))) * values_[j];
    values_.push_back(acc / Rational(static_cast<long>(k) + 1));
  }

  std::vector<Rational> values_;
};

}  // namespace altharm
