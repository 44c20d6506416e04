#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "altharm/eulersum.hpp"
#include "exact_identity.hpp"

using altharm::alt_zeta_tail;
using altharm::EulerSumTerm;
using altharm::EvalOptions;
using altharm::HyperEngine;
using altharm::HyperSpec;
using altharm::NumericValue;
using altharm::Pattern;
using altharm::Rational;
using altharm::Reduction;
using altharm::Sign;
using altharm::TEngine;
using altharm::zeta;
using altharm::zeta_tail;

namespace {

EulerSumTerm term(Sign s1, Sign s2, int p, double q, Rational coef = Rational(1)) {
  EulerSumTerm t;
  t.sigma1 = s1;
  t.sigma2 = s2;
  t.p = p;
  t.q = q;
  t.coef = coef;
  return t;
}

const EulerSumTerm* find_term(const Reduction& red, Sign s1, Sign s2, int p, double q) {
  for (const EulerSumTerm& t : red.terms)
    if (t.sigma1 == s1 && t.sigma2 == s2 && t.p == p && t.q == q) return &t;
  return nullptr;
}

}  // namespace

TEST_CASE("zeta evaluation") {
  const double pi = 3.14159265358979323846;
  CHECK(std::abs(zeta(2.0) - pi * pi / 6.0) < 1e-12);
  CHECK(std::abs(zeta(3.0) - 1.2020569031595942854) < 1e-12);
  CHECK(std::abs(zeta(4.0) - std::pow(pi, 4) / 90.0) < 1e-12);
  CHECK(std::abs(zeta(1.5) - 2.6123753486854883) < 1e-10);
  CHECK_THROWS_AS(zeta(1.0), std::domain_error);
}

TEST_CASE("plain and alternating zeta tails") {
  // plain: zeta(s) = partial + tail
  for (double s : {2.0, 3.0, 4.5}) {
    double partial = 0;
    for (int n = 1; n <= 50; ++n) partial += std::pow(n, -s);
    CHECK(std::abs(partial + zeta_tail(s, 51.0) - zeta(s)) < 1e-13);
  }
  // alternating: eta(s) = (1 - 2^{1-s}) zeta(s)
  for (double s : {2.0, 3.0}) {
    const double eta = (1.0 - std::pow(2.0, 1.0 - s)) * zeta(s);
    double partial = 0;
    for (int n = 1; n <= 50; ++n) partial += ((n - 1) % 2 ? -1.0 : 1.0) * std::pow(n, -s);
    CHECK(std::abs(partial + alt_zeta_tail(s, 51.0) - eta) < 1e-13);
    double partial2 = partial + std::pow(51.0, -s);
    CHECK(std::abs(partial2 + alt_zeta_tail(s, 52.0) - eta) < 1e-13);
  }
}

TEST_CASE("convergence predicate") {
  CHECK(term(Sign::plus, Sign::plus, 1, 2.0).converges());
  CHECK_FALSE(term(Sign::plus, Sign::plus, 1, 1.0).converges());
  CHECK(term(Sign::plus, Sign::plus, 0, 2.5).converges());   // growth 1
  CHECK_FALSE(term(Sign::plus, Sign::plus, 0, 2.0).converges());
  CHECK(term(Sign::plus, Sign::minus, 2, 0.5).converges());  // q > 0 suffices
  CHECK_FALSE(term(Sign::minus, Sign::minus, -1, 2.0).converges());
  CHECK(term(Sign::minus, Sign::minus, -1, 2.5).converges());
}

TEST_CASE("reduction term lists") {
  TEngine tengine;

  SECTION("classical base case") {
    const Reduction red = reduce(tengine, {1, 1, Pattern(1, 0)}, 2.0);
    REQUIRE(red.terms.size() == 1);
    CHECK(red.terms[0].coef == Rational(1));
    CHECK(red.terms[0].sigma1 == Sign::plus);
    CHECK(red.terms[0].sigma2 == Sign::plus);
    CHECK(red.terms[0].p == 1);
    CHECK(red.terms[0].q == 2.0);
    CHECK_FALSE(red.below_hypothesis);
  }

  SECTION("depth-3 kernel of (2,1) at p=2, q=5") {
    const Reduction red = reduce(tengine, {2, 3, Pattern(2, 1)}, 5.0);
    REQUIRE(red.terms.size() == 6);
    for (const EulerSumTerm& t : red.terms) {
      CHECK(t.sigma1 == Sign::plus);
      CHECK(t.sigma2 == Sign::plus);
    }
    CHECK(find_term(red, Sign::plus, Sign::plus, 2, 3.0)->coef == Rational(1, 2));
    CHECK(find_term(red, Sign::plus, Sign::plus, 1, 4.0)->coef == Rational(-1));
    CHECK(find_term(red, Sign::plus, Sign::plus, 2, 4.0)->coef == Rational(3, 2));
    CHECK(find_term(red, Sign::plus, Sign::plus, 0, 5.0)->coef == Rational(1, 2));
    CHECK(find_term(red, Sign::plus, Sign::plus, 1, 5.0)->coef == Rational(-3, 2));
    CHECK(find_term(red, Sign::plus, Sign::plus, 2, 5.0)->coef == Rational(1));
  }

  SECTION("sector map: (1,2) depth 3 yields only mixed-sign sums") {
    const Reduction red = reduce(tengine, {1, 3, Pattern(1, 2)}, 4.0);
    REQUIRE(!red.terms.empty());
    for (const EulerSumTerm& t : red.terms) {
      const bool plus_minus = t.sigma1 == Sign::plus && t.sigma2 == Sign::minus;
      const bool minus_plus = t.sigma1 == Sign::minus && t.sigma2 == Sign::plus;
      CHECK((plus_minus || minus_plus));
    }
  }

  SECTION("type-I pattern at depth 2") {
    const Reduction red = reduce(tengine, {1, 2, Pattern(0, 1)}, 3.0);
    for (const EulerSumTerm& t : red.terms) {
      const bool plus_minus = t.sigma1 == Sign::plus && t.sigma2 == Sign::minus;
      const bool minus_plus = t.sigma1 == Sign::minus && t.sigma2 == Sign::plus;
      CHECK((plus_minus || minus_plus));
    }
  }

  SECTION("divergent relaxed q is rejected with the offending term named") {
    CHECK_THROWS_WITH(reduce(tengine, {1, 1, Pattern(1, 0)}, 1.0),
                      Catch::Matchers::ContainsSubstring("S^{+,+}_{1,1"));
    // below hypothesis but convergent: q = 1.5 < r+1 = 2
    const Reduction red = reduce(tengine, {2, 1, Pattern(1, 0)}, 1.5);
    CHECK(red.below_hypothesis);
    REQUIRE(red.terms.size() == 1);
  }
}

TEST_CASE("classical sum evaluation") {
  const EvalOptions opts;

  SECTION("euler anchor") {
    const NumericValue s12 = eval_classical(term(Sign::plus, Sign::plus, 1, 2.0), 1e-8, opts);
    CHECK(std::abs(s12.value - 2.0 * zeta(3.0)) < 1e-9);
    CHECK(std::abs(s12.value - 2.404113806319188) < 1e-8);

    const NumericValue s13 = eval_classical(term(Sign::plus, Sign::plus, 1, 3.0), 1e-8, opts);
    const double pi4_72 = std::pow(3.14159265358979323846, 4) / 72.0;
    CHECK(std::abs(s13.value - pi4_72) < 1e-9);
  }

  SECTION("euler identity for m = 2..5") {
    for (int m = 2; m <= 5; ++m) {
      const NumericValue lhs = eval_classical(term(Sign::plus, Sign::plus, 1, m), 1e-8, opts);
      double rhs = (m + 2) * zeta(m + 1.0);
      for (int n = 1; n <= m - 2; ++n) rhs -= zeta(static_cast<double>(m - n)) * zeta(n + 1.0);
      CHECK(std::abs(2.0 * lhs.value - rhs) < 1e-8);
    }
  }

  SECTION("alternating outer sums are consistent across budgets") {
    const NumericValue a = eval_classical(term(Sign::minus, Sign::minus, 1, 2.0), 1e-8, opts);
    EvalOptions larger;
    larger.max_terms = 2 * opts.max_terms;
    const NumericValue b = eval_classical(term(Sign::minus, Sign::minus, 1, 2.0), 1e-8, larger);
    CHECK(std::abs(a.value - b.value) < 1e-9);

    const NumericValue c = eval_classical(term(Sign::plus, Sign::minus, 1, 2.0), 1e-8, opts);
    const NumericValue d = eval_classical(term(Sign::plus, Sign::minus, 1, 2.0), 1e-8, larger);
    CHECK(std::abs(c.value - d.value) < 1e-9);
  }

  SECTION("power-sum inner orders") {
    // S^{+,+}_{0,5}: H^{(0)}_n = n, so the sum is zeta(4)
    const NumericValue v = eval_classical(term(Sign::plus, Sign::plus, 0, 5.0), 1e-8, opts);
    CHECK(std::abs(v.value - zeta(4.0)) < 1e-10);
    // S^{+,+}_{-1,6}: H^{(-1)}_n = n(n+1)/2 -> (zeta(4)+zeta(5))/2
    const NumericValue w = eval_classical(term(Sign::plus, Sign::plus, -1, 6.0), 1e-8, opts);
    CHECK(std::abs(w.value - 0.5 * (zeta(4.0) + zeta(5.0))) < 1e-10);
  }

  SECTION("divergent terms are refused") {
    CHECK_THROWS_AS(eval_classical(term(Sign::plus, Sign::plus, 1, 1.0), 1e-8, opts),
                    altharm::DivergentTermError);
  }
}

TEST_CASE("direct vs reduced evaluation") {
  TEngine tengine;
  EvalOptions opts;
  opts.max_terms = 20000;
  const struct {
    HyperSpec spec;
    double q;
  } cases[] = {{{1, 4, Pattern(2, 1)}, 5.0}, {{1, 3, Pattern(1, 2)}, 4.0}, {{1, 2, Pattern(1, 1)}, 4.0}};
  for (const auto& c : cases) {
    const NumericValue direct = eval_direct(c.spec, c.q, opts);
    const NumericValue reduced = eval_reduction(reduce(tengine, c.spec, c.q), 1e-8, opts);
    CHECK(std::abs(direct.value - reduced.value) < 1e-6);
    CHECK(std::abs(direct.value - reduced.value) < direct.err_est + reduced.err_est + 1e-9);
  }
}

TEST_CASE("non-integer outer exponents") {
  TEngine tengine;
  EvalOptions opts;
  opts.max_terms = 20000;
  const HyperSpec spec{1, 4, Pattern(2, 1)};
  const Reduction red = reduce(tengine, spec, 5.5);
  for (const EulerSumTerm& t : red.terms) CHECK(t.q == 5.5 - std::round(5.5 - t.q));
  const NumericValue direct = eval_direct(spec, 5.5, opts);
  const NumericValue reduced = eval_reduction(red, 1e-8, opts);
  CHECK(std::abs(direct.value - reduced.value) < 1e-6);
}

TEST_CASE("exact prefix identity pins the index mapping") {
  TEngine tengine;
  HyperEngine hyper;
  std::string failure;
  CHECK(exact_identity::reduction_prefixes_match(tengine, hyper, {2, 3, Pattern(2, 1)}, 5, 200,
                                                 &failure));
  INFO(failure);
  CHECK(exact_identity::reduction_prefixes_match(tengine, hyper, {1, 4, Pattern(2, 1)}, 5, 120,
                                                 &failure));
  CHECK(exact_identity::reduction_prefixes_match(tengine, hyper, {2, 6, Pattern(1, 2)}, 7, 80,
                                                 &failure));
}

TEST_CASE("nonlinear product expansion") {
  TEngine tengine;
  HyperEngine hyper;

  SECTION("two depth-1 factors collapse to a single product term") {
    const auto terms =
        expand_product(tengine, {{2, 1, Pattern(1, 0)}, {3, 1, Pattern(0, 1)}}, 6.0);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].coef == Rational(1));
    CHECK(terms[0].n_power == 0);
    CHECK(terms[0].outer == Sign::plus);
    REQUIRE(terms[0].factors.size() == 2);
  }

  SECTION("single factor matches the linear reduction term count") {
    const auto terms = expand_product(tengine, {{2, 3, Pattern(2, 1)}}, 5.0);
    const Reduction red = reduce(tengine, {2, 3, Pattern(2, 1)}, 5.0);
    CHECK(terms.size() == red.terms.size());
  }

  SECTION("exact prefix identity for a product of two kernels") {
    std::string failure;
    const std::vector<HyperSpec> specs = {{1, 2, Pattern(2, 1)}, {1, 3, Pattern(1, 2)}};
    CHECK(exact_identity::product_prefixes_match(tengine, hyper, specs, 8, 150, &failure));
    INFO(failure);
  }

  SECTION("numeric totals agree") {
    EvalOptions opts;
    opts.max_terms = 20000;
    const std::vector<HyperSpec> specs = {{1, 2, Pattern(2, 1)}, {1, 3, Pattern(1, 2)}};
    const auto terms = expand_product(tengine, specs, 8.0);
    const NumericValue a = eval_nonlinear(terms, 8.0, opts);
    const NumericValue b = eval_product_direct(specs, 8.0, opts);
    CHECK(std::abs(a.value - b.value) < 1e-6);
  }

  SECTION("divergence guard names the term") {
    CHECK_THROWS_AS(expand_product(tengine, {{1, 1, Pattern(1, 0)}, {1, 1, Pattern(1, 0)}}, 1.0),
                    altharm::DivergentTermError);
  }
}
