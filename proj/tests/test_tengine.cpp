#include <catch2/catch_amalgamated.hpp>

#include "altharm/tengine.hpp"
#include "golden_tables.hpp"

using altharm::degree;
using altharm::Pattern;
using altharm::Rational;
using altharm::SignedBiPoly;
using altharm::step_kind;
using altharm::StepKind;
using altharm::TEngine;

TEST_CASE("pattern validation") {
  CHECK_THROWS_AS(Pattern(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Pattern(-1, 2), std::invalid_argument);
  CHECK(Pattern(2, 1).period() == 3);
}

TEST_CASE("step kinds follow the residue cycle") {
  CHECK(step_kind(Pattern(2, 1), 4) == StepKind::alternating);  // r-1 = 3
  CHECK(step_kind(Pattern(1, 2), 2) == StepKind::plain);        // r-1 = 1
  for (int r = 2; r <= 12; ++r) {
    CHECK(step_kind(Pattern(1, 0), r) == StepKind::plain);
    CHECK(step_kind(Pattern(0, 1), r) == StepKind::alternating);
  }
  // (2,1): plain, plain, alternating, repeating
  CHECK(step_kind(Pattern(2, 1), 2) == StepKind::plain);
  CHECK(step_kind(Pattern(2, 1), 3) == StepKind::plain);
  CHECK(step_kind(Pattern(2, 1), 7) == StepKind::alternating);
}

TEST_CASE("degree budgets") {
  for (int r = 1; r <= 8; ++r) CHECK(degree(Pattern(2, 1), r) == golden::kF21[r]);
  for (int r = 1; r <= 7; ++r) CHECK(degree(Pattern(1, 2), r) == golden::kF12[r]);
  for (const Pattern& pat : {Pattern(1, 1), Pattern(3, 2), Pattern(1, 0), Pattern(0, 1)})
    CHECK(degree(pat, 1) == 0);
  for (int r = 1; r <= 20; ++r) {
    CHECK(degree(Pattern(1, 0), r) == r - 1);
    CHECK(degree(Pattern(3, 0), r) == r - 1);
  }
}

TEST_CASE("built kernels reproduce the frozen tables at small depth") {
  TEngine engine;
  for (int r = 1; r <= 5; ++r) {
    CHECK(engine.build(Pattern(2, 1), r) == golden::t21(r));
    CHECK(engine.build(Pattern(2, 1), r).degree_budget() == golden::kF21[r]);
  }
  for (int r = 1; r <= 4; ++r) CHECK(engine.build(Pattern(1, 2), r) == golden::t12(r));
}

TEST_CASE("single summation steps") {
  TEngine engine;
  const SignedBiPoly one = SignedBiPoly::constant(Rational(1));
  CHECK(engine.sum_step(one, StepKind::plain) == golden::t21(2));  // n - t + 1
  CHECK(engine.sum_step(golden::t21(2), StepKind::plain) == golden::t21(3));
  CHECK(engine.sum_step(golden::t21(3), StepKind::alternating) == golden::t21(4));
}

TEST_CASE("oracle evaluation") {
  TEngine engine;
  CHECK(engine.oracle(Pattern(2, 1), 1, 9, 4) == Rational(1));
  CHECK(engine.oracle(Pattern(2, 1), 1, 3, 7) == Rational(1));  // base case, even for t > n
  CHECK(engine.oracle(Pattern(2, 1), 3, 4, 2) == Rational(6));
  CHECK(engine.oracle(Pattern(2, 1), 2, 5, 7) == Rational(0));  // empty sum
  CHECK(engine.oracle(Pattern(1, 2), 3, 3, 1) ==
        engine.build(Pattern(1, 2), 3).evaluate(3, 1));
  CHECK_THROWS_AS(engine.oracle(Pattern(2, 1), 200, 3, 1), std::invalid_argument);
}

TEST_CASE("kernel value equals oracle on a dense grid") {
  TEngine engine;
  for (const Pattern& pat : {Pattern(2, 1), Pattern(1, 2), Pattern(1, 1), Pattern(0, 1)}) {
    for (int r = 1; r <= 6; ++r) {
      const SignedBiPoly& P = engine.build(pat, r);
      for (long long n = 1; n <= 12; ++n)
        for (long long t = 1; t <= n; ++t)
          REQUIRE(P.evaluate(n, t) == engine.oracle(pat, r, n, t));
    }
  }
}

TEST_CASE("kernel at n = t for r = 2 is the single-term sum") {
  TEngine engine;
  // plain first step (s1 >= 1): the one-term sum is 1
  for (const Pattern& pat : {Pattern(2, 1), Pattern(1, 2), Pattern(3, 2), Pattern(1, 1)})
    for (long long n = 1; n <= 9; ++n)
      CHECK(engine.build(pat, 2).evaluate(n, n) == Rational(1));
  // alternating first step (s1 = 0): the one-term sum carries (-1)^{n-1}
  for (long long n = 1; n <= 9; ++n)
    CHECK(engine.build(Pattern(0, 1), 2).evaluate(n, n) == Rational((n - 1) % 2 == 0 ? 1 : -1));
}

TEST_CASE("classical collapse at s2 = 0") {
  TEngine engine;
  // T(r,1,0,n,t) summed against t^{-p} is the classical nested recursion;
  // here just confirm the kernel is sector-0 only with degree r-1
  for (int r = 1; r <= 6; ++r) {
    const SignedBiPoly& P = engine.build(Pattern(1, 0), r);
    for (const auto& [key, coef] : P.terms()) REQUIRE(key.k == 0);
    CHECK(P.total_degree() == r - 1);
  }
}

TEST_CASE("structure audit passes for the tabulated patterns") {
  TEngine engine;
  const auto r21 = engine.verify_kernel_structure(Pattern(2, 1), 9);
  CHECK(r21.passed());
  const auto r12 = engine.verify_kernel_structure(Pattern(1, 2), 8);
  CHECK(r12.passed());
  const auto r11 = engine.verify_kernel_structure(Pattern(1, 1), 10);
  CHECK(r11.passed());

  // active sectors: (2,1) lives in {0,1} for r=7 (after two alternating
  // levels), (1,2) in {2,3} for r=3
  CHECK(engine.build(Pattern(2, 1), 7).active_sectors() == std::set<int>{0, 1});
  CHECK(engine.build(Pattern(1, 2), 3).active_sectors() == std::set<int>{2, 3});
}
