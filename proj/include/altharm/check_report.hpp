#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace altharm {

enum class CheckStatus { pass, fail, indeterminate };

struct Counterexample {
  std::string location;  // e.g. "pattern=(2,1) r=5 m=1 j=0 k=3"
  std::string expected;
  std::string actual;
};

// Structured pass/fail record for an identity or conjecture scan.
// Invariant: status == fail iff counterexample is present (enforced by the
// factory functions below).
struct CheckReport {
  std::string suite;
  std::string params;
  CheckStatus status = CheckStatus::pass;
  std::optional<Counterexample> counterexample;
  std::int64_t checked_count = 0;
  bool conjectural = false;  // failures are findings, not build errors

  bool passed() const { return status == CheckStatus::pass; }

  static CheckReport pass(std::string suite, std::string params, std::int64_t count,
                          bool conjectural = false) {
    CheckReport r;
    r.suite = std::move(suite);
    r.params = std::move(params);
    r.status = CheckStatus::pass;
    r.checked_count = count;
    r.conjectural = conjectural;
    return r;
  }

  static CheckReport fail(std::string suite, std::string params, std::int64_t count,
                          Counterexample ce, bool conjectural = false) {
    CheckReport r;
    r.suite = std::move(suite);
    r.params = std::move(params);
    r.status = CheckStatus::fail;
    r.counterexample = std::move(ce);
    r.checked_count = count;
    r.conjectural = conjectural;
    return r;
  }
};

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    default: return "indeterminate";
  }
}

}  // namespace altharm
