#pragma once

// JSON wire forms (nlohmann, keys sorted => byte-deterministic output) and a
// human-readable polynomial renderer. Floats are value-rounded to 12
// significant digits before serialization so dumps are reproducible.

#include <json.hpp>

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "altharm/analysis.hpp"
#include "altharm/bipoly.hpp"
#include "altharm/check_report.hpp"
#include "altharm/eulersum.hpp"
#include "altharm/numerics.hpp"

namespace altharm {

using Json = nlohmann::json;

inline Json json_float(double x) { return Json(round_significant(x, 12)); }

inline Json to_json(const SignedBiPoly& poly) {
  Json terms = Json::array();
  for (const auto& [key, coef] : poly.terms()) {
    terms.push_back(Json{{"m", key.m}, {"j", key.j}, {"k", key.k}, {"coef", coef.str()}});
  }
  return Json{{"deg", poly.degree_budget()}, {"terms", terms}};
}

inline Json to_json(const CheckReport& report) {
  Json j{{"suite", report.suite},
         {"params", report.params},
         {"status", to_string(report.status)},
         {"checked_count", report.checked_count},
         {"conjectural", report.conjectural}};
  if (report.counterexample) {
    j["counterexample"] = Json{{"location", report.counterexample->location},
                               {"expected", report.counterexample->expected},
                               {"actual", report.counterexample->actual}};
  }
  return j;
}

inline Json to_json(const EulerSumTerm& term) {
  return Json{{"s1", std::string(1, sign_char(term.sigma1))},
              {"s2", std::string(1, sign_char(term.sigma2))},
              {"p", term.p},
              {"q", json_float(term.q)},
              {"coef", term.coef.str()}};
}

inline Json to_json(const Reduction& red) {
  Json terms = Json::array();
  for (const EulerSumTerm& t : red.terms) terms.push_back(to_json(t));
  Json j{{"terms", terms}};
  if (red.below_hypothesis) j["below_hypothesis"] = true;
  return j;
}

inline Json to_json(const NonlinearTerm& term) {
  Json factors = Json::array();
  for (const auto& [alt, order] : term.factors)
    factors.push_back(Json{{"alternating", alt}, {"order", order}});
  return Json{{"coef", term.coef.str()},
              {"n_power", term.n_power},
              {"outer", std::string(1, sign_char(term.outer))},
              {"factors", factors}};
}

namespace textdetail {

// "3/2*t^2", "t", "1" -- magnitude only, no sign.
inline std::string t_monomial(const Rational& abs_coef, int j) {
  if (j == 0) return abs_coef.str();
  std::string s;
  if (!(abs_coef == Rational(1))) s = abs_coef.str() + "*";
  s += "t";
  if (j > 1) s += "^" + std::to_string(j);
  return s;
}

struct Chunk {
  int sign = 1;       // sign shown at the top level
  std::string body;   // magnitude, signs inside parens already resolved
};

}  // namespace textdetail

// Plain-text rendering grouped by sector, then descending n-power, each
// n-power carrying its t-polynomial coefficient, e.g.
//   1/2*n^2 + (-t + 3/2)*n + 1/2*t^2 - 3/2*t + 1
inline std::string render_text(const SignedBiPoly& poly) {
  if (poly.empty()) return "0";
  static const char* kSectorFactor[4] = {"", "(-1)^(n-1+t-1)", "(-1)^(n-1)", "(-1)^(t-1)"};

  std::vector<textdetail::Chunk> chunks;
  for (int k = 0; k < kSectorCount; ++k) {
    std::map<int, std::map<int, Rational, std::greater<int>>, std::greater<int>> groups;
    for (const auto& [key, coef] : poly.terms())
      if (key.k == k) groups[key.m][key.j] = coef;

    for (const auto& [m, tpoly] : groups) {
      const bool bare = (k == 0 && m == 0);
      if (bare) {
        // top-level t-monomials, no grouping needed
        for (const auto& [j, coef] : tpoly)
          chunks.push_back({coef.sign(), textdetail::t_monomial(coef.abs(), j)});
        continue;
      }
      textdetail::Chunk chunk;
      std::string body;
      if (tpoly.size() == 1) {
        const auto& [j, coef] = *tpoly.begin();
        chunk.sign = coef.sign();
        const Rational a = coef.abs();
        if (j == 0 && a == Rational(1)) {
          body = "";  // coefficient 1 against a sector factor or n-power
        } else {
          body = textdetail::t_monomial(a, j);
        }
      } else {
        chunk.sign = 1;
        bool first = true;
        for (const auto& [j, coef] : tpoly) {
          if (first) {
            body += (coef.sign() < 0 ? "-" : "") + textdetail::t_monomial(coef.abs(), j);
            first = false;
          } else {
            body += (coef.sign() < 0 ? " - " : " + ") + textdetail::t_monomial(coef.abs(), j);
          }
        }
        body = "(" + body + ")";
      }
      if (k != 0) {
        if (!body.empty()) body += "*";
        body += kSectorFactor[k];
      }
      if (m > 0) {
        if (!body.empty()) body += "*";
        body += "n";
        if (m > 1) body += "^" + std::to_string(m);
      }
      chunk.body = body;
      chunks.push_back(std::move(chunk));
    }
  }

  std::string out;
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i == 0) {
      out += (chunks[i].sign < 0 ? "-" : "") + chunks[i].body;
    } else {
      out += (chunks[i].sign < 0 ? " - " : " + ") + chunks[i].body;
    }
  }
  return out;
}

}  // namespace altharm
