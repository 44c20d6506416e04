// Command-line front door: exact hyperharmonic towers, kernel polynomials,
// Euler-sum reductions and the verification suites, with deterministic
// machine-readable output.
//
// Exit codes: 0 success, 1 computation error, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "altharm/analysis.hpp"
#include "altharm/eulersum.hpp"
#include "altharm/hyperharmonic.hpp"
#include "altharm/json_io.hpp"
#include "altharm/tengine.hpp"

namespace {

using namespace altharm;

std::vector<Pattern> parse_pattern_list(const std::string& text) {
  std::vector<Pattern> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(';', pos);
    if (end == std::string::npos) end = text.size();
    const std::string item = text.substr(pos, end - pos);
    const std::size_t comma = item.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("pattern must look like \"2,1\"");
    out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    pos = end + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty pattern list");
  return out;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- bernoulli
int run_bernoulli(int max, const std::string& format) {
  BernoulliTable table;
  if (format == "json") {
    Json values = Json::array();
    for (int n = 0; n <= max; ++n) values.push_back(table.at(static_cast<std::size_t>(n)).str());
    emit(Json{{"max", max}, {"values", values}});
  } else if (format == "csv") {
    std::cout << "n,value\n";
    for (int n = 0; n <= max; ++n)
      std::cout << n << "," << table.at(static_cast<std::size_t>(n)).str() << "\n";
  } else {
    for (int n = 0; n <= max; ++n)
      std::cout << "B_" << n << " = " << table.at(static_cast<std::size_t>(n)).str() << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- faulhaber
int run_faulhaber(int max, const std::string& format) {
  FaulhaberTable table;
  struct Row {
    const char* family;
    int m, j;
    std::string coef;
  };
  std::vector<Row> rows;
  for (int m = 0; m <= max; ++m) {
    const FaulhaberCoeffs& F = table.coeffs(m);
    for (int j = 1; j <= m + 1; ++j) {
      rows.push_back({"c", m, j, F.c[static_cast<std::size_t>(j)].str()});
      rows.push_back({"d", m, j, F.d[static_cast<std::size_t>(j)].str()});
    }
    rows.push_back({"e", m, 0, F.e0.str()});
    for (int j = 0; j <= m; ++j) {
      rows.push_back({"c1", m, j, F.c1[static_cast<std::size_t>(j)].str()});
      rows.push_back({"d1", m, j, F.d1[static_cast<std::size_t>(j)].str()});
    }
  }
  if (format == "csv") {
    std::cout << "family,m,j,coef\n";
    for (const Row& r : rows)
      std::cout << r.family << "," << r.m << "," << r.j << "," << r.coef << "\n";
  } else {
    Json entries = Json::array();
    for (const Row& r : rows)
      entries.push_back(Json{{"family", r.family}, {"m", r.m}, {"j", r.j}, {"coef", r.coef}});
    emit(Json{{"max_m", max}, {"entries", entries}});
  }
  return 0;
}

// -------------------------------------------------------------------- tpoly
int run_tpoly(int s1, int s2, int r, const std::vector<long long>& eval_at, bool verify,
              const std::string& format) {
  TEngine engine;
  const Pattern pat(s1, s2);
  const SignedBiPoly& P = engine.build(pat, r);

  Json sectors = Json::array();
  for (int k : P.active_sectors()) sectors.push_back(k);

  if (format == "json") {
    Json j = to_json(P);
    j["f"] = degree(pat, r);
    j["sectors"] = sectors;
    if (!eval_at.empty()) {
      const Rational v = P.evaluate(eval_at[0], eval_at[1]);
      j["eval"] = Json{{"n", eval_at[0]}, {"t", eval_at[1]}, {"value", v.str()}};
    }
    if (verify) j["structure"] = to_json(engine.verify_kernel_structure(pat, r));
    emit(j);
  } else if (format == "csv") {
    std::cout << "m,j,k,coef\n";
    for (const auto& [key, coef] : P.terms())
      std::cout << key.m << "," << key.j << "," << key.k << "," << coef.str() << "\n";
  } else {
    std::cout << "T(r=" << r << ",s1=" << s1 << ",s2=" << s2 << ") = " << render_text(P) << "\n";
    std::cout << "f = " << degree(pat, r) << "\n";
    if (!eval_at.empty()) {
      std::cout << "T(" << eval_at[0] << "," << eval_at[1]
                << ") = " << P.evaluate(eval_at[0], eval_at[1]).str() << "\n";
    }
    if (verify) {
      const auto report = engine.verify_kernel_structure(pat, r);
      std::cout << "structure: " << to_string(report.status) << " (" << report.checked_count
                << " checks)\n";
      if (report.counterexample)
        std::cout << "  at " << report.counterexample->location << ": expected "
                  << report.counterexample->expected << ", got " << report.counterexample->actual
                  << "\n";
    }
  }
  return 0;
}

// ----------------------------------------------------------------------- hh
int run_hh(int p, int r, int s1, int s2, long long n, bool table, const std::string& format) {
  HyperEngine engine;
  const HyperSpec spec{p, r, Pattern(s1, s2)};
  if (table) {
    if (format == "json") {
      Json values = Json::array();
      for (long long i = 1; i <= n; ++i) values.push_back(engine.hyper(spec, i).str());
      emit(Json{{"p", p}, {"r", r}, {"s1", s1}, {"s2", s2}, {"n", n}, {"values", values}});
    } else {
      std::cout << "n,value\n";
      for (long long i = 1; i <= n; ++i) std::cout << i << "," << engine.hyper(spec, i).str() << "\n";
    }
    return 0;
  }
  const Rational v = engine.hyper(spec, n);
  if (format == "json") {
    emit(Json{{"p", p}, {"r", r}, {"s1", s1}, {"s2", s2}, {"n", n}, {"value", v.str()}});
  } else {
    std::cout << v.str() << "\n";
  }
  return 0;
}

// ----------------------------------------------------------------- eulersum
int run_eulersum(int p, int r, int s1, int s2, double q, const std::string& method,
                 long long terms_cap, const std::string& format) {
  TEngine tengine;
  const HyperSpec spec{p, r, Pattern(s1, s2)};
  EvalOptions opts = eval_options_from_env();
  if (terms_cap > 0) opts.max_terms = terms_cap;

  Json out{{"p", p}, {"r", r}, {"s1", s1}, {"s2", s2}, {"q", json_float(q)},
           {"terms_budget", opts.max_terms}};
  NumericValue direct{}, reduced{};
  bool have_direct = false, have_reduced = false;

  if (method == "direct" || method == "both") {
    direct = eval_direct(spec, q, opts);
    have_direct = true;
    out["direct"] = json_float(direct.value);
    out["direct_err_est"] = json_float(direct.err_est);
  }
  if (method == "reduced" || method == "both") {
    const Reduction red = reduce(tengine, spec, q);
    reduced = eval_reduction(red, 1e-9, opts);
    have_reduced = true;
    out["reduction"] = to_json(red);
    out["reduced"] = json_float(reduced.value);
    out["reduced_err_est"] = json_float(reduced.err_est);
  }
  if (have_direct && have_reduced)
    out["abs_diff"] = json_float(std::abs(direct.value - reduced.value));

  if (format == "text") {
    if (have_direct)
      std::printf("direct  = %.12g (err est %.3g)\n", direct.value, direct.err_est);
    if (have_reduced)
      std::printf("reduced = %.12g (err est %.3g)\n", reduced.value, reduced.err_est);
    if (have_direct && have_reduced)
      std::printf("abs diff = %.3g\n", std::abs(direct.value - reduced.value));
    if (have_reduced && q < spec.r + 1)
      std::printf("warning: q < r+1; every produced term converges, proceeding\n");
  } else {
    emit(out);
  }
  return 0;
}

// ------------------------------------------------------------------ product
int run_product(const std::vector<std::string>& factor_args, double q, long long terms_cap,
                const std::string& format) {
  std::vector<HyperSpec> specs;
  for (const std::string& arg : factor_args) {
    int p, r, s1, s2;
    if (std::sscanf(arg.c_str(), "%d,%d,%d,%d", &p, &r, &s1, &s2) != 4)
      throw std::invalid_argument("--factor expects p,r,s1,s2");
    specs.push_back({p, r, Pattern(s1, s2)});
  }

  TEngine tengine;
  EvalOptions opts = eval_options_from_env();
  if (terms_cap > 0) opts.max_terms = terms_cap;

  const auto terms = expand_product(tengine, specs, q);
  const NumericValue expanded = eval_nonlinear(terms, q, opts);
  const NumericValue direct = eval_product_direct(specs, q, opts);

  if (format == "text") {
    std::printf("expanded terms: %zu\n", terms.size());
    std::printf("direct   = %.12g (err est %.3g)\n", direct.value, direct.err_est);
    std::printf("expanded = %.12g (err est %.3g)\n", expanded.value, expanded.err_est);
    std::printf("abs diff = %.3g\n", std::abs(direct.value - expanded.value));
  } else {
    Json jterms = Json::array();
    for (const NonlinearTerm& t : terms) jterms.push_back(to_json(t));
    Json factors = Json::array();
    for (const HyperSpec& s : specs)
      factors.push_back(Json{{"p", s.p}, {"r", s.r}, {"s1", s.pattern.s1}, {"s2", s.pattern.s2}});
    emit(Json{{"factors", factors},
              {"q", json_float(q)},
              {"terms", jterms},
              {"direct", json_float(direct.value)},
              {"direct_err_est", json_float(direct.err_est)},
              {"expanded", json_float(expanded.value)},
              {"expanded_err_est", json_float(expanded.err_est)},
              {"abs_diff", json_float(std::abs(direct.value - expanded.value))}});
  }
  return 0;
}

// -------------------------------------------------------------------- check
int run_check(const std::string& suite, int r_max, const std::string& patterns_arg, int jobs,
              const std::string& format) {
  AnalysisConfig config;
  if (!patterns_arg.empty()) config.patterns = parse_pattern_list(patterns_arg);
  if (r_max > 0) config.r_max = r_max;
  config.jobs = jobs;
  config.eval = eval_options_from_env();

  std::vector<CheckReport> reports;
  if (suite == "all") {
    reports = run_all(config);
  } else if (suite == "remarks") {
    FaulhaberTable table;
    reports.push_back(check_coefficient_identities(table, config.remark_m_max));
  } else if (suite == "lemmas") {
    TEngine tengine;
    for (const Pattern& pat : config.patterns)
      reports.push_back(tengine.verify_kernel_structure(pat, config.r_max));
  } else if (suite == "bounds") {
    HyperEngine hyper;
    reports.push_back(check_bounds(hyper, config.patterns, config.bound_ps, config.bound_r_max,
                                   config.bound_n_max));
  } else if (suite == "conjectures") {
    TEngine tengine;
    reports.push_back(check_transpose_symmetry(tengine, config.patterns, config.r_max));
    reports.push_back(check_antidiagonal_sums(tengine, config.patterns, config.r_max));
    reports.push_back(check_sign_pattern(tengine, config.patterns, config.r_max));
  } else if (suite == "reduction") {
    reports.push_back(
        check_reduction_soundness(config.reduction_cases, config.reduction_tolerance, config.eval));
  } else {
    throw std::invalid_argument("unknown suite: " + suite);
  }

  if (format == "json") {
    Json arr = Json::array();
    for (const CheckReport& r : reports) arr.push_back(to_json(r));
    emit(arr);
  } else {
    for (const CheckReport& r : reports) {
      std::printf("[%s]%s %s (%lld checks) %s\n", to_string(r.status),
                  r.conjectural ? " (conjectural)" : "", r.suite.c_str(),
                  static_cast<long long>(r.checked_count), r.params.c_str());
      if (r.counterexample)
        std::printf("  at %s: expected %s, got %s\n", r.counterexample->location.c_str(),
                    r.counterexample->expected.c_str(), r.counterexample->actual.c_str());
    }
  }

  // conjecture findings do not affect the exit status
  for (const CheckReport& r : reports)
    if (!r.passed() && !r.conjectural) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact hyperharmonic towers, sign-sector kernels and Euler-sum reductions"};
  app.require_subcommand(1);

  // bernoulli
  auto* cmd_bern = app.add_subcommand("bernoulli", "table of plus-convention Bernoulli numbers");
  int bern_max = 10;
  std::string bern_format = "text";
  cmd_bern->add_option("--max", bern_max, "largest index")->check(CLI::NonNegativeNumber);
  cmd_bern->add_option("--format", bern_format)->check(CLI::IsMember({"json", "csv", "text"}));

  // faulhaber
  auto* cmd_faul = app.add_subcommand("faulhaber", "truncated power-sum coefficient tables");
  int faul_max = 6;
  std::string faul_format = "json";
  cmd_faul->add_option("--max", faul_max, "largest degree m")->check(CLI::NonNegativeNumber);
  cmd_faul->add_option("--format", faul_format)->check(CLI::IsMember({"json", "csv"}));

  // tpoly
  auto* cmd_tpoly = app.add_subcommand("tpoly", "sign-sector kernel polynomial T(r,s1,s2)");
  int tp_s1 = 2, tp_s2 = 1, tp_r = 1;
  std::vector<long long> tp_eval;
  bool tp_verify = false;
  std::string tp_format = "json";
  cmd_tpoly->add_option("--s1", tp_s1)->required()->check(CLI::NonNegativeNumber);
  cmd_tpoly->add_option("--s2", tp_s2)->required()->check(CLI::NonNegativeNumber);
  cmd_tpoly->add_option("--r", tp_r)->required()->check(CLI::PositiveNumber);
  cmd_tpoly->add_option("--eval", tp_eval, "evaluate at n t")->expected(2);
  cmd_tpoly->add_flag("--verify-lemmas", tp_verify, "audit kernel structure up to r");
  cmd_tpoly->add_option("--format", tp_format)->check(CLI::IsMember({"json", "csv", "text"}));

  // hh
  auto* cmd_hh = app.add_subcommand("hh", "exact hyperharmonic tower values");
  int hh_p = 1, hh_r = 1, hh_s1 = 1, hh_s2 = 0;
  long long hh_n = 1;
  bool hh_table = false;
  std::string hh_format = "text";
  cmd_hh->add_option("--p", hh_p)->required()->check(CLI::PositiveNumber);
  cmd_hh->add_option("--r", hh_r)->required()->check(CLI::PositiveNumber);
  cmd_hh->add_option("--s1", hh_s1)->required()->check(CLI::NonNegativeNumber);
  cmd_hh->add_option("--s2", hh_s2)->required()->check(CLI::NonNegativeNumber);
  cmd_hh->add_option("--n", hh_n)->required()->check(CLI::PositiveNumber);
  cmd_hh->add_flag("--table", hh_table, "emit n=1..N as CSV");
  cmd_hh->add_option("--format", hh_format)->check(CLI::IsMember({"json", "csv", "text"}));

  // eulersum
  auto* cmd_es = app.add_subcommand("eulersum", "sum of the tower against n^{-q}");
  int es_p = 1, es_r = 1, es_s1 = 1, es_s2 = 0;
  double es_q = 2.0;
  long long es_terms = 0;
  std::string es_method = "both", es_format = "json";
  cmd_es->add_option("--p", es_p)->required()->check(CLI::PositiveNumber);
  cmd_es->add_option("--r", es_r)->required()->check(CLI::PositiveNumber);
  cmd_es->add_option("--s1", es_s1)->required()->check(CLI::NonNegativeNumber);
  cmd_es->add_option("--s2", es_s2)->required()->check(CLI::NonNegativeNumber);
  cmd_es->add_option("--q", es_q)->required();
  cmd_es->add_option("--method", es_method)->check(CLI::IsMember({"direct", "reduced", "both"}));
  cmd_es->add_option("--terms", es_terms, "partial-sum budget")->check(CLI::PositiveNumber);
  cmd_es->add_option("--format", es_format)->check(CLI::IsMember({"json", "text"}));

  // product
  auto* cmd_prod = app.add_subcommand("product", "nonlinear products of towers");
  std::vector<std::string> prod_factors;
  double prod_q = 8.0;
  long long prod_terms = 0;
  std::string prod_format = "json";
  cmd_prod->add_option("--factor", prod_factors, "factor as p,r,s1,s2 (repeat)")->required();
  cmd_prod->add_option("--q", prod_q)->required();
  cmd_prod->add_option("--terms", prod_terms)->check(CLI::PositiveNumber);
  cmd_prod->add_option("--format", prod_format)->check(CLI::IsMember({"json", "text"}));

  // check
  auto* cmd_check = app.add_subcommand("check", "verification suites");
  std::string chk_suite = "all", chk_patterns, chk_format = "text";
  int chk_rmax = 0, chk_jobs = 1;
  cmd_check->add_option("--suite", chk_suite)
      ->check(CLI::IsMember({"conjectures", "remarks", "lemmas", "bounds", "reduction", "all"}));
  cmd_check->add_option("--rmax", chk_rmax)->check(CLI::PositiveNumber);
  cmd_check->add_option("--patterns", chk_patterns, "e.g. \"2,1;1,2\"");
  cmd_check->add_option("--jobs", chk_jobs)->check(CLI::PositiveNumber);
  cmd_check->add_option("--format", chk_format)->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_bern->parsed()) return run_bernoulli(bern_max, bern_format);
    if (cmd_faul->parsed()) return run_faulhaber(faul_max, faul_format);
    if (cmd_tpoly->parsed()) return run_tpoly(tp_s1, tp_s2, tp_r, tp_eval, tp_verify, tp_format);
    if (cmd_hh->parsed()) return run_hh(hh_p, hh_r, hh_s1, hh_s2, hh_n, hh_table, hh_format);
    if (cmd_es->parsed())
      return run_eulersum(es_p, es_r, es_s1, es_s2, es_q, es_method, es_terms, es_format);
    if (cmd_prod->parsed()) return run_product(prod_factors, prod_q, prod_terms, prod_format);
    if (cmd_check->parsed())
      return run_check(chk_suite, chk_rmax, chk_patterns, chk_jobs, chk_format);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
