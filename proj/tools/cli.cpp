#include "cli.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "mczeta/arith.hpp"
#include "mczeta/mchf.hpp"
#include "mczeta/mzv.hpp"
#include "mczeta/numkernel.hpp"

namespace mczeta::cli {

namespace {

const char* kLiteralHelp =
    "Complex literals: [-]a[.b][e+-n][+|-c[.d][e+-n]i] with no whitespace,\n"
    "e.g. 2, -0.5, 1e-3, 0.3+0.4i, -1.1-2e-1i. Lists are comma-separated.";

std::string fmt_double(double x) {
  char buf[40];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

nlohmann::json num(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

nlohmann::json cjson(Complex z) { return {{"re", num(z.real())}, {"im", num(z.imag())}}; }

nlohmann::json flags_json(std::uint32_t f) {
  nlohmann::json out = nlohmann::json::array();
  if (f & kFlagPrecisionLoss) out.push_back("precision_loss");
  if (f & kFlagDivergence) out.push_back("divergence");
  if (f & kFlagCapHit) out.push_back("cap_hit");
  if (f & kFlagFallback) out.push_back("fallback");
  return out;
}

struct BudgetFlags {
  EvalBudget b;
  void attach(CLI::App* app) {
    app->add_option("--max-terms", b.max_terms, "Per-series term cap")->check(CLI::PositiveNumber);
    app->add_option("--series-tol", b.tol, "Target relative error of inner series")->check(CLI::PositiveNumber);
    app->add_option("--quad-nodes", b.quad_nodes, "Quadrature refinement levels")->check(CLI::Range(1, 20));
    app->add_option("--em-terms", b.em_terms, "Euler-Maclaurin correction terms")->check(CLI::Range(1, 40));
    app->add_option("--asym-shift", b.asym_shift, "Start point of multiple-zeta tail expansions")
        ->check(CLI::Range(1, 200));
    app->add_option("--threads", b.threads, "k-sum workers (0 = OpenMP default, 1 = serial)")
        ->check(CLI::NonNegativeNumber);
  }
};

long integer_arg(Complex z, const char* what) {
  if (z.imag() != 0.0 || z.real() != std::floor(z.real()) || z.real() < 1.0 || z.real() > 1e15)
    throw ParseError(std::string(what) + ": positive integer expected, got " + format_complex(z));
  return static_cast<long>(z.real());
}

void need_count(const std::vector<Complex>& a, bool ok, const char* layout) {
  if (!ok) throw ParseError("wrong number of arguments (" + std::to_string(a.size()) + "); expected " + layout);
}

Evaluation eval_function(const std::string& fn, const std::vector<Complex>& a, int sign, const std::string& route,
                         double delta, const EvalBudget& budget) {
  Evaluation e;
  if (fn == "zeta") {
    need_count(a, a.size() == 1, "s");
    e.value = zeta_riemann(a[0]);
  } else if (fn == "zeta_ez") {
    need_count(a, !a.empty(), "s_1,...,s_r");
    const ArgPoint p(a);
    if (p.in_convergence) e = zeta_ez_direct(p, budget);
    else if (p.r() == 2) e = zeta_ez2_continued(a[0], a[1], budget.em_terms);
    else e = zeta_ez_continued(a, budget);
  } else if (fn == "psi") {
    need_count(a, a.size() == 3, "b,c,x");
    e = psi_u(a[0], a[1], a[2], budget);
  } else if (fn == "psi_a") {
    need_count(a, a.size() >= 3 && a.size() % 2 == 1, "h_1,...,h_{a+1},x_1,...,x_a");
    const std::size_t n = a.size() / 2;
    MchfArgs args{{a.begin(), a.begin() + n + 1}, {a.begin() + n + 1, a.end()}, delta};
    try {
      e = mchf_psi_reduced(args, budget);
    } catch (const MathError& ex) {
      if (ex.kind() == ErrorKind::invalid_argument) throw;
      e = mchf_psi_quadrature(args, budget);
      e.flags |= kFlagFallback;
    }
  } else if (fn == "fd") {
    need_count(a, a.size() >= 4 && a.size() % 2 == 0, "a_1,...,a_N,b,c,z_1,...,z_N");
    const std::size_t n = (a.size() - 2) / 2;
    e = lauricella_fd({a.begin(), a.begin() + n}, a[n], a[n + 1], {a.begin() + n + 2, a.end()}, budget);
  } else if (fn == "sigma") {
    need_count(a, a.size() == 2, "a,k");
    e.value = divisor_sigma(a[0], integer_arg(a[1], "sigma"));
  } else if (fn == "sigma_ez") {
    need_count(a, a.size() >= 2 && a.size() % 2 == 0, "a_1,...,a_r,k_1,...,k_r");
    const std::size_t n = a.size() / 2;
    IndexTuple k;
    for (std::size_t j = n; j < a.size(); ++j) k.push_back(integer_arg(a[j], "sigma_ez"));
    e.value = divisor_sigma_ez({a.begin(), a.begin() + n}, k);
  } else if (fn == "f_pm") {
    need_count(a, a.size() == 2 || a.size() == 3, "s_1,...,s_r with r in {2,3}");
    e = f_pm(sign, ArgPoint(a), budget);
  } else if (fn == "g_r") {
    need_count(a, a.size() == 2 || a.size() == 3, "s_1,...,s_r with r in {2,3}");
    if (route == "theorem3") e = g_r_via_theorem3(ArgPoint(a), budget);
    else if (route == "definition") e = g_r_via_definition(ArgPoint(a), budget);
    else throw ParseError("unknown route '" + route + "' (theorem3 or definition)");
  } else {
    throw ParseError("unknown function '" + fn + "'");
  }
  return e;
}

struct VerifyJob {
  std::vector<Complex> args;
};

FEReport run_one(const std::string& theorem, int r, int k, const VerifyJob& job, double tol,
                 const EvalBudget& budget) {
  const auto skip = [&](const std::string& why) {
    FEReport rep;
    rep.point = ArgPoint(job.args);
    rep.theorem = theorem;
    rep.tol = tol;
    rep.budget = budget;
    rep.status = "SKIP";
    rep.reason = why;
    return rep;
  };
  if (theorem == "hyperplane") {
    if (job.args.size() != 1) return skip("hyperplane: one value s_1 per point expected");
    return verify_hyperplane(k, job.args[0], tol, budget);
  }
  if (static_cast<int>(job.args.size()) != r)
    return skip("point has " + std::to_string(job.args.size()) + " entries but --r is " + std::to_string(r));
  if (theorem == "main") return verify_main_theorem(ArgPoint(job.args), tol, budget);
  if (theorem == "theorem3") return verify_theorem3(ArgPoint(job.args), tol, budget);
  if (r != 2) return skip("matsumoto: r = 2 only");
  return verify_matsumoto_r2(job.args[0], job.args[1], tol, budget);
}

std::vector<FEReport> run_batch(const std::string& theorem, int r, int k, const std::vector<VerifyJob>& jobs,
                                double tol, const EvalBudget& budget) {
  std::vector<FEReport> out(jobs.size());
  const long n = static_cast<long>(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[i] = run_one(theorem, r, k, jobs[i], tol, budget);
  return out;
}

std::vector<VerifyJob> load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open points file '" + path + "'");
  std::vector<VerifyJob> jobs;
  for (auto& pl : read_points(in)) jobs.push_back({std::move(pl.args)});
  return jobs;
}

void print_text(std::ostream& out, const std::vector<FEReport>& reps) {
  for (const auto& rep : reps) {
    out << rep.status << "  " << rep.theorem << "  (" << format_point(rep.point.s) << ")";
    if (rep.status == "SKIP") {
      out << "  reason: " << rep.reason << "\n";
      continue;
    }
    out << "  rel_residual=" << fmt_double(rep.rel_residual) << "  abs_residual=" << fmt_double(rep.abs_residual)
        << "  tol=" << fmt_double(rep.tol) << "\n";
    out << "    lhs = " << format_complex(rep.lhs) << "\n    rhs = " << format_complex(rep.rhs) << "\n";
    for (const auto& [name, v] : rep.diagnostics) out << "    " << name << " = " << format_complex(v) << "\n";
  }
}

}  // namespace

Complex parse_complex(const std::string& text) {
  static const std::regex re(
      R"(^(-?[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)(?:([+-][0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)i)?$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ParseError("malformed complex literal '" + text + "'");
  const double re_part = std::strtod(m[1].str().c_str(), nullptr);
  const double im_part = m[2].matched ? std::strtod(m[2].str().c_str(), nullptr) : 0.0;
  if (!std::isfinite(re_part) || !std::isfinite(im_part))
    throw ParseError("complex literal out of range '" + text + "'");
  return {re_part, im_part};
}

std::vector<Complex> parse_list(const std::string& text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<PointLine> read_points(std::istream& in) {
  std::vector<PointLine> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    try {
      out.push_back({no, parse_list(line.substr(first, last - first + 1))});
    } catch (const ParseError& e) {
      throw ParseError("points file line " + std::to_string(no) + ": " + e.what());
    }
  }
  return out;
}

std::string format_complex(Complex z) {
  if (z.imag() == 0.0) return fmt_double(z.real());
  std::string im = fmt_double(z.imag());
  if (im[0] != '-') im.insert(0, "+");
  return fmt_double(z.real()) + im + "i";
}

std::string format_point(const std::vector<Complex>& s) {
  std::string out;
  for (std::size_t j = 0; j < s.size(); ++j) out += (j ? "," : "") + format_complex(s[j]);
  return out;
}

nlohmann::json report_json(const FEReport& rep) {
  nlohmann::json j;
  j["theorem"] = rep.theorem;
  j["status"] = rep.status;
  j["reason"] = rep.reason;
  j["point"] = nlohmann::json::array();
  for (Complex z : rep.point.s) j["point"].push_back(cjson(z));
  j["lhs"] = cjson(rep.lhs);
  j["rhs"] = cjson(rep.rhs);
  j["abs_residual"] = num(rep.abs_residual);
  j["rel_residual"] = num(rep.rel_residual);
  j["tol"] = num(rep.tol);
  j["terms"] = nlohmann::json::array();
  for (const auto& [name, v] : rep.terms) j["terms"].push_back({{"name", name}, {"value", cjson(v)}});
  j["tail_estimates"] = nlohmann::json::object();
  for (const auto& [name, v] : rep.tail_estimates) j["tail_estimates"][name] = num(v);
  j["diagnostics"] = nlohmann::json::array();
  for (const auto& [name, v] : rep.diagnostics) j["diagnostics"].push_back({{"name", name}, {"value", cjson(v)}});
  j["terms_used"] = rep.terms_used;
  j["wall_ms"] = num(rep.wall_ms);
  const EvalBudget& b = rep.budget;
  j["budget"] = {{"max_terms", b.max_terms}, {"tol", b.tol},         {"quad_nodes", b.quad_nodes},
                 {"em_terms", b.em_terms},   {"asym_shift", b.asym_shift}, {"threads", b.threads}};
  return j;
}

nlohmann::json report_document(const std::vector<FEReport>& reps) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& rep : reps) arr.push_back(report_json(rep));
  return {{"schema", kSchema}, {"reports", std::move(arr)}};
}

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_header() {
  return "point,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,terms,tail_est,wall_ms,status,reason";
}

std::string csv_row(const FEReport& rep) {
  double tail = 0.0;
  for (const auto& [name, v] : rep.tail_estimates) tail += v;
  std::ostringstream row;
  row << csv_quote(format_point(rep.point.s)) << ',' << fmt_double(rep.lhs.real()) << ','
      << fmt_double(rep.lhs.imag()) << ',' << fmt_double(rep.rhs.real()) << ',' << fmt_double(rep.rhs.imag())
      << ',' << fmt_double(rep.abs_residual) << ',' << fmt_double(rep.rel_residual) << ',' << rep.terms_used
      << ',' << fmt_double(tail) << ',' << fmt_double(rep.wall_ms) << ',' << rep.status << ','
      << csv_quote(rep.reason);
  return row.str();
}

int batch_status(const std::vector<FEReport>& reps, bool strict) {
  bool skipped = false;
  for (const auto& rep : reps) {
    if (rep.status == "FAIL") return kExitResidual;
    if (rep.status == "SKIP") skipped = true;
  }
  return skipped && strict ? kExitDomain : kExitPass;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  if (const char* prec = std::getenv("MCZETA_PRECISION")) {
    const std::string p = prec;
    if (!p.empty() && p != "binary64" && p != "double") {
      err << "error: MCZETA_PRECISION='" << p << "' is not available; this build provides binary64 only\n";
      return kExitUsage;
    }
  }

  CLI::App app{"mczeta: multiple zeta functions, confluent hypergeometric functions and functional-equation checks"};
  app.footer(kLiteralHelp);
  app.require_subcommand(1);

  std::string format = "text";
  double tol = 1e-6;
  BudgetFlags eval_budget, verify_budget, sweep_budget;

  auto* eval = app.add_subcommand("eval", "Evaluate one function value");
  std::string fn, args_text, route = "theorem3";
  int sign = 1;
  double delta = 1.0;
  eval->add_option("--fn", fn, "zeta_ez, zeta, psi, psi_a, fd, sigma, sigma_ez, f_pm or g_r")->required();
  eval->add_option("--args", args_text, "Comma-separated complex arguments")->required();
  eval->add_option("--sign", sign, "Sign of f_pm")->check(CLI::IsMember({1, -1}));
  eval->add_option("--route", route, "g_r route: theorem3 or definition");
  eval->add_option("--delta", delta, "delta of psi_a")->check(CLI::PositiveNumber);
  eval->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  eval_budget.attach(eval);

  auto* verify = app.add_subcommand("verify", "Check a functional equation at one or more points");
  std::string theorem = "main", points_file;
  int r = 2, k = 1;
  std::vector<std::string> point_texts, s1_texts;
  bool strict = false;
  verify->add_option("--theorem", theorem, "main, theorem3, matsumoto or hyperplane")
      ->check(CLI::IsMember({"main", "theorem3", "matsumoto", "hyperplane"}));
  verify->add_option("--r", r, "Depth of the point")->check(CLI::Range(1, 3));
  verify->add_option("--k", k, "Hyperplane index")->check(CLI::PositiveNumber);
  verify->add_option("--point", point_texts, "Point as comma-separated literals (repeatable)");
  verify->add_option("--s1", s1_texts, "Hyperplane s_1 (repeatable)");
  verify->add_option("--points-file", points_file, "File with one point per line");
  verify->add_option("--tol", tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  verify->add_flag("--strict", strict, "Exit 3 when any point is skipped");
  verify_budget.attach(verify);

  auto* sweep = app.add_subcommand("sweep", "Verify every point of a file and emit CSV");
  std::string sweep_theorem = "main", sweep_file;
  int sweep_r = 2, sweep_k = 1;
  bool sweep_strict = false;
  sweep->add_option("--theorem", sweep_theorem, "main, theorem3, matsumoto or hyperplane")
      ->check(CLI::IsMember({"main", "theorem3", "matsumoto", "hyperplane"}));
  sweep->add_option("--r", sweep_r, "Depth of the points")->check(CLI::Range(1, 3));
  sweep->add_option("--k", sweep_k, "Hyperplane index")->check(CLI::PositiveNumber);
  sweep->add_option("--points-file", sweep_file, "File with one point per line")->required();
  sweep->add_option("--tol", tol, "Relative residual tolerance")->check(CLI::PositiveNumber);
  sweep->add_flag("--strict", sweep_strict, "Exit 3 when any point is skipped");
  sweep_budget.attach(sweep);

  try {
    std::vector<std::string> raw(argv + 1, argv + argc);
    std::reverse(raw.begin(), raw.end());
    app.parse(raw);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*eval) {
      const Evaluation e = eval_function(fn, parse_list(args_text), sign, route, delta, eval_budget.b);
      if (format == "json") {
        nlohmann::json j = {{"schema", kSchema},
                            {"function", fn},
                            {"args", nlohmann::json::array()},
                            {"value", cjson(e.value)},
                            {"abs_err_est", num(e.abs_err_est)},
                            {"terms_used", e.terms_used},
                            {"truncated", e.truncated},
                            {"flags", flags_json(e.flags)}};
        for (Complex z : parse_list(args_text)) j["args"].push_back(cjson(z));
        out << j.dump(2) << "\n";
      } else {
        out << "value: " << format_complex(e.value) << "\nabs_err_est: " << fmt_double(e.abs_err_est)
            << "\nterms_used: " << e.terms_used << "\n";
        for (const auto& f : flags_json(e.flags)) out << "flag: " << f.get<std::string>() << "\n";
      }
      return kExitPass;
    }

    if (*verify) {
      std::vector<VerifyJob> jobs;
      for (const auto& t : point_texts) jobs.push_back({parse_list(t)});
      for (const auto& t : s1_texts) jobs.push_back({{parse_complex(t)}});
      if (!points_file.empty())
        for (auto& j : load_file(points_file)) jobs.push_back(std::move(j));
      if (jobs.empty()) throw ParseError("verify: give --point, --s1 or --points-file");
      const auto reps = run_batch(theorem, r, k, jobs, tol, verify_budget.b);
      if (format == "json") {
        out << report_document(reps).dump(2) << "\n";
      } else if (format == "csv") {
        out << csv_header() << "\n";
        for (const auto& rep : reps) out << csv_row(rep) << "\n";
      } else {
        print_text(out, reps);
      }
      return batch_status(reps, strict);
    }

    const auto jobs = load_file(sweep_file);
    const auto reps = run_batch(sweep_theorem, sweep_r, sweep_k, jobs, tol, sweep_budget.b);
    out << csv_header() << "\n";
    for (const auto& rep : reps) out << csv_row(rep) << "\n";
    return batch_status(reps, sweep_strict);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathError& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::invalid_argument ? kExitUsage : kExitDomain;
  }
}

}  // namespace mczeta::cli
