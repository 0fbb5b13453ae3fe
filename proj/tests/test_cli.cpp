#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace mczeta;
using namespace mczeta::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mczeta");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "cli_test_" + name + ".txt";
  std::ofstream(path) << body;
  return path;
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("complex literal grammar") {
  CHECK(parse_complex("2") == Complex{2.0});
  CHECK(parse_complex("-0.5") == Complex{-0.5});
  CHECK(parse_complex("1e-3") == Complex{1e-3});
  CHECK(parse_complex("0.3+0.4i") == Complex{0.3, 0.4});
  CHECK(parse_complex("-1.1-2e-1i") == Complex{-1.1, -0.2});
  CHECK(parse_complex("3E+2-7i") == Complex{300.0, -7.0});
  for (const char* bad : {"", "i", "0.4i", "1+i", "1 + 2i", ".5", "5.", "1e", "--1", "+1", "1+2", "1+2j", "nan", "1e999"})
    CHECK_THROWS_AS(parse_complex(bad), ParseError);
}

TEST_CASE("literal lists and formatting") {
  const auto v = parse_list("-0.5,2.7,0.3-0.4i");
  REQUIRE(v.size() == 3);
  CHECK(v[2] == Complex{0.3, -0.4});
  CHECK_THROWS_AS(parse_list("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_list("1,2,"), ParseError);
  CHECK(format_complex({2.7, 0.0}) == "2.7");
  CHECK(format_complex({0.3, -0.4}) == "0.3-0.4i");
  CHECK(format_point(v) == "-0.5,2.7,0.3-0.4i");
  for (Complex z : {Complex{0.1, 1.0 / 3.0}, Complex{-1e-300, 2.5e17}})
    CHECK(parse_complex(format_complex(z)) == z);
}

TEST_CASE("points files") {
  std::istringstream ok("# header\n-0.5,2.7\n\n  -1.3,3.2   # trailing\n");
  const auto pts = read_points(ok);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1].line == 4);
  CHECK(pts[1].args[1] == Complex{3.2});
  std::istringstream bad("-0.5,2.7\n1,2x\n");
  try {
    read_points(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("csv quoting") {
  CHECK(csv_quote("plain") == "plain");
  CHECK(csv_quote("-0.5,2.7") == "\"-0.5,2.7\"");
  CHECK(csv_quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_header().rfind("point,lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,terms,tail_est,wall_ms", 0) == 0);
}

TEST_CASE("eval examples") {
  auto r = run_cli({"eval", "--fn", "zeta", "--args", "2"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("value: 1.644934066848") != std::string::npos);
  r = run_cli({"eval", "--fn", "psi", "--args", "1,2,1"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("value: 0.99999999999999") != std::string::npos);
  r = run_cli({"eval", "--fn", "sigma", "--args", "1,6"});
  CHECK(r.out.find("value: 12\n") != std::string::npos);
  r = run_cli({"eval", "--fn", "sigma_ez", "--args", "0,0,2,3"});
  CHECK(r.out.find("value: 4\n") != std::string::npos);
  r = run_cli({"eval", "--fn", "zeta_ez", "--args", "2,2", "--format", "json"});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == kSchema);
  CHECK(j["value"]["re"].get<double>() == doctest::Approx(std::pow(kPi, 4) / 120.0).epsilon(1e-12));
}

TEST_CASE("eval covers every registered function") {
  const std::vector<std::pair<std::string, std::string>> calls = {
      {"zeta_ez", "-0.5,2.7"},     {"zeta", "0.5+14i"},        {"psi", "0.5,1.5,2"},
      {"psi_a", "0.3,1.2,0.8,3,5"}, {"fd", "0.3,0.5,1.2,2.1,0.4,-0.3"}, {"sigma", "0.5,12"},
      {"sigma_ez", "1,1,4,6"},     {"f_pm", "-0.5,2.7"},       {"g_r", "-0.5,2.7"}};
  for (const auto& [fn, args] : calls) {
    CAPTURE(fn);
    const auto r = run_cli({"eval", "--fn", fn, "--args", args});
    CHECK(r.code == kExitPass);
    CHECK(r.out.rfind("value: ", 0) == 0);
    CHECK(r.out.find("abs_err_est: ") != std::string::npos);
    CHECK(r.out.find("terms_used: ") != std::string::npos);
  }
}

TEST_CASE("eval exit codes") {
  CHECK(run_cli({"eval", "--fn", "zeta", "--args", "2x"}).code == kExitUsage);
  CHECK(run_cli({"eval", "--fn", "nope", "--args", "2"}).code == kExitUsage);
  CHECK(run_cli({"eval", "--fn", "psi", "--args", "1,2"}).code == kExitUsage);
  CHECK(run_cli({"eval", "--fn", "sigma", "--args", "1,2.5"}).code == kExitUsage);
  CHECK(run_cli({"eval", "--args", "2"}).code == kExitUsage);
  CHECK(run_cli({"bogus"}).code == kExitUsage);
  const auto dom = run_cli({"eval", "--fn", "f_pm", "--args", "0.5,2.7"});
  CHECK(dom.code == kExitDomain);
  CHECK(dom.err.find("Re s_1 < 0") != std::string::npos);
  CHECK(run_cli({"eval", "--fn", "zeta_ez", "--args", "0.3,1"}).code == kExitDomain);
  CHECK(run_cli({"--help"}).code == kExitPass);
}

TEST_CASE("precision backend selection") {
  setenv("MCZETA_PRECISION", "binary64", 1);
  CHECK(run_cli({"eval", "--fn", "zeta", "--args", "2"}).code == kExitPass);
  setenv("MCZETA_PRECISION", "binary128", 1);
  const auto r = run_cli({"eval", "--fn", "zeta", "--args", "2"});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("binary64") != std::string::npos);
  unsetenv("MCZETA_PRECISION");
}

TEST_CASE("verify examples") {
  auto r = run_cli({"verify", "--theorem", "main", "--r", "2", "--point", "-0.5,2.7", "--tol", "1e-6"});
  CHECK(r.code == kExitPass);
  CHECK(r.out.rfind("PASS", 0) == 0);
  r = run_cli({"verify", "--theorem", "main", "--r", "3", "--point", "-2.2,2.5,1.5", "--tol", "1e-4"});
  CHECK(r.code == kExitPass);
  r = run_cli({"verify", "--theorem", "matsumoto", "--point", "0.3+0.4i,2.2"});
  CHECK(r.code == kExitPass);
  r = run_cli({"verify", "--theorem", "theorem3", "--point", "-1.3,3.2"});
  CHECK(r.code == kExitPass);
  // The symmetric hyperplane form as usually stated misses an odd zeta value.
  r = run_cli({"verify", "--theorem", "hyperplane", "--k", "1", "--s1", "-0.5", "--tol", "1e-6"});
  CHECK(r.code == kExitResidual);
  CHECK(r.out.find("odd_zeta_term") != std::string::npos);
}

TEST_CASE("verify skip handling and strict mode") {
  const std::vector<std::string> base = {"verify", "--point", "-0.5,2.7", "--point", "0.5,2.7"};
  auto r = run_cli(base);
  CHECK(r.code == kExitPass);
  CHECK(r.out.find("SKIP") != std::string::npos);
  auto strict = base;
  strict.push_back("--strict");
  CHECK(run_cli(strict).code == kExitDomain);
  auto failing = strict;
  failing.insert(failing.end(), {"--tol", "1e-20"});
  CHECK(run_cli(failing).code == kExitResidual);
  CHECK(run_cli({"verify"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--r", "4", "--point", "1,2"}).code == kExitUsage);
  CHECK(run_cli({"verify", "--point", "-0.5,2.7", "--tol", "0"}).code == kExitUsage);
}

TEST_CASE("json report round-trips byte for byte") {
  const auto r = run_cli({"verify", "--point", "-0.5,2.7", "--point", "0.5,2.7", "--format", "json"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["schema"] == kSchema);
  REQUIRE(doc["reports"].size() == 2);
  CHECK(doc["reports"][0]["status"] == "PASS");
  CHECK(doc["reports"][1]["status"] == "SKIP");
  CHECK(doc.dump(2) + "\n" == r.out);
  CHECK(nlohmann::json::parse(doc.dump(2)).dump(2) == doc.dump(2));
}

TEST_CASE("sweep output") {
  const auto pts = temp_file("sweep", "# depth two\n-0.5,2.7\n-1.3,3.2\n0.5,2.7\n");
  auto r = run_cli({"sweep", "--points-file", pts});
  CHECK(r.code == kExitPass);
  CHECK(count_lines(r.out) == 4);
  CHECK(r.out.find("\"-0.5,2.7\",") != std::string::npos);
  CHECK(r.out.find(",SKIP,") != std::string::npos);
  CHECK(r.out.find("Re s_1 < 0 required") != std::string::npos);
  // Rows follow file order regardless of evaluation order.
  CHECK(r.out.find("-0.5,2.7") < r.out.find("-1.3,3.2"));

  const auto empty = temp_file("empty", "");
  r = run_cli({"sweep", "--points-file", empty});
  CHECK(r.code == kExitPass);
  CHECK(r.out == csv_header() + "\n");

  const auto bad = temp_file("bad", "-0.5,2.7\n\n-1.3;3.2\n");
  r = run_cli({"sweep", "--points-file", bad});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run_cli({"sweep"}).code == kExitUsage);
  CHECK(run_cli({"sweep", "--points-file", "missing_file.txt"}).code == kExitUsage);
}
