#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mczeta/funceq.hpp"
#include "mczeta/types.hpp"

namespace mczeta::cli {

inline constexpr const char* kSchema = "mczeta-report/1";

enum ExitCode : int { kExitPass = 0, kExitResidual = 1, kExitUsage = 2, kExitDomain = 3 };

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses `[-]a[.b][e+-n][+|-c[.d][e+-n]i]`, no whitespace.
Complex parse_complex(const std::string& text);
/// Comma-separated complex literals.
std::vector<Complex> parse_list(const std::string& text);

struct PointLine {
  int line = 0;
  std::vector<Complex> args;
};
/// One point per line; blank lines and `#` comments skipped. Errors carry the line number.
std::vector<PointLine> read_points(std::istream& in);

std::string format_complex(Complex z);
std::string format_point(const std::vector<Complex>& s);

nlohmann::json report_json(const FEReport& rep);
/// Top-level document for a list of reports.
nlohmann::json report_document(const std::vector<FEReport>& reps);

std::string csv_header();
std::string csv_row(const FEReport& rep);
std::string csv_quote(const std::string& field);

/// Exit status for a finished batch of reports.
int batch_status(const std::vector<FEReport>& reps, bool strict);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mczeta::cli
