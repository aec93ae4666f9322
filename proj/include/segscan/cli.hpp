#pragma once

#include "segscan/signal.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace segscan::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,     // bad flags or parameters
  kExitIo = 3,        // unreadable/unwritable file, malformed CSV or JSON
  kExitSearch = 4,    // Infeasible or BudgetUnreachable
  kExitMismatch = 5,  // breakpoints and signal disagree on T
};

/// File-level failure; maps to kExitIo.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Samples as rows, ',' separated, '.' decimal. With `header`, the first line
/// is skipped. Errors name the offending 1-based line.
Signal read_csv(std::istream& in, bool header = false, const std::string& source = "<input>");
Signal read_csv(const std::filesystem::path& path, bool header = false);

/// Shortest round-trip decimal for each value; header row dim0..dim{d-1}.
void write_csv(std::ostream& out, const Signal& signal, bool header = false);

/// Breakpoints file: {"T": int, "bkps": [ints]}, terminal T included. "T" is
/// optional on input; extra keys (as in detect reports) are ignored.
struct BkpsDocument {
  std::optional<Index> n_samples;
  std::vector<Index> ends;
};
BkpsDocument parse_bkps_document(const std::string& text, const std::string& source);
BkpsDocument read_bkps_document(const std::filesystem::path& path);
std::string bkps_document(const Breakpoints& bkps);

struct PlotStyle {
  double width = 900.0;
  double panel_height = 160.0;
};

/// Standalone SVG 1.1: one panel per dimension with the signal as a
/// polyline, predicted regimes as alternating gray bands (class "regime"),
/// and true change points, when given, as dashed lines (class "truth").
std::string render_svg(const Signal& signal, const Breakpoints& predicted,
                       const std::optional<Breakpoints>& truth, const PlotStyle& style = {});

/// Entry point for the segscan tool: subcommands generate, detect, eval and
/// plot. JSON results go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace segscan::cli
