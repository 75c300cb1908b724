#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ucov/tolerances.hpp"

namespace ucov {

// Machine-checkable record of one CLI invocation. The rendered form is
// deterministic: fixed field order, 12 significant digits for reals, exact
// "p/q" strings for lattice data, and no timestamps in the comparable
// section (the wall clock is printed only on request, after it).
struct RunReport {
  std::string command;
  std::string inputDigest;                                   // fnv1a-64 hex
  std::vector<std::pair<std::string, std::string>> fields;   // ordered
  std::vector<std::string> lines;                            // table body
  std::string verdict;
  std::optional<std::string> structured;                     // one-line JSON
  double wallSeconds = 0.0;

  void add(const std::string& key, const std::string& value);
  std::string render(bool includeTiming = false) const;
};

struct CliOptions {
  std::optional<std::string> algebraFile;
  std::optional<std::string> configFile;
  std::optional<std::string> outFile;
  bool structured = false;
  bool timing = false;
  std::uint64_t seed = 1;
  Tolerances tolerances;  // loaded from configFile if present
};

// Subcommand entry points. Each reads its input files, runs the underlying
// library operation and fills a report; errors propagate as exceptions and
// are mapped to exit codes by runMain.
RunReport cmdPredet(const std::string& pathFile, const CliOptions& opt);
RunReport cmdWinding(const std::string& pathFile, const CliOptions& opt);
RunReport cmdHomotopy(const std::string& pathFileA, const std::string& pathFileB,
                      const CliOptions& opt);
RunReport cmdFkDet(const std::string& elementFile, const CliOptions& opt);
RunReport cmdCover(const std::string& op, const std::vector<std::string>& argFiles,
                   const CliOptions& opt);
RunReport cmdSplitDemo(const std::string& target, int maxLevel,
                       const CliOptions& opt);
RunReport cmdLeftSplit(const std::string& sesFile, const CliOptions& opt);
RunReport cmdGenerate(const std::string& kind, const CliOptions& opt);

// Exit codes: 0 success, 2 precondition violation, 3 lattice obstruction,
// 4 parse error, 1 anything else. Reports go to `out`, error lines to `err`
// as a single machine-parsable "error: <class>: <reason>" line.
int runMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

// 12-significant-digit decimal form used for all reals in reports.
std::string formatReal(double x);

}  // namespace ucov
