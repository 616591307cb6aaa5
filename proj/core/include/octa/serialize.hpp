#pragma once

#include <string>
#include <vector>

#include "octa/diagram.hpp"
#include "octa/iso_search.hpp"

namespace octa {

/// Canonical JSON serialization of a periodic diagram:
/// {"p", "m", "n", "objects": {"j/i": [exponents]}, "maps": {"j/i->l/k": [[..]]}}.
/// Positions are written "j/i" with 0^{+1} printed "0+"; matrices row-major,
/// rows = source summands. Keys sorted, residues canonical; emit -> load ->
/// re-emit is byte-identical.
std::string diagram_to_json(const PeriodicDiagram& d);

/// Parse and validate. Negative entries are reduced on load. Throws
/// ContractError naming the first failing structural invariant.
PeriodicDiagram diagram_from_json(const std::string& text);

PeriodicDiagram load_diagram_file(const std::string& path);
void save_diagram_file(const PeriodicDiagram& d, const std::string& path);

/// One verification result. Exit-code contract of a run: 0 iff all checks
/// pass, 1 on any fail, 2 on usage/format error, 3 on inconclusive (budget).
struct ReportEntry {
  std::string name;
  std::string status;  // pass | fail | inconclusive
  std::string detail;
  double time_ms = 0.0;
  std::vector<std::string> payload;  // witness / counterexample lines
};

struct Report {
  std::vector<ReportEntry> entries;

  void add(ReportEntry e) { entries.push_back(std::move(e)); }
  int exit_code() const;
  std::string to_json() const;
};

std::string iso_to_json_lines(const DiagramIso& iso);

}  // namespace octa
