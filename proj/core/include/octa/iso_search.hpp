#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "octa/diagram.hpp"

namespace octa {

/// A candidate periodic isomorphism between two diagrams: one component per
/// position j/i with 0 <= i < j <= n; components at 0^{+1}/i are derived as
/// shifts of the bottom-row components.
struct DiagramIso {
  int n = 0;
  std::vector<std::vector<StableMorphism>> components;  // [a][b], a < b <= n

  const StableMorphism& at(int a, int b) const {
    return components[static_cast<size_t>(a)][static_cast<size_t>(b)];
  }
  bool operator==(const DiagramIso&) const = default;
};

enum class SearchMode { First, All };
enum class SearchStatus { Complete, BudgetExhausted };

struct IsoSearchResult {
  SearchStatus status = SearchStatus::Complete;
  std::uint64_t witness_count = 0;
  std::uint64_t nodes = 0;
  std::vector<DiagramIso> witnesses;
};

/// Called on each witness found (in deterministic enumeration order when
/// jobs == 1); return false to stop the search early.
using WitnessVisitor = std::function<bool(const DiagramIso&)>;

struct IsoSearchOptions {
  SearchMode mode = SearchMode::First;
  std::uint64_t budget = 1'000'000'000;
  bool store_witnesses = true;
  std::uint64_t max_stored = 1'000'000;
  int jobs = 1;
  WitnessVisitor visitor;
};

/// Backtracking search for periodic isomorphisms D1 -> D2. Positions are
/// assigned bottom-row first (1/0 .. n/0), then inner columns left to right;
/// a candidate component is extended only if it is a stable isomorphism and
/// all commutativity constraints against already-determined neighbours hold,
/// including the wrap constraints against the shifted bottom-row components
/// at 0^{+1}/i. Exhaustive within the node budget.
IsoSearchResult find_periodic_isos(const PeriodicDiagram& d1, const PeriodicDiagram& d2,
                                   const IsoSearchOptions& opts = {});

/// Independent full-constraint re-check of a witness: every component a
/// stable isomorphism, every unit-step square of the fundamental domain
/// (including the rightmost column) stably commutative. Shares no state with
/// the search.
bool verify_diagram_iso(const PeriodicDiagram& d1, const PeriodicDiagram& d2,
                        const DiagramIso& iso);

}  // namespace octa
