#include "octa/iso_search.hpp"

#include <atomic>
#include <memory>
#include <thread>

#include "octa/errors.hpp"

namespace octa {

namespace {

struct Searcher {
  const PeriodicDiagram& d1;
  const PeriodicDiagram& d2;
  const IsoSearchOptions& opts;
  int n;
  std::vector<Position> order;
  std::vector<std::vector<StableMorphism>> candidates;  // materialized per position
  std::vector<std::vector<signed char>> iso_cache;      // -1 unknown, 0 no, 1 yes
  std::atomic<std::uint64_t>& nodes;
  bool exhausted = false;
  bool stopped = false;

  std::vector<std::vector<StableMorphism>> comp;     // assigned components
  std::vector<std::vector<StableMorphism>> derived;  // shifts at 0^{+1}/i

  std::uint64_t witness_count = 0;
  std::vector<DiagramIso> witnesses;

  // One commutativity constraint against an already-determined neighbour,
  // flattened for the inner loop: canonical(w . step) (or canonical(step . w))
  // must equal the fixed matrix.
  struct FlatConstraint {
    bool w_left;
    const IntMatrix* step;
    IntMatrix expected;
    std::vector<Int> mods;  // stable moduli of the composite, row-major
  };

  std::vector<Int> composite_moduli(const FpObject& src, const FpObject& tgt) const {
    std::vector<int> es = src.exponent_list(), fs = tgt.exponent_list();
    std::vector<Int> mods;
    mods.reserve(es.size() * fs.size());
    for (int e : es)
      for (int f : fs) mods.push_back(stable_entry_modulus(d1.ctx, e, f));
    return mods;
  }

  static bool composite_matches(const IntMatrix& a, const IntMatrix& b,
                                const std::vector<Int>& mods, const IntMatrix& expected) {
    // Entries of a and b are reduced representatives, so plain int64 products
    // cannot overflow.
    size_t slot = 0;
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < b.cols; ++j, ++slot) {
        Int mod = mods[slot];
        Int acc = 0;
        for (int k = 0; k < a.cols; ++k) acc = (acc + a.at(i, k) * b.at(k, j)) % mod;
        if (acc != expected.at(i, j)) return false;
      }
    return true;
  }

  Searcher(const PeriodicDiagram& a, const PeriodicDiagram& b, const IsoSearchOptions& o,
           std::atomic<std::uint64_t>& node_counter)
      : d1(a), d2(b), opts(o), n(a.n), nodes(node_counter) {
    for (int j = 1; j <= n; ++j) order.push_back({0, j});
    for (int j = 2; j <= n; ++j)
      for (int i = 1; i < j; ++i) order.push_back({i, j});
    candidates.reserve(order.size());
    for (Position p : order) {
      StableHomSet homs(d1.ctx, d1.triangle_object(p.a, p.b), d2.triangle_object(p.a, p.b));
      std::vector<StableMorphism> list;
      list.reserve(homs.size());
      for (std::uint64_t i = 0; i < homs.size(); ++i) list.push_back(homs.at(i));
      iso_cache.emplace_back(list.size(), -1);
      candidates.push_back(std::move(list));
    }
    size_t g = static_cast<size_t>(n) + 2;
    FpObject zero = FpObject::zero(d1.ctx);
    StableMorphism zm = stable_zero(d1.ctx, zero, zero);
    comp.assign(g, std::vector<StableMorphism>(g, zm));
    derived.assign(g, std::vector<StableMorphism>(g, zm));
  }

  // Constraints for position P against its already-determined neighbours.
  // phi_P . D2(P->Q) == D1(P->Q) . phi_Q, with the fixed side precomputed and
  // the w-dependent side folded into composite_matches.
  std::vector<FlatConstraint> build_constraints(Position p) const {
    std::vector<FlatConstraint> cons;
    int a = p.a, b = p.b;
    auto from_determined = [&](const StableMorphism& step1, const StableMorphism& step2,
                               const StableMorphism& cq) {
      // cq . step2 is fixed; candidates satisfy canonical(step1 . w) == it.
      cons.push_back(FlatConstraint{false, &step1.rep.mat,
                                    compose(cq, step2).rep.mat,
                                    composite_moduli(step1.src(), step2.tgt())});
    };
    if (a == 0) {
      if (b >= 2)
        from_determined(d1.right[0][static_cast<size_t>(b - 1)],
                        d2.right[0][static_cast<size_t>(b - 1)], comp[0][static_cast<size_t>(b - 1)]);
    } else {
      from_determined(d1.up[static_cast<size_t>(a - 1)][static_cast<size_t>(b)],
                      d2.up[static_cast<size_t>(a - 1)][static_cast<size_t>(b)],
                      comp[static_cast<size_t>(a - 1)][static_cast<size_t>(b)]);
      if (b - 1 > a)
        from_determined(d1.right[static_cast<size_t>(a)][static_cast<size_t>(b - 1)],
                        d2.right[static_cast<size_t>(a)][static_cast<size_t>(b - 1)],
                        comp[static_cast<size_t>(a)][static_cast<size_t>(b - 1)]);
      if (b == n) {
        // Wrap against the shifted bottom-row component at 0^{+1}/a:
        // canonical(w . step2) == step1 . derived.
        const StableMorphism& step1 = d1.right[static_cast<size_t>(a)][static_cast<size_t>(n)];
        const StableMorphism& step2 = d2.right[static_cast<size_t>(a)][static_cast<size_t>(n)];
        cons.push_back(FlatConstraint{
            true, &step2.rep.mat,
            compose(step1, derived[static_cast<size_t>(a)][static_cast<size_t>(n + 1)]).rep.mat,
            composite_moduli(step1.src(), step2.tgt())});
      }
    }
    return cons;
  }

  void emit() {
    ++witness_count;
    DiagramIso iso;
    iso.n = n;
    iso.components = comp;
    if (opts.visitor && !opts.visitor(iso)) stopped = true;
    if (opts.store_witnesses && witnesses.size() < opts.max_stored) witnesses.push_back(iso);
    if (opts.mode == SearchMode::First) stopped = true;
  }

  // Assign positions order[idx..]; for the top position the candidate range
  // may be restricted (parallel partitioning).
  void dfs(size_t idx, std::uint64_t first_lo, std::uint64_t first_hi) {
    if (stopped || exhausted) return;
    if (idx == order.size()) {
      emit();
      return;
    }
    Position p = order[idx];
    const std::vector<StableMorphism>& homs = candidates[idx];
    std::vector<FlatConstraint> cons = build_constraints(p);
    std::vector<signed char>& cache = iso_cache[idx];
    std::uint64_t lo = idx == 0 ? first_lo : 0;
    std::uint64_t hi = idx == 0 ? first_hi : homs.size();
    for (std::uint64_t i = lo; i < hi && !stopped && !exhausted; ++i) {
      if (nodes.fetch_add(1) >= opts.budget) {
        exhausted = true;
        return;
      }
      const StableMorphism& w = homs[i];
      bool ok = true;
      for (const FlatConstraint& c : cons) {
        ok = c.w_left ? composite_matches(w.rep.mat, *c.step, c.mods, c.expected)
                      : composite_matches(*c.step, w.rep.mat, c.mods, c.expected);
        if (!ok) break;
      }
      if (!ok) continue;
      if (cache[i] < 0) cache[i] = is_stable_iso(w) ? 1 : 0;
      if (!cache[i]) continue;
      comp[static_cast<size_t>(p.a)][static_cast<size_t>(p.b)] = w;
      if (p.a == 0) derived[static_cast<size_t>(p.b)][static_cast<size_t>(n + 1)] = shift_morphism(w);
      dfs(idx + 1, first_lo, first_hi);
    }
  }
};

}  // namespace

IsoSearchResult find_periodic_isos(const PeriodicDiagram& d1, const PeriodicDiagram& d2,
                                   const IsoSearchOptions& opts) {
  if (d1.ctx != d2.ctx || d1.n != d2.n)
    throw ContractError("find_periodic_isos: diagrams must share n and context");
  if (auto err = d1.validate_structure())
    throw ContractError("find_periodic_isos: left diagram invalid: " + *err);
  if (auto err = d2.validate_structure())
    throw ContractError("find_periodic_isos: right diagram invalid: " + *err);

  std::atomic<std::uint64_t> nodes{0};
  IsoSearchResult result;

  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    Searcher s(d1, d2, opts, nodes);
    s.dfs(0, 0, s.candidates.empty() ? 0 : static_cast<std::uint64_t>(s.candidates[0].size()));
    result.status = s.exhausted ? SearchStatus::BudgetExhausted : SearchStatus::Complete;
    result.witness_count = s.witness_count;
    result.witnesses = std::move(s.witnesses);
    result.nodes = nodes.load();
    return result;
  }

  // Parallel fan-out over the first bottom-row assignment; results are merged
  // in enumeration order (first-hit semantics preserved by lowest index).
  StableHomSet top(d1.ctx, d1.triangle_object(0, 1), d2.triangle_object(0, 1));
  std::uint64_t total = top.size();
  std::vector<std::unique_ptr<Searcher>> workers;
  std::vector<std::thread> threads;
  std::uint64_t chunk = (total + static_cast<std::uint64_t>(jobs) - 1) / static_cast<std::uint64_t>(jobs);
  for (int w = 0; w < jobs; ++w) {
    std::uint64_t lo = std::min(total, static_cast<std::uint64_t>(w) * chunk);
    std::uint64_t hi = std::min(total, lo + chunk);
    workers.emplace_back(new Searcher(d1, d2, opts, nodes));
    Searcher* s = workers.back().get();
    threads.emplace_back([s, lo, hi] { s->dfs(0, lo, hi); });
  }
  for (auto& t : threads) t.join();

  bool exhausted = false;
  for (auto& s : workers) {
    exhausted = exhausted || s->exhausted;
    result.witness_count += s->witness_count;
    for (auto& iso : s->witnesses)
      if (result.witnesses.size() < opts.max_stored) result.witnesses.push_back(std::move(iso));
    if (opts.mode == SearchMode::First && result.witness_count > 0) break;
  }
  if (opts.mode == SearchMode::First && result.witness_count > 1) {
    result.witness_count = 1;
    result.witnesses.resize(1);
  }
  result.status = exhausted ? SearchStatus::BudgetExhausted : SearchStatus::Complete;
  result.nodes = nodes.load();
  return result;
}

bool verify_diagram_iso(const PeriodicDiagram& d1, const PeriodicDiagram& d2,
                        const DiagramIso& iso) {
  if (d1.ctx != d2.ctx || d1.n != d2.n || iso.n != d1.n) return false;
  int n = d1.n;
  if (iso.components.size() < static_cast<size_t>(n) + 1) return false;

  // Component at any triangle position: assigned inside, zero on the
  // diagonal and at 0^{+1}/0, shift of the bottom row on the column.
  auto component = [&](int a, int b) -> StableMorphism {
    if (a == b || (a == 0 && b == n + 1))
      return stable_zero(d1.ctx, d1.triangle_object(a, b), d2.triangle_object(a, b));
    if (b == n + 1) return shift_morphism(iso.at(0, a));
    return iso.at(a, b);
  };

  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      const StableMorphism& w = iso.at(a, b);
      if (!(w.src() == d1.triangle_object(a, b)) || !(w.tgt() == d2.triangle_object(a, b)))
        return false;
      if (!is_stable_iso(w)) return false;
    }

  for (int a = 0; a <= n; ++a)
    for (int b = a; b <= n; ++b) {
      StableMorphism lhs = compose(component(a, b), d2.right[static_cast<size_t>(a)][static_cast<size_t>(b)]);
      StableMorphism rhs = compose(d1.right[static_cast<size_t>(a)][static_cast<size_t>(b)], component(a, b + 1));
      if (!(lhs == rhs)) return false;
    }
  for (int a = 0; a <= n; ++a)
    for (int b = a + 1; b <= n + 1; ++b) {
      StableMorphism lhs = compose(component(a, b), d2.up[static_cast<size_t>(a)][static_cast<size_t>(b)]);
      StableMorphism rhs = compose(d1.up[static_cast<size_t>(a)][static_cast<size_t>(b)], component(a + 1, b));
      if (!(lhs == rhs)) return false;
    }
  return true;
}

}  // namespace octa
