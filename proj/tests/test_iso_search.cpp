#include <doctest.h>

#include "octa/gallery.hpp"
#include "octa/iso_search.hpp"
#include "test_util.hpp"

using namespace octa;

namespace {

DiagramIso identity_family(const PeriodicDiagram& d) {
  DiagramIso iso;
  iso.n = d.n;
  size_t g = static_cast<size_t>(d.n) + 2;
  FpObject zero = FpObject::zero(d.ctx);
  iso.components.assign(g, std::vector<StableMorphism>(g, stable_zero(d.ctx, zero, zero)));
  for (int a = 0; a <= d.n; ++a)
    for (int b = a + 1; b <= d.n; ++b)
      iso.components[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          stable_identity(d.ctx, d.triangle_object(a, b));
  return iso;
}

}  // namespace

TEST_CASE("identity family is a witness for (X, X)") {
  PeriodicDiagram x = gen_X(3, 2);
  CHECK(verify_diagram_iso(x, x, identity_family(x)));

  IsoSearchOptions opts;
  opts.mode = SearchMode::First;
  IsoSearchResult r = find_periodic_isos(x, x, opts);
  CHECK(r.status == SearchStatus::Complete);
  CHECK(r.witness_count == 1);
  REQUIRE(r.witnesses.size() == 1);
  CHECK(verify_diagram_iso(x, x, r.witnesses[0]));
}

TEST_CASE("restrictions along k = 0 are isomorphic, and the explicit witness validates") {
  PeriodicDiagram rx = restrict_diagram(gen_X(3, 2), 0);
  PeriodicDiagram rxt = restrict_diagram(gen_Xtilde(3, 2), 0);

  IsoSearchOptions opts;
  opts.mode = SearchMode::First;
  IsoSearchResult r = find_periodic_isos(rx, rxt, opts);
  CHECK(r.status == SearchStatus::Complete);
  REQUIRE(r.witness_count >= 1);
  CHECK(verify_diagram_iso(rx, rxt, r.witnesses[0]));

  CHECK(verify_diagram_iso(rx, rxt, explicit_witness_iso(0, 3, 2)));
}

TEST_CASE("no isomorphism between the two octahedra (p = 2)") {
  PeriodicDiagram x = gen_X(3, 2);
  PeriodicDiagram xt = gen_Xtilde(3, 2);
  IsoSearchOptions opts;
  opts.mode = SearchMode::All;
  IsoSearchResult r = find_periodic_isos(x, xt, opts);
  CHECK(r.status == SearchStatus::Complete);
  CHECK(r.witness_count == 0);
}

TEST_CASE("all (X, X) witnesses re-verify and obey the bottom-row congruences") {
  Int p = 2;
  PeriodicDiagram x = gen_X(3, p);
  IsoSearchOptions opts;
  opts.mode = SearchMode::All;
  IsoSearchResult r = find_periodic_isos(x, x, opts);
  CHECK(r.status == SearchStatus::Complete);
  CHECK(r.witness_count >= 1);
  CHECK(r.witness_count == r.witnesses.size());
  Int p2 = p * p;
  bool has_identity = false;
  DiagramIso id = identity_family(x);
  for (const DiagramIso& w : r.witnesses) {
    CHECK(verify_diagram_iso(x, x, w));
    if (w == id) has_identity = true;
    Int u = w.at(0, 1).rep.mat.at(0, 0);
    Int v = w.at(0, 2).rep.mat.at(0, 0);
    Int ww = w.at(0, 3).rep.mat.at(0, 0);
    CHECK(floor_mod(u - v, p2) == 0);
    CHECK(floor_mod(v - ww, p2) == 0);
  }
  CHECK(has_identity);
}

TEST_CASE("budget exhaustion is reported, never silently truncated") {
  PeriodicDiagram x = gen_X(3, 2);
  IsoSearchOptions opts;
  opts.mode = SearchMode::All;
  opts.budget = 10;
  IsoSearchResult r = find_periodic_isos(x, x, opts);
  CHECK(r.status == SearchStatus::BudgetExhausted);
}

TEST_CASE("parallel search agrees with the sequential one") {
  PeriodicDiagram x = gen_X(3, 2);
  PeriodicDiagram xt = gen_Xtilde(3, 2);
  IsoSearchOptions seq;
  seq.mode = SearchMode::All;
  IsoSearchOptions par = seq;
  par.jobs = 3;
  CHECK(find_periodic_isos(x, xt, par).witness_count ==
        find_periodic_isos(x, xt, seq).witness_count);
  CHECK(find_periodic_isos(x, x, par).witness_count ==
        find_periodic_isos(x, x, seq).witness_count);
}

TEST_CASE("every gallery diagram is self-isomorphic via the search") {
  for (const PeriodicDiagram& d : {gen_Y_stable(3, 2), gen_Xtilde(4, 2)}) {
    IsoSearchOptions opts;
    opts.mode = SearchMode::First;
    IsoSearchResult r = find_periodic_isos(d, d, opts);
    REQUIRE(r.witness_count == 1);
    CHECK(verify_diagram_iso(d, d, r.witnesses[0]));
    CHECK(verify_diagram_iso(d, d, identity_family(d)));
  }
}

TEST_CASE("searches reject mismatched inputs") {
  CHECK_THROWS_AS(find_periodic_isos(gen_X(3, 2), gen_X(4, 2), {}), ContractError);
  CHECK_THROWS_AS(find_periodic_isos(gen_X(3, 2), gen_X(3, 3), {}), ContractError);
}
