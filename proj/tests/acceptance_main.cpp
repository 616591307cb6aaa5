// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. All numeric assertions are exact integer
// checks; the only tolerances are the wall-clock budgets stated inline.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "octa/gallery.hpp"
#include "octa/iso_search.hpp"
#include "octa/snf.hpp"
#include "test_util.hpp"

using namespace octa;
using octa_test::random_emorphism;
using octa_test::random_object;
using octa_test::random_stable;
using octa_test::smor;

namespace {

int g_failures = 0;

struct Criterion {
  const char* name;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string note;

  explicit Criterion(const char* n) : name(n) {}
  void require(bool cond, const std::string& what) {
    if (!cond && ok) note = what;
    ok = ok && cond;
  }
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  ~Criterion() {
    double s = seconds();
    std::printf("%s %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", name, s, note.empty() ? "" : " -- ",
                note.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
  }
};

Triangle reference_restriction(const Context& ctx, Int p, int k) {
  switch (k) {
    case 1:
    case 3:
      return Triangle{ctx,
                      FpObject::from_exponents(ctx, {3}),
                      FpObject::from_exponents(ctx, {3}),
                      FpObject::from_exponents(ctx, {1, 5}),
                      smor(ctx, {3}, {3}, {p}),
                      smor(ctx, {3}, {1, 5}, {1, p * p}),
                      smor(ctx, {1, 5}, {3}, {-p * p, 1})};
    case 2:
      return Triangle{ctx,
                      FpObject::from_exponents(ctx, {3}),
                      FpObject::from_exponents(ctx, {3}),
                      FpObject::from_exponents(ctx, {2, 4}),
                      smor(ctx, {3}, {3}, {p * p}),
                      smor(ctx, {3}, {2, 4}, {1, p}),
                      smor(ctx, {2, 4}, {3}, {-p, 1})};
    default:
      return Triangle{ctx,
                      FpObject::from_exponents(ctx, {1, 5}),
                      FpObject::from_exponents(ctx, {2, 4}),
                      FpObject::from_exponents(ctx, {1, 5}),
                      smor(ctx, {1, 5}, {2, 4}, {p, 0, 0, 1}),
                      smor(ctx, {2, 4}, {1, 5}, {1, 0, 0, p}),
                      smor(ctx, {1, 5}, {1, 5}, {0, -p * p * p * p, 1, 0})};
  }
}

void criterion_1() {
  Criterion c("criterion-1 octahedron-verification-with-reference-restrictions");
  for (Int p : {Int{2}, Int{3}}) {
    auto t0 = std::chrono::steady_clock::now();
    Context ctx(p, 6);
    PeriodicDiagram x = gen_X(3, p);
    PeriodicDiagram xt = gen_Xtilde(3, p);
    c.require(is_verdier_octahedron(x), "X is not a Verdier octahedron");
    c.require(is_verdier_octahedron(xt), "Xtilde is not a Verdier octahedron");
    for (int k = 0; k <= 3; ++k) {
      Triangle got = triangle_of(restrict_diagram(x, k));
      Triangle want = reference_restriction(ctx, p, k);
      c.require(triangles_equal(got, want),
                "restriction k=" + std::to_string(k) + " deviates from the reference triangle");
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(s < 30.0, "runtime budget of 30 s exceeded for p=" + std::to_string(p));
  }
}

void criterion_2() {
  Criterion c("criterion-2 exhaustive-nonisomorphism-and-witness-congruences");
  for (Int p : {Int{2}, Int{3}}) {
    PeriodicDiagram x = gen_X(3, p);
    PeriodicDiagram xt = gen_Xtilde(3, p);

    auto t0 = std::chrono::steady_clock::now();
    IsoSearchOptions opts;
    opts.mode = SearchMode::All;
    opts.store_witnesses = false;
    IsoSearchResult r = find_periodic_isos(x, xt, opts);
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(r.status == SearchStatus::Complete, "search did not complete");
    c.require(r.witness_count == 0, "unexpected isomorphism X -> Xtilde");
    c.require(s < (p == 2 ? 60.0 : 600.0), "time budget exceeded for p=" + std::to_string(p));

    // The same search on (X, X): at least one witness, and every witness
    // satisfies u == v == w mod p^2 on the bottom row.
    Int p2 = p * p;
    std::uint64_t bad = 0;
    IsoSearchOptions self = opts;
    self.visitor = [&](const DiagramIso& w) {
      Int u = w.at(0, 1).rep.mat.at(0, 0);
      Int v = w.at(0, 2).rep.mat.at(0, 0);
      Int ww = w.at(0, 3).rep.mat.at(0, 0);
      if (floor_mod(u - v, p2) != 0 || floor_mod(v - ww, p2) != 0) ++bad;
      return true;
    };
    IsoSearchResult rs = find_periodic_isos(x, x, self);
    c.require(rs.status == SearchStatus::Complete, "self-search did not complete");
    c.require(rs.witness_count >= 1, "no self-isomorphism found");
    c.require(bad == 0, "a witness violates the bottom-row congruences");
  }
}

void criterion_3() {
  Criterion c("criterion-3 restriction-isomorphisms-with-explicit-witnesses");
  auto run = [&](int n, Int p) {
    PeriodicDiagram x = gen_X(n, p);
    PeriodicDiagram xt = gen_Xtilde(n, p);
    for (int k = 0; k <= n; ++k) {
      PeriodicDiagram rx = restrict_diagram(x, k);
      PeriodicDiagram rxt = restrict_diagram(xt, k);
      IsoSearchOptions opts;
      opts.mode = SearchMode::First;
      IsoSearchResult r = find_periodic_isos(rx, rxt, opts);
      c.require(r.status == SearchStatus::Complete && r.witness_count >= 1,
                "no isomorphism found at n=" + std::to_string(n) + " k=" + std::to_string(k));
      c.require(verify_diagram_iso(rx, rxt, explicit_witness_iso(k, n, p)),
                "explicit witness fails at n=" + std::to_string(n) + " k=" + std::to_string(k));
      if (k == 1 || k == n)
        c.require(rx == rxt, "literal equality fails at k=" + std::to_string(k));
    }
  };
  run(3, 2);
  run(3, 3);
  run(4, 2);  // stretch
}

void criterion_4() {
  Criterion c("criterion-4 extra-triangles-distinguished");
  for (Int p : {Int{2}, Int{3}}) {
    Context ctx(p, 6);
    for (bool tilde : {false, true}) {
      auto [t1, t2] = bbd_extra_triangles(tilde ? gen_Xtilde(3, p) : gen_X(3, p));
      c.require(t1.y == FpObject::from_exponents(ctx, {1, 3, 5}), "first middle object deviates");
      c.require(t2.z == FpObject::from_exponents(ctx, {1, 3, 5}), "second sum object deviates");
      c.require(t1.z == FpObject::from_exponents(ctx, {2, 4}), "first cone object deviates");
      c.require(t2.y == FpObject::from_exponents(ctx, {2, 4}), "second middle object deviates");
      c.require(is_distinguished(t1), "first extra triangle not distinguished");
      c.require(is_distinguished(t2), "second extra triangle not distinguished");
    }
  }
}

void criterion_5() {
  Criterion c("criterion-5 pretriangle-checks-and-mutation-sensitivity");
  struct Case {
    int n;
    Int p;
  } cases[] = {{3, 2}, {3, 3}, {4, 2}};
  for (auto [n, p] : cases) {
    c.require(is_periodic_pretriangle(gen_X(n, p)),
              "X fails at n=" + std::to_string(n) + " p=" + std::to_string(p));
    c.require(is_periodic_pretriangle(gen_Xtilde(n, p)),
              "Xtilde fails at n=" + std::to_string(n) + " p=" + std::to_string(p));

    // Zeroing either modified p^{n-3} entry must flip some check to fail.
    {
      PeriodicDiagram mutated = gen_Xtilde(n, p);
      EMorphism rep = mutated.right[1][static_cast<size_t>(n - 1)].rep;
      rep.mat.at(1, 0) = 0;
      mutated.right[1][static_cast<size_t>(n - 1)] = canonical_form(
          EMorphism::make(mutated.ctx, rep.src, rep.tgt, rep.mat));
      c.require(!is_periodic_pretriangle(mutated), "horizontal mutation went unnoticed");
    }
    {
      PeriodicDiagram mutated = gen_Xtilde(n, p);
      EMorphism rep = mutated.up[1][static_cast<size_t>(n)].rep;
      rep.mat.at(1, 0) = 0;
      mutated.up[1][static_cast<size_t>(n)] = canonical_form(
          EMorphism::make(mutated.ctx, rep.src, rep.tgt, rep.mat));
      c.require(!is_periodic_pretriangle(mutated), "vertical mutation went unnoticed");
    }
  }
}

void criterion_6() {
  Criterion c("criterion-6 property-suites");

  // Stable-zero criterion iff factorization through the distinguished mono,
  // exhaustively for m <= 3, p = 2, objects with <= 2 summands.
  for (int m = 0; m <= 3; ++m) {
    Context ctx(2, m);
    std::vector<FpObject> objs;
    objs.push_back(FpObject::zero(ctx));
    for (int a = 0; a <= m; ++a) {
      objs.push_back(FpObject::from_exponents(ctx, {a}));
      for (int b = a; b <= m; ++b) objs.push_back(FpObject::from_exponents(ctx, {a, b}));
    }
    for (const FpObject& x : objs)
      for (const FpObject& y : objs) {
        DistinguishedSes ses = distinguished_ses(ctx, x);
        HomSet hom(ctx, x, y, 1u << 16);
        for (std::uint64_t i = 0; i < hom.size(); ++i) {
          EMorphism f = hom.at(i);
          if (is_stably_zero(f) != solve_right_factor(ses.mono, f).has_value()) {
            c.require(false, "stable-zero criterion disagrees with the factorization oracle");
            return;
          }
        }
      }
  }

  // Shift is a strict involution and functorial on 10^4 random composable
  // pairs at m = 6.
  {
    std::mt19937_64 rng(161803);
    Context ctx(2, 6);
    for (int iter = 0; iter < 10000; ++iter) {
      FpObject a = random_object(ctx, rng, 3);
      FpObject b = random_object(ctx, rng, 3);
      FpObject d = random_object(ctx, rng, 2);
      StableMorphism f = random_stable(ctx, a, b, rng);
      StableMorphism g = random_stable(ctx, b, d, rng);
      if (!(shift_morphism(shift_morphism(f)) == f) ||
          !(shift_morphism(compose(f, g)) == compose(shift_morphism(f), shift_morphism(g)))) {
        c.require(false, "shift involution/functoriality violated");
        return;
      }
    }
    c.require(shift_morphism(stable_identity(ctx, FpObject::from_exponents(ctx, {2, 5}))) ==
                  stable_identity(ctx, FpObject::from_exponents(ctx, {1, 4})),
              "shift of identity is not the identity");
  }

  // cone(f) is distinguished for 100 random f at p = 2, m = 6.
  {
    std::mt19937_64 rng(271828);
    Context ctx(2, 6);
    for (int iter = 0; iter < 100; ++iter) {
      FpObject x = random_object(ctx, rng, 2);
      FpObject y = random_object(ctx, rng, 2);
      StableMorphism f = random_stable(ctx, x, y, rng);
      if (!is_distinguished(cone(f))) {
        c.require(false, "a cone failed the distinguished-triangle check");
        return;
      }
    }
  }

  // SNF identities on 10^3 random matrices with entries in [-20, 20].
  {
    std::mt19937_64 rng(314159);
    std::uniform_int_distribution<Int> entry(-20, 20);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int iter = 0; iter < 1000; ++iter) {
      IntMatrix m(dim(rng), dim(rng));
      for (Int& v : m.a) v = entry(rng);
      SnfResult s = smith_normal_form(m);
      bool ok = octa_test::triple_product_equals(s.u, m, s.v, s.d) &&
                octa_test::is_unimodular(s.u) && octa_test::is_unimodular(s.v);
      try {
        octa_test::check_snf_shape(s, m.rows, m.cols);
      } catch (const std::exception&) {
        ok = false;
      }
      if (!ok) {
        c.require(false, "SNF identity violated at iteration " + std::to_string(iter));
        return;
      }
    }
  }
}

void criterion_7() {
  Criterion c("criterion-7 standardisation-properties-and-scope-note");
  for (int n : {3, 4}) {
    EDiagram y = gen_Y(n, 2);
    StandardizeResult res = standardize_column(y);
    c.require(res.diagram == stable_image(y),
              "already-distinguished columns were not passed through unchanged");
    for (const auto& tau : res.tau)
      c.require(tau == stable_identity(y.ctx, tau.src()), "nontrivial tau on the staircase");
    c.require(is_periodic_pretriangle(res.diagram), "standardised staircase not a pretriangle");
  }
  // Claims beyond 2-dimensional restrictions are documented as out of scope.
  std::ifstream readme(std::string(OCTAVER_SOURCE_DIR) + "/README.md");
  std::stringstream ss;
  ss << readme.rdbuf();
  c.require(readme.good() && ss.str().find("out of scope") != std::string::npos,
            "README scope note missing");
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  if (g_failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criterion(s) failed\n", g_failures);
  return 1;
}
