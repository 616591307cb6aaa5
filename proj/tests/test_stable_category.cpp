#include <doctest.h>

#include <random>

#include "octa/stable_category.hpp"
#include "test_util.hpp"

using namespace octa;
using octa_test::make;
using octa_test::mor;
using octa_test::random_object;
using octa_test::random_stable;
using octa_test::smor;

namespace {

std::vector<FpObject> small_objects(const Context& ctx, int max_summands) {
  std::vector<FpObject> out;
  out.push_back(FpObject::zero(ctx));
  for (int a = 0; a <= ctx.m; ++a) {
    out.push_back(FpObject::from_exponents(ctx, {a}));
    if (max_summands >= 2)
      for (int b = a; b <= ctx.m; ++b) out.push_back(FpObject::from_exponents(ctx, {a, b}));
  }
  return out;
}

}  // namespace

TEST_CASE("stable-zero criterion instances") {
  Context ctx(2, 6);
  CHECK(is_stably_zero(mor(ctx, {3}, {3}, {8})));        // p^3, min(3,3) = 3
  CHECK_FALSE(is_stably_zero(mor(ctx, {5}, {1}, {1})));  // min(1,1) = 1, p does not divide 1
  CHECK(is_stably_zero(mor(ctx, {5}, {1}, {0})));
  // Maps into bijectives vanish stably.
  CHECK(is_stably_zero(mor(ctx, {3}, {6}, {8})));
}

TEST_CASE("stable-zero iff factorization through the distinguished mono") {
  // f: X -> Y vanishes stably iff it factors as mono_X . g with g: B_X -> Y.
  for (int m = 0; m <= 3; ++m) {
    Context ctx(2, m);
    for (const FpObject& x : small_objects(ctx, 2))
      for (const FpObject& y : small_objects(ctx, 2)) {
        DistinguishedSes ses = distinguished_ses(ctx, x);
        HomSet hom(ctx, x, y, 1u << 16);
        for (std::uint64_t i = 0; i < hom.size(); ++i) {
          EMorphism f = hom.at(i);
          bool zero = is_stably_zero(f);
          bool factors = solve_right_factor(ses.mono, f).has_value();
          CHECK(zero == factors);
        }
      }
  }
}

TEST_CASE("canonical form determines stable equality") {
  Context ctx(2, 6);
  EMorphism f = mor(ctx, {3}, {3}, {3});
  EMorphism g = mor(ctx, {3}, {3}, {3 + 8});  // differs by the stably-zero p^3
  CHECK(stable_equal(f, g));
  CHECK(canonical_form(f) == canonical_form(g));
  CHECK(canonical_form(f).rep.mat.at(0, 0) == 3);
}

TEST_CASE("shift formula instances") {
  Context ctx(2, 6);
  Int p = 2;
  // i = 2, j = 1, a = p: the shifted class is that of p^{i-j} a = p^2 on
  // Z/p^4 -> Z/p^5 (both classes happen to vanish stably, consistently).
  StableMorphism s = shift_morphism(smor(ctx, {2}, {1}, {p}));
  CHECK(s.src() == FpObject::from_exponents(ctx, {4}));
  CHECK(s.tgt() == FpObject::from_exponents(ctx, {5}));
  CHECK(stable_equal(s.rep, mor(ctx, {4}, {5}, {p * p})));
  CHECK(is_stably_zero(smor(ctx, {2}, {1}, {p})));

  // A representative-level instance with nothing vanishing: i = 3, j = 5,
  // a = p^2 shifts to 1 on Z/p^3 -> Z/p^1.
  EMorphism raw = shift_representative(mor(ctx, {3}, {5}, {p * p}));
  CHECK(raw.src == FpObject::from_exponents(ctx, {3}));
  CHECK(raw.tgt == FpObject::from_exponents(ctx, {1}));
  CHECK(raw.mat.at(0, 0) == 1);
  CHECK_FALSE(is_stably_zero(raw));

  StableMorphism id3 = stable_identity(ctx, FpObject::from_exponents(ctx, {3}));
  CHECK(shift_morphism(id3) == id3);

  StableMorphism leg = smor(ctx, {3}, {1, 5}, {1, p * p});
  CHECK(shift_morphism(leg) == leg);
}

TEST_CASE("shift is a strict involution, exhaustively on small objects") {
  for (Int p : {Int{2}, Int{3}}) {
    Context ctx(p, 6);
    for (const FpObject& x : small_objects(ctx, 2)) {
      CHECK(shift_object(ctx, shift_object(ctx, x)) == x);
      for (const FpObject& y : {FpObject::from_exponents(ctx, {2}),
                                FpObject::from_exponents(ctx, {1, 5})}) {
        StableHomSet hom(ctx, x, y);
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(hom.size(), 64); ++i) {
          StableMorphism f = hom.at(i);
          CHECK(shift_morphism(shift_morphism(f)) == f);
          CHECK(unshift_morphism(shift_morphism(f)) == f);
        }
      }
    }
  }
}

TEST_CASE("shift is additive and functorial on random composable pairs") {
  std::mt19937_64 rng(2718);
  Context ctx(2, 6);
  for (int iter = 0; iter < 2000; ++iter) {
    FpObject a = random_object(ctx, rng, 3);
    FpObject b = random_object(ctx, rng, 3);
    FpObject c = random_object(ctx, rng, 2);
    StableMorphism f = random_stable(ctx, a, b, rng);
    StableMorphism f2 = random_stable(ctx, a, b, rng);
    StableMorphism g = random_stable(ctx, b, c, rng);
    CHECK(shift_morphism(compose(f, g)) == compose(shift_morphism(f), shift_morphism(g)));
    CHECK(shift_morphism(add(f, f2)) == add(shift_morphism(f), shift_morphism(f2)));
    CHECK(shift_morphism(shift_morphism(f)) == f);
  }
  CHECK(shift_morphism(stable_identity(ctx, FpObject::from_exponents(ctx, {2, 3}))) ==
        stable_identity(ctx, FpObject::from_exponents(ctx, {3, 4})));
}

TEST_CASE("is_stable_iso instances") {
  Context ctx(2, 6);
  CHECK(is_stable_iso(stable_identity(ctx, FpObject::from_exponents(ctx, {1, 5}))));
  // p: Z/p^3 -> Z/p^3 has no stable inverse: p x == 1 mod p^3 is unsolvable.
  StableMorphism mulp = smor(ctx, {3}, {3}, {2});
  CHECK_FALSE(is_stable_iso(mulp));
  CHECK_FALSE(stable_inverse(mulp).has_value());

  // The explicit witness entry at (n-1)/0 for n = 4, p = 2 (m = 8).
  Context ctx8(2, 8);
  StableMorphism w = smor(ctx8, {3, 5}, {3, 5}, {1, 0, 2, 1});
  CHECK(is_stable_iso(w));
  CHECK(stable_inverse(w).has_value());
}

TEST_CASE("is_stable_iso agrees with the exhaustive inverse search") {
  Context ctx(2, 3);
  for (const FpObject& x : small_objects(ctx, 2))
    for (const FpObject& y : small_objects(ctx, 2)) {
      StableHomSet hom(ctx, x, y, 1u << 16);
      for (std::uint64_t i = 0; i < hom.size(); ++i) {
        StableMorphism f = hom.at(i);
        CHECK(is_stable_iso(f) == stable_inverse(f).has_value());
      }
    }
}

TEST_CASE("stable equality is a congruence") {
  std::mt19937_64 rng(5);
  Context ctx(2, 6);
  for (int iter = 0; iter < 200; ++iter) {
    FpObject a = random_object(ctx, rng, 2);
    FpObject b = random_object(ctx, rng, 2);
    FpObject c = random_object(ctx, rng, 2);
    StableMorphism f = random_stable(ctx, a, b, rng);
    StableMorphism g = random_stable(ctx, b, c, rng);
    // Perturb f by a morphism that factors through the bijective hull.
    DistinguishedSes ses = distinguished_ses(ctx, a);
    EMorphism through = compose(ses.mono, octa_test::random_emorphism(ctx, ses.middle, b, rng));
    EMorphism f2 = add(f.rep, through);
    CHECK(stable_equal(f.rep, f2));
    CHECK(compose(canonical_form(f2), g) == compose(f, g));
    CHECK(add(canonical_form(f2), f) == add(f, f));
  }
}

TEST_CASE("cone: multiplication by p on Z/p^3") {
  Context ctx(2, 6);
  Triangle t = cone(smor(ctx, {3}, {3}, {2}));
  CHECK(t.z == FpObject::from_exponents(ctx, {1, 5}));
  CHECK(is_stably_zero(compose(t.f, t.g)));
  CHECK(is_stably_zero(compose(t.g, t.h)));
  CHECK(is_stably_zero(compose(t.h, shift_morphism(t.f))));
  CHECK(is_distinguished(t));

  Triangle t2 = cone(smor(ctx, {3}, {3}, {4}));
  CHECK(t2.z == FpObject::from_exponents(ctx, {2, 4}));

  Triangle tid = cone(stable_identity(ctx, FpObject::from_exponents(ctx, {2, 3})));
  CHECK(is_bijective(ctx, tid.z));
}

TEST_CASE("is_distinguished: the reference restriction triangles") {
  Context ctx(2, 6);
  Int p = 2;
  // The k = 3 restriction: Z/p^3 -p-> Z/p^3 -(1,p^2)-> Z/p (+) Z/p^5 -(-p^2,1)^T-> Z/p^3.
  Triangle d3{ctx,
              FpObject::from_exponents(ctx, {3}),
              FpObject::from_exponents(ctx, {3}),
              FpObject::from_exponents(ctx, {1, 5}),
              smor(ctx, {3}, {3}, {p}),
              smor(ctx, {3}, {1, 5}, {1, p * p}),
              smor(ctx, {1, 5}, {3}, {-p * p, 1})};
  CHECK(is_distinguished(d3));

  // Same with h zeroed out: no isomorphism fill-in can exist.
  Triangle broken = d3;
  broken.h = stable_zero(ctx, d3.z, shift_object(ctx, d3.x));
  CHECK_FALSE(is_distinguished(broken));

  // The k = 0 restriction, a direct sum of two distinguished triangles.
  Triangle d0{ctx,
              FpObject::from_exponents(ctx, {1, 5}),
              FpObject::from_exponents(ctx, {2, 4}),
              FpObject::from_exponents(ctx, {1, 5}),
              smor(ctx, {1, 5}, {2, 4}, {p, 0, 0, 1}),
              smor(ctx, {2, 4}, {1, 5}, {1, 0, 0, p}),
              smor(ctx, {1, 5}, {1, 5}, {0, -p * p * p * p, 1, 0})};
  CHECK(is_distinguished(d0));
}

TEST_CASE("triangle_direct_sum reproduces the k = 0 restriction") {
  Context ctx(2, 6);
  Int p = 2;
  Triangle t1{ctx,
              FpObject::from_exponents(ctx, {1}),
              FpObject::from_exponents(ctx, {2}),
              FpObject::from_exponents(ctx, {1}),
              smor(ctx, {1}, {2}, {p}),
              smor(ctx, {2}, {1}, {1}),
              smor(ctx, {1}, {5}, {-p * p * p * p})};
  Triangle t2{ctx,
              FpObject::from_exponents(ctx, {5}),
              FpObject::from_exponents(ctx, {4}),
              FpObject::from_exponents(ctx, {5}),
              smor(ctx, {5}, {4}, {1}),
              smor(ctx, {4}, {5}, {p}),
              smor(ctx, {5}, {1}, {1})};
  Triangle sum = triangle_direct_sum(t1, t2);

  Triangle d0{ctx,
              FpObject::from_exponents(ctx, {1, 5}),
              FpObject::from_exponents(ctx, {2, 4}),
              FpObject::from_exponents(ctx, {1, 5}),
              smor(ctx, {1, 5}, {2, 4}, {p, 0, 0, 1}),
              smor(ctx, {2, 4}, {1, 5}, {1, 0, 0, p}),
              smor(ctx, {1, 5}, {1, 5}, {0, -p * p * p * p, 1, 0})};
  CHECK(triangles_equal(sum, d0));

  // Sum with the zero triangle is the original.
  FpObject zero = FpObject::zero(ctx);
  Triangle tz{ctx,
              zero,
              zero,
              zero,
              stable_zero(ctx, zero, zero),
              stable_zero(ctx, zero, zero),
              stable_zero(ctx, zero, zero)};
  CHECK(triangles_equal(triangle_direct_sum(d0, tz), d0));

  // Sum of two cones has the doubled middle object.
  Triangle c = cone(smor(ctx, {3}, {3}, {p}));
  Triangle cc = triangle_direct_sum(c, c);
  CHECK(cc.z == FpObject::from_exponents(ctx, {1, 1, 5, 5}));
}

TEST_CASE("cone(f) is distinguished for random f") {
  std::mt19937_64 rng(123);
  Context ctx(2, 6);
  for (int iter = 0; iter < 30; ++iter) {
    FpObject x = random_object(ctx, rng, 2);
    FpObject y = random_object(ctx, rng, 2);
    StableMorphism f = random_stable(ctx, x, y, rng);
    CHECK(is_distinguished(cone(f)));
  }
}
