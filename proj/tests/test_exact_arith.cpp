#include <doctest.h>

#include <random>

#include "octa/int_matrix.hpp"
#include "octa/snf.hpp"
#include "test_util.hpp"

using namespace octa;
using octa_test::make;

namespace {

void check_snf_identities(const IntMatrix& m) {
  SnfResult s = smith_normal_form(m);
  CHECK(octa_test::triple_product_equals(s.u, m, s.v, s.d));
  CHECK(octa_test::is_unimodular(s.u));
  CHECK(octa_test::is_unimodular(s.v));
  CHECK_NOTHROW(octa_test::check_snf_shape(s, m.rows, m.cols));
}

}  // namespace

TEST_CASE("valuation") {
  CHECK(valuation(12, 2) == 2);
  CHECK(valuation(0, 3) == kValuationInfinity);
  CHECK(valuation(-8, 2) == 3);
  CHECK(valuation(1, 5) == 0);
  CHECK(valuation(125, 5) == 3);
}

TEST_CASE("checked arithmetic overflows loudly") {
  Int big = std::numeric_limits<Int>::max();
  CHECK_THROWS_AS(checked_add(big, 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(big, 2), OverflowError);
  CHECK(checked_add(2, 3) == 5);
  CHECK(checked_mul(-4, 5) == -20);
}

TEST_CASE("smith normal form: identity") {
  SnfResult s = smith_normal_form(IntMatrix::identity(2));
  CHECK(s.d == IntMatrix::identity(2));
  check_snf_identities(IntMatrix::identity(2));
}

TEST_CASE("smith normal form: already in chain form") {
  IntMatrix m = make(2, 2, {2, 0, 0, 8});
  SnfResult s = smith_normal_form(m);
  CHECK(s.d.at(0, 0) == 2);
  CHECK(s.d.at(1, 1) == 8);
  check_snf_identities(m);
}

TEST_CASE("smith normal form: 2x2 against the gcd/determinant oracle") {
  IntMatrix m = make(2, 2, {4, 6, 2, 2});
  // Independent oracle for 2x2: d1 = gcd of all entries, d1*d2 = |det|.
  Int d1 = gcd_int(gcd_int(4, 6), gcd_int(2, 2));
  Int det = determinant(m);
  Int d2 = (det < 0 ? -det : det) / d1;
  SnfResult s = smith_normal_form(m);
  CHECK(s.d.at(0, 0) == d1);
  CHECK(s.d.at(1, 1) == d2);
  CHECK(d1 == 2);
  CHECK(d2 == 2);
  check_snf_identities(m);
}

TEST_CASE("smith normal form: deterministic for a fixed input") {
  IntMatrix m = make(3, 2, {6, 4, 2, 8, 10, 2});
  SnfResult a = smith_normal_form(m);
  SnfResult b = smith_normal_form(m);
  CHECK(a.u == b.u);
  CHECK(a.d == b.d);
  CHECK(a.v == b.v);
}

TEST_CASE("smith normal form: random identities") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<Int> entry(-20, 20);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int iter = 0; iter < 300; ++iter) {
    IntMatrix m(dim(rng), dim(rng));
    for (Int& v : m.a) v = entry(rng);
    check_snf_identities(m);
  }
}

TEST_CASE("solve_matrix_congruence: scalar examples") {
  // 2x == 4 (mod 8): any valid solution accepted, substitution is the contract.
  auto x = solve_matrix_congruence(make(1, 1, {2}), make(1, 1, {4}), {8});
  REQUIRE(x.has_value());
  CHECK(floor_mod(2 * x->at(0, 0) - 4, 8) == 0);

  // 2x == 1 (mod 4): parity obstruction.
  CHECK_FALSE(solve_matrix_congruence(make(1, 1, {2}), make(1, 1, {1}), {4}).has_value());

  // 8x == 4 (mod 64): unsolvable; cross-checked by exhaustive scan.
  bool any = false;
  for (Int t = 0; t < 64; ++t)
    if (floor_mod(8 * t - 4, 64) == 0) any = true;
  CHECK_FALSE(any);
  CHECK_FALSE(solve_matrix_congruence(make(1, 1, {8}), make(1, 1, {4}), {64}).has_value());
}

TEST_CASE("solve_matrix_congruence: agrees with exhaustive search") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<Int> entry(-9, 9);
  std::uniform_int_distribution<Int> mod_pick(1, 30);
  for (int iter = 0; iter < 200; ++iter) {
    int rows = 1 + static_cast<int>(rng() % 2);
    int cols = 1 + static_cast<int>(rng() % 2);
    IntMatrix a(rows, cols);
    for (Int& v : a.a) v = entry(rng);
    IntMatrix b(rows, 1);
    for (Int& v : b.a) v = entry(rng);
    Int mod = mod_pick(rng);

    auto got = solve_matrix_congruence(a, b, {mod});

    // Exhaustive scan over all candidate X (moduli products below 10^6 here).
    bool exists = false;
    std::vector<Int> x(static_cast<size_t>(cols), 0);
    std::uint64_t total = 1;
    for (int i = 0; i < cols; ++i) total *= static_cast<std::uint64_t>(mod);
    for (std::uint64_t code = 0; code < total && !exists; ++code) {
      std::uint64_t rest = code;
      for (int i = 0; i < cols; ++i) {
        x[static_cast<size_t>(i)] = static_cast<Int>(rest % static_cast<std::uint64_t>(mod));
        rest /= static_cast<std::uint64_t>(mod);
      }
      bool ok = true;
      for (int r = 0; r < rows && ok; ++r) {
        Int acc = 0;
        for (int c = 0; c < cols; ++c) acc += a.at(r, c) * x[static_cast<size_t>(c)];
        ok = floor_mod(acc - b.at(r, 0), mod) == 0;
      }
      exists = ok;
    }
    CHECK(got.has_value() == exists);
  }
}

TEST_CASE("unimodular_inverse") {
  IntMatrix m = make(2, 2, {1, 1, 0, 1});
  IntMatrix inv = unimodular_inverse(m);
  CHECK(mat_mul(m, inv) == IntMatrix::identity(2));
  CHECK(mat_mul(inv, m) == IntMatrix::identity(2));
  CHECK_THROWS_AS(unimodular_inverse(make(2, 2, {2, 0, 0, 1})), ContractError);
}
