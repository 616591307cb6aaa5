#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "octa/context.hpp"
#include "octa/int_matrix.hpp"

namespace octa {

/// A finite direct sum of cyclic p-groups, stored as a multiplicity vector
/// (mult[i] copies of Z/p^i, 0 <= i <= m). Summand order is canonical:
/// ascending exponent, then ascending copy index.
struct FpObject {
  std::vector<int> mult;  // size m+1

  FpObject() = default;
  explicit FpObject(const Context& ctx) : mult(static_cast<size_t>(ctx.m) + 1, 0) {}

  static FpObject zero(const Context& ctx) { return FpObject(ctx); }
  static FpObject from_exponents(const Context& ctx, const std::vector<int>& exps);

  int summands() const;
  /// Exponent of the k-th summand in canonical order.
  int exponent(int k) const;
  /// Flattened list of summand exponents in canonical order.
  std::vector<int> exponent_list() const;
  /// Canonical index of copy s (0-based) within exponent block i.
  int index_of(int exp, int copy) const;
  bool is_zero_object() const;

  bool operator==(const FpObject&) const = default;
};

std::string to_string(const Context& ctx, const FpObject& x);

/// a_i = 0 for 0 < i < m: finite direct sums of Z/p^m (and zero summands).
bool is_bijective(const Context& ctx, const FpObject& x);

/// Group order as uint64 if it does not exceed cap.
std::optional<std::uint64_t> object_order(const Context& ctx, const FpObject& x,
                                          std::uint64_t cap);

/// Direct sum in canonical form plus the summand index maps of both parts.
struct DirectSum {
  FpObject object;
  std::vector<int> left_index;   // summand k of left lands at left_index[k]
  std::vector<int> right_index;
};
DirectSum direct_sum(const Context& ctx, const FpObject& x, const FpObject& y);

/// A map in E: integer matrix between FpObjects, rows = source summands.
/// Entry (r,c) is stored reduced in [0, p^{f_c}) and satisfies the
/// well-definedness divisibility p^{max(0, f_c - e_r)} | entry.
struct EMorphism {
  Context ctx;
  FpObject src;
  FpObject tgt;
  IntMatrix mat;

  /// Validating constructor: reduces entries, checks divisibility.
  static EMorphism make(const Context& ctx, const FpObject& src, const FpObject& tgt,
                        IntMatrix mat);
  static EMorphism identity(const Context& ctx, const FpObject& x);
  static EMorphism zero(const Context& ctx, const FpObject& src, const FpObject& tgt);

  bool is_zero() const;  // E-level equality with the zero morphism
  bool operator==(const EMorphism&) const = default;
};

EMorphism compose(const EMorphism& f, const EMorphism& g);
EMorphism add(const EMorphism& f, const EMorphism& g);
EMorphism sub(const EMorphism& f, const EMorphism& g);
EMorphism negate(const EMorphism& f);
/// Blockwise direct sum, with canonical summand reordering applied.
EMorphism direct_sum(const EMorphism& f, const EMorphism& g);

/// The finite hom-set E(X, Y), indexable in a fixed odometer order.
/// Size is prod p^{min(e_r, f_c)}; exceeding the cap raises EnumTooLargeError.
class HomSet {
 public:
  HomSet(const Context& ctx, FpObject x, FpObject y, std::uint64_t cap = enumeration_cap());
  std::uint64_t size() const { return size_; }
  EMorphism at(std::uint64_t idx) const;

 private:
  Context ctx_;
  FpObject x_, y_;
  std::vector<Int> entry_mod_;   // per matrix slot: p^{min(e_r, f_c)}
  std::vector<Int> entry_step_;  // per matrix slot: p^{max(0, f_c - e_r)}
  std::uint64_t size_ = 1;
};

/// Elements of X as residue tuples; index decodes odometer-style.
std::vector<Int> element_at(const Context& ctx, const FpObject& x, std::uint64_t idx);
std::vector<Int> apply_morphism(const EMorphism& f, const std::vector<Int>& elem);

struct ExactnessSizes {
  std::uint64_t kernel;
  std::uint64_t image;
};
/// Element-enumeration path; nullopt if |src| exceeds cap.
std::optional<ExactnessSizes> sizes_by_enumeration(const EMorphism& f, std::uint64_t cap);
/// SNF path; exact, no cap.
ExactnessSizes sizes_by_snf(const EMorphism& f);

std::uint64_t kernel_size(const EMorphism& f);
std::uint64_t image_size(const EMorphism& f);
bool is_injective(const EMorphism& f);
bool is_surjective(const EMorphism& f);

/// True iff X ->f Y ->g Z is a (pure) short exact sequence: f.g = 0, f
/// injective, g surjective, |im f| = |ker g|. Runs the SNF path always and
/// cross-checks against element enumeration when the orders are below cap;
/// disagreement raises InternalError.
bool is_exact(const EMorphism& f, const EMorphism& g);

/// The distinguished pure short exact sequence X >-> B ->> X^{+1} with
/// bijective middle term: mono blocks p^{m-i} * I, epi reversed-unit blocks.
struct DistinguishedSes {
  EMorphism mono;
  FpObject middle;
  EMorphism epi;
  FpObject shifted;
};
DistinguishedSes distinguished_ses(const Context& ctx, const FpObject& x);

FpObject shift_object(const Context& ctx, const FpObject& x);

/// Commutative quadrangle: b: A->B, c: A->C, d: B->D, e: C->D with b.d = c.e.
struct Quadrangle {
  EMorphism b, c, d, e;
};

/// True iff the diagonal A ->(b,c) B(+)C ->(d,-e)^T D is exact.
/// Non-commuting input raises ContractError.
bool is_pure_square(const Quadrangle& q);

/// (b, c): A -> B(+)C with canonical summand merge.
EMorphism pair_into_sum(const EMorphism& b, const EMorphism& c);
/// (d; -e): B(+)C -> D (minus on the second block).
EMorphism copair_from_sum(const EMorphism& d, const EMorphism& e);

struct Cokernel {
  FpObject object;
  EMorphism proj;
  // SNF transformation data, kept so that maps induced on the quotient can be
  // computed exactly.
  IntMatrix v;
  IntMatrix v_inv;
  std::vector<int> kept;
};
/// Cokernel of f with canonical quotient object; proj surjective, f.proj = 0.
Cokernel cokernel(const EMorphism& f);

/// Map induced on the quotient by s with f.s = 0; satisfies proj.h = s exactly.
EMorphism induced_from_cokernel(const Cokernel& ck, const EMorphism& s);

/// Solve q.g = r for g: tgt(q) -> tgt(r) at E-level (entrywise congruences
/// with the divisibility constraints substituted away). nullopt if unsolvable.
std::optional<EMorphism> solve_right_factor(const EMorphism& q, const EMorphism& r);

/// Extension along a pure mono into a bijective object: given mono: A >-> C
/// and f: A -> B with B bijective, returns g: C -> B with mono.g = f.
EMorphism extend_along_mono(const EMorphism& mono, const EMorphism& f);

}  // namespace octa
