#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "octa/errors.hpp"

namespace octa {

using Int = std::int64_t;

/// Marker returned by valuation(0, p).
inline constexpr Int kValuationInfinity = std::numeric_limits<Int>::max();

Int checked_add(Int a, Int b);
Int checked_sub(Int a, Int b);
Int checked_mul(Int a, Int b);
Int checked_neg(Int a);

/// Residue of a in [0, m), m > 0.
Int floor_mod(Int a, Int m);

/// Largest v with p^v | a; kValuationInfinity for a = 0. Sign-independent.
Int valuation(Int a, Int p);

Int gcd_int(Int a, Int b);

/// Dense integer matrix. Morphism convention throughout the project:
/// rows index the source, columns the target, and composition is
/// diagrammatic, (f.g)[r][c] = sum_k f[r][k] * g[k][c] with f applied first.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {
    if (r < 0 || c < 0) throw ContractError("IntMatrix: negative dimension");
  }

  static IntMatrix identity(int n);

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  Int at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const IntMatrix&) const = default;
};

IntMatrix mat_mul(const IntMatrix& f, const IntMatrix& g);
IntMatrix mat_add(const IntMatrix& f, const IntMatrix& g);
IntMatrix mat_sub(const IntMatrix& f, const IntMatrix& g);
IntMatrix mat_neg(const IntMatrix& f);

/// Exact integer determinant (fraction-free Gaussian elimination).
Int determinant(const IntMatrix& m);

std::string to_string(const IntMatrix& m);

}  // namespace octa
