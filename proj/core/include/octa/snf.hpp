#pragma once

#include <optional>
#include <vector>

#include "octa/int_matrix.hpp"

namespace octa {

/// Smith normal form data: U * M * V = D exactly, det(U), det(V) in {+1,-1},
/// D diagonal with nonnegative entries in a divisibility chain.
struct SnfResult {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
};

/// Deterministic Smith normal form. Pivot choice: smallest nonzero magnitude,
/// row-major tiebreak.
SnfResult smith_normal_form(const IntMatrix& m);

/// Inverse of a unimodular integer matrix (via SNF: U M V = I gives M^-1 = V U).
IntMatrix unimodular_inverse(const IntMatrix& m);

/// Solve A * X == B columnwise mod moduli[c] (one positive modulus per column
/// of B). Returns a matrix satisfying the congruence exactly, or nullopt iff
/// no solution exists. Decided via SNF reduction.
std::optional<IntMatrix> solve_matrix_congruence(const IntMatrix& a, const IntMatrix& b,
                                                 const std::vector<Int>& moduli);

}  // namespace octa
