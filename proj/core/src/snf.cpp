#include "octa/snf.hpp"

#include <algorithm>
#include <cstdlib>

namespace octa {

namespace {

// 128-bit working arithmetic: Smith reduction can grow transformation
// entries far past the input scale before they settle.
using Wide = __int128;

Wide wmul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in SNF");
  return r;
}
Wide wsub(Wide a, Wide b) {
  Wide r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in SNF");
  return r;
}

struct WideMatrix {
  int rows = 0, cols = 0;
  std::vector<Wide> a;
  WideMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  explicit WideMatrix(const IntMatrix& m) : rows(m.rows), cols(m.cols), a(m.a.begin(), m.a.end()) {}
  Wide& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  Wide at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
  static WideMatrix identity(int n) {
    WideMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }
  IntMatrix narrow(const char* what) const {
    IntMatrix m(rows, cols);
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] > std::numeric_limits<Int>::max() || a[i] < std::numeric_limits<Int>::min())
        throw OverflowError(std::string(what) + ": result exceeds the 64-bit range");
      m.a[i] = static_cast<Int>(a[i]);
    }
    return m;
  }
};

struct Worker {
  WideMatrix d, u, v;

  Worker(const IntMatrix& m)
      : d(m), u(WideMatrix::identity(m.rows)), v(WideMatrix::identity(m.cols)) {}

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  // row_i -= q * row_j
  void row_addmul(int i, int j, Wide q) {
    if (q == 0) return;
    for (int c = 0; c < d.cols; ++c) d.at(i, c) = wsub(d.at(i, c), wmul(q, d.at(j, c)));
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = wsub(u.at(i, c), wmul(q, u.at(j, c)));
  }
  // col_i -= q * col_j
  void col_addmul(int i, int j, Wide q) {
    if (q == 0) return;
    for (int r = 0; r < d.rows; ++r) d.at(r, i) = wsub(d.at(r, i), wmul(q, d.at(r, j)));
    for (int r = 0; r < v.rows; ++r) v.at(r, i) = wsub(v.at(r, i), wmul(q, v.at(r, j)));
  }
  void row_negate(int i) {
    for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  }

  // Smallest nonzero |entry| in d[t.., t..], row-major tiebreak.
  bool find_pivot(int t, int& pi, int& pj) const {
    Wide best = 0;
    bool found = false;
    for (int i = t; i < d.rows; ++i)
      for (int j = t; j < d.cols; ++j) {
        Wide x = d.at(i, j);
        if (x == 0) continue;
        Wide ax = x < 0 ? -x : x;
        if (!found || ax < best) {
          found = true;
          best = ax;
          pi = i;
          pj = j;
        }
      }
    return found;
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
  Worker w(m);

  int nmin = std::min(m.rows, m.cols);
  for (int t = 0; t < nmin; ++t) {
    int pi, pj;
    if (!w.find_pivot(t, pi, pj)) break;
    w.row_swap(t, pi);
    w.col_swap(t, pj);
    if (w.d.at(t, t) < 0) w.row_negate(t);

    for (;;) {
      // Least-absolute-remainder quotients keep the Euclid chains short and
      // the transformation entries small.
      auto balanced_quotient = [](Wide x, Wide piv) {
        Wide q = x / piv;
        Wide r = x - q * piv;
        if (2 * r > piv) q += 1;
        if (2 * r < -piv) q -= 1;
        return q;
      };
      bool dirty = false;
      for (int i = t + 1; i < w.d.rows; ++i) {
        Wide x = w.d.at(i, t);
        if (x == 0) continue;
        w.row_addmul(i, t, balanced_quotient(x, w.d.at(t, t)));
        if (w.d.at(i, t) != 0) dirty = true;
      }
      for (int j = t + 1; j < w.d.cols; ++j) {
        Wide x = w.d.at(t, j);
        if (x == 0) continue;
        w.col_addmul(j, t, balanced_quotient(x, w.d.at(t, t)));
        if (w.d.at(t, j) != 0) dirty = true;
      }
      if (!dirty) {
        bool cleared = true;
        for (int i = t + 1; i < w.d.rows && cleared; ++i)
          if (w.d.at(i, t) != 0) cleared = false;
        for (int j = t + 1; j < w.d.cols && cleared; ++j)
          if (w.d.at(t, j) != 0) cleared = false;
        if (cleared) break;
      }
      int qi, qj;
      if (!w.find_pivot(t, qi, qj)) break;
      w.row_swap(t, qi);
      w.col_swap(t, qj);
      if (w.d.at(t, t) < 0) w.row_negate(t);
    }

    // Enforce the divisibility chain: pivot must divide the remaining block.
    Wide piv = w.d.at(t, t);
    if (piv != 0) {
      bool redo = false;
      for (int i = t + 1; i < w.d.rows && !redo; ++i)
        for (int j = t + 1; j < w.d.cols && !redo; ++j)
          if (w.d.at(i, j) % piv != 0) {
            w.row_addmul(t, i, -1);  // row_t += row_i
            redo = true;
          }
      if (redo) {
        --t;
        continue;
      }
    }
  }
  return SnfResult{w.u.narrow("smith_normal_form"), w.d.narrow("smith_normal_form"),
                   w.v.narrow("smith_normal_form")};
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  if (m.rows != m.cols) throw ContractError("unimodular_inverse: not square");
  SnfResult s = smith_normal_form(m);
  for (int i = 0; i < m.rows; ++i)
    if (s.d.at(i, i) != 1) throw ContractError("unimodular_inverse: matrix not unimodular");
  return mat_mul(s.v, s.u);
}

namespace {

// Least nonnegative y with d*y == c (mod mod), or nullopt.
std::optional<Int> solve_scalar(Int d, Int c, Int mod) {
  d = floor_mod(d, mod);
  c = floor_mod(c, mod);
  if (mod == 1) return Int{0};
  Int g = gcd_int(d, mod);
  if (g == 0) return c == 0 ? std::optional<Int>(0) : std::nullopt;
  if (c % g != 0) return std::nullopt;
  // Invert d/g modulo mod/g by extended Euclid.
  Int m2 = mod / g, d2 = (d / g) % m2, c2 = (c / g) % m2;
  Int r0 = m2, r1 = d2, s0 = 0, s1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int s2 = s0 - q * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  // r0 = gcd(d2, m2) = 1, s0 = inverse of d2.
  return floor_mod(checked_mul(floor_mod(s0, m2), c2), m2);
}

}  // namespace

std::optional<IntMatrix> solve_matrix_congruence(const IntMatrix& a, const IntMatrix& b,
                                                 const std::vector<Int>& moduli) {
  if (a.rows != b.rows) throw ContractError("solve_matrix_congruence: row mismatch");
  if (static_cast<int>(moduli.size()) != b.cols)
    throw ContractError("solve_matrix_congruence: one modulus per column required");
  for (Int m : moduli)
    if (m <= 0) throw ContractError("solve_matrix_congruence: moduli must be positive");

  IntMatrix x(a.cols, b.cols);
  // Columns are independent; reduce A mod the column modulus before SNF to
  // keep intermediate entries small.
  for (int c = 0; c < b.cols; ++c) {
    Int mod = moduli[c];
    IntMatrix ar(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i)
      for (int j = 0; j < a.cols; ++j) ar.at(i, j) = floor_mod(a.at(i, j), mod);
    SnfResult s = smith_normal_form(ar);
    // A x = b (mod) <=> D y = U b (mod), x = V y.
    std::vector<Int> ub(a.rows, 0);
    for (int i = 0; i < a.rows; ++i) {
      Int acc = 0;
      for (int k = 0; k < a.rows; ++k)
        acc = floor_mod(checked_add(acc, checked_mul(floor_mod(s.u.at(i, k), mod),
                                                     floor_mod(b.at(k, c), mod))),
                        mod);
      ub[i] = acc;
    }
    std::vector<Int> y(a.cols, 0);
    int nmin = std::min(a.rows, a.cols);
    bool ok = true;
    for (int i = 0; i < a.rows && ok; ++i) {
      Int di = i < nmin ? s.d.at(i, i) : 0;
      if (i < a.cols) {
        auto yi = solve_scalar(di, ub[i], mod);
        if (!yi) {
          ok = false;
          break;
        }
        y[i] = *yi;
      } else if (floor_mod(ub[i], mod) != 0) {
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    for (int r = 0; r < a.cols; ++r) {
      Int acc = 0;
      for (int k = 0; k < a.cols; ++k)
        acc = floor_mod(checked_add(acc, checked_mul(floor_mod(s.v.at(r, k), mod), y[k])), mod);
      x.at(r, c) = acc;
    }
  }

  // The contract is substitution: verify before returning.
  IntMatrix ax = mat_mul(a, x);
  for (int i = 0; i < b.rows; ++i)
    for (int c = 0; c < b.cols; ++c)
      if (floor_mod(checked_sub(ax.at(i, c), b.at(i, c)), moduli[c]) != 0)
        throw InternalError("solve_matrix_congruence: candidate failed substitution check");
  return x;
}

}  // namespace octa
