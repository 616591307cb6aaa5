#include "octa/int_matrix.hpp"

#include <cstdlib>
#include <sstream>

namespace octa {

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in add");
  return r;
}

Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in sub");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in mul");
  return r;
}

Int checked_neg(Int a) {
  if (a == std::numeric_limits<Int>::min()) throw OverflowError("integer overflow in neg");
  return -a;
}

Int floor_mod(Int a, Int m) {
  if (m <= 0) throw ContractError("floor_mod: modulus must be positive");
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

Int valuation(Int a, Int p) {
  if (p < 2) throw ContractError("valuation: p must be >= 2");
  if (a == 0) return kValuationInfinity;
  if (a < 0) a = checked_neg(a);
  Int v = 0;
  while (a % p == 0) {
    a /= p;
    ++v;
  }
  return v;
}

Int gcd_int(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul(const IntMatrix& f, const IntMatrix& g) {
  if (f.cols != g.rows) throw ContractError("mat_mul: inner dimensions differ");
  IntMatrix r(f.rows, g.cols);
  for (int i = 0; i < f.rows; ++i)
    for (int k = 0; k < f.cols; ++k) {
      Int fik = f.at(i, k);
      if (fik == 0) continue;
      for (int j = 0; j < g.cols; ++j)
        r.at(i, j) = checked_add(r.at(i, j), checked_mul(fik, g.at(k, j)));
    }
  return r;
}

IntMatrix mat_add(const IntMatrix& f, const IntMatrix& g) {
  if (f.rows != g.rows || f.cols != g.cols) throw ContractError("mat_add: shape mismatch");
  IntMatrix r(f.rows, f.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = checked_add(f.a[i], g.a[i]);
  return r;
}

IntMatrix mat_sub(const IntMatrix& f, const IntMatrix& g) {
  if (f.rows != g.rows || f.cols != g.cols) throw ContractError("mat_sub: shape mismatch");
  IntMatrix r(f.rows, f.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = checked_sub(f.a[i], g.a[i]);
  return r;
}

IntMatrix mat_neg(const IntMatrix& f) {
  IntMatrix r(f.rows, f.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = checked_neg(f.a[i]);
  return r;
}

// Bareiss algorithm with 128-bit intermediates; divisions are exact.
Int determinant(const IntMatrix& m) {
  if (m.rows != m.cols) throw ContractError("determinant: matrix not square");
  int n = m.rows;
  if (n == 0) return 1;
  using Wide = __int128;
  std::vector<Wide> w(m.a.begin(), m.a.end());
  auto at = [&](int r, int c) -> Wide& { return w[static_cast<size_t>(r) * n + c]; };
  Wide sign = 1;
  Wide prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(at(k, j), at(piv, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Wide num1, num2, num;
        if (__builtin_mul_overflow(at(i, j), at(k, k), &num1) ||
            __builtin_mul_overflow(at(i, k), at(k, j), &num2) ||
            __builtin_sub_overflow(num1, num2, &num))
          throw OverflowError("integer overflow in determinant");
        at(i, j) = num / prev;
      }
    prev = at(k, k);
  }
  Wide det = sign * at(n - 1, n - 1);
  if (det > std::numeric_limits<Int>::max() || det < std::numeric_limits<Int>::min())
    throw OverflowError("determinant exceeds the 64-bit range");
  return static_cast<Int>(det);
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < m.rows; ++i) {
    os << (i ? " [" : "[");
    for (int j = 0; j < m.cols; ++j) os << (j ? "," : "") << m.at(i, j);
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace octa
