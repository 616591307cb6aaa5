#pragma once

#include <cstdint>
#include <vector>

#include "octa/int_matrix.hpp"

namespace octa {

/// Ambient parameters fixing the ring Z/p^m. p prime, m >= 0, p^m <= 2^31.
struct Context {
  Int p = 2;
  int m = 0;

  Context() = default;
  Context(Int prime, int exponent);

  /// p^k for 0 <= k <= m.
  Int pow(int k) const { return pows_[static_cast<size_t>(k)]; }

  bool operator==(const Context& o) const { return p == o.p && m == o.m; }
  bool operator!=(const Context& o) const { return !(*this == o); }

 private:
  std::vector<Int> pows_;
};

/// Global cap for hom-set and element enumerations (default 10^7, overridable
/// via OCTA_MAX_ENUM in the CLI).
std::uint64_t enumeration_cap();
void set_enumeration_cap(std::uint64_t cap);

}  // namespace octa
