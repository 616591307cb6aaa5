#include "octa/context.hpp"

#include <atomic>

#include "octa/errors.hpp"

namespace octa {

namespace {

bool is_prime(Int p) {
  if (p < 2) return false;
  for (Int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::atomic<std::uint64_t> g_enum_cap{10'000'000};

}  // namespace

Context::Context(Int prime, int exponent) : p(prime), m(exponent) {
  if (!is_prime(p)) throw ContractError("Context: p must be prime");
  if (m < 0) throw ContractError("Context: m must be >= 0");
  pows_.resize(static_cast<size_t>(m) + 1);
  pows_[0] = 1;
  constexpr Int kCap = Int{1} << 31;
  for (int k = 1; k <= m; ++k) {
    pows_[k] = checked_mul(pows_[k - 1], p);
    if (pows_[k] > kCap) throw ContractError("Context: p^m exceeds the magnitude cap 2^31");
  }
}

std::uint64_t enumeration_cap() { return g_enum_cap.load(); }
void set_enumeration_cap(std::uint64_t cap) { g_enum_cap.store(cap); }

}  // namespace octa
