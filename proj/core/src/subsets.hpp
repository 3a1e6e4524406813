#pragma once

// Private helpers for walking fixed-size subsets of a small ground set.

#include <bit>
#include <cstdint>

namespace relgraph::detail {

// Next larger integer with the same popcount (Gosper).
inline std::uint64_t next_combination(std::uint64_t x) {
  const std::uint64_t c = x & (~x + 1);
  const std::uint64_t r = x + c;
  return (((r ^ x) >> 2) / c) | r;
}

// Calls fn(mask) for every k-subset of {0..m-1} in increasing mask order.
// fn returns false to stop early.
template <class Fn>
bool for_each_k_subset(int m, int k, Fn&& fn) {
  if (k < 0 || k > m) return true;
  if (k == 0) return fn(std::uint64_t{0});
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t x = (std::uint64_t{1} << k) - 1; x < limit; x = next_combination(x)) {
    if (!fn(x)) return false;
  }
  return true;
}

// Calls fn(sub) for every subset of `mask` (including 0 and mask).
template <class Fn>
void for_each_submask(std::uint64_t mask, Fn&& fn) {
  std::uint64_t sub = mask;
  for (;;) {
    fn(sub);
    if (sub == 0) break;
    sub = (sub - 1) & mask;
  }
}

}  // namespace relgraph::detail
