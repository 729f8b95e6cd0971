#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "factorlab/algebra.hpp"

namespace factorlab::detail {

inline std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Calls f(args, idx) for every tuple in {0..n-1}^k in row-major order, where
// idx is the tuple's row-major table index.
template <typename F>
void for_each_tuple(std::size_t n, std::size_t k, F&& f) {
  std::vector<Element> args(k, 0);
  const std::size_t total = ipow(n, k);
  for (std::size_t idx = 0; idx < total; ++idx) {
    f(std::span<const Element>(args), idx);
    for (std::size_t j = k; j-- > 0;) {
      if (++args[j] < n) break;
      args[j] = 0;
    }
  }
}

}  // namespace factorlab::detail
