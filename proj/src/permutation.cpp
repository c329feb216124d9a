#include "mbc/permutation.hpp"

#include <numeric>
#include <stdexcept>

namespace mbc {

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw std::overflow_error("factorial out of 64-bit range");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::vector<int> identity_order(int n) {
  std::vector<int> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  return order;
}

std::vector<int> nth_permutation(int n, std::uint64_t rank) {
  std::vector<int> pool = identity_order(n);
  std::vector<int> out;
  out.reserve(static_cast<size_t>(n));
  std::uint64_t radix = factorial(n);
  for (int k = n; k >= 1; --k) {
    radix /= static_cast<std::uint64_t>(k);
    std::uint64_t digit = rank / radix;
    rank %= radix;
    out.push_back(pool[static_cast<size_t>(digit)]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
  }
  return out;
}

}  // namespace mbc
