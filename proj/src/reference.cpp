#include "mbc/reference.hpp"

#include <algorithm>

#include "mbc/crastar.hpp"
#include "mbc/permutation.hpp"
#include "mbc/rules.hpp"

namespace mbc::ref {

Allocation cra_exact(const MbcProblem& p) {
  const int n = p.claimant_count();
  std::vector<Rat> sums(static_cast<size_t>(n), Rat(0));
  std::vector<int> order = identity_order(n);
  std::uint64_t count = 0;
  do {
    Allocation x = csp(p, order);
    for (int j = 0; j < n; ++j) sums[static_cast<size_t>(j)] += x[static_cast<size_t>(j)];
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  Rat denom(static_cast<unsigned long>(count));
  for (auto& s : sums) s /= denom;
  return sums;
}

Allocation crastar_exact(const MbcProblem& p) {
  const int m = p.issue_count();
  const int n = p.claimant_count();
  std::vector<Rat> sums(static_cast<size_t>(n), Rat(0));
  std::vector<int> order = identity_order(m);
  std::uint64_t count = 0;
  do {
    // fresh full pass per order; no prefix sharing
    Allocation a = crastar_for_issue_order(p, order);
    for (int j = 0; j < n; ++j) sums[static_cast<size_t>(j)] += a[static_cast<size_t>(j)];
    ++count;
  } while (std::next_permutation(order.begin(), order.end()));
  Rat denom(static_cast<unsigned long>(count));
  for (auto& s : sums) s /= denom;
  return sums;
}

}  // namespace mbc::ref
