#include "mbc/rules.hpp"

#include <algorithm>
#include <cmath>

#include "mbc/permutation.hpp"
#include "mbc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbc {

namespace detail {

void priority_sweep(const MbcProblem& p, std::span<const int> order,
                    std::span<const Rat> claims, std::vector<Rat>& residual,
                    std::vector<Rat>& out) {
  for (int j : order) {
    const auto& issues = p.issues_of(j);
    const Rat* bottleneck = &residual[static_cast<size_t>(issues.front())];
    for (size_t t = 1; t < issues.size(); ++t) {
      const Rat& r = residual[static_cast<size_t>(issues[t])];
      if (r < *bottleneck) bottleneck = &r;
    }
    const Rat& c = claims[static_cast<size_t>(j)];
    Rat take = c < *bottleneck ? c : *bottleneck;
    if (take != 0) {
      for (int i : issues) residual[static_cast<size_t>(i)] -= take;
    }
    out[static_cast<size_t>(j)] = std::move(take);
  }
}

}  // namespace detail

namespace {

void check_order(const MbcProblem& p, const ClaimantOrder& order) {
  std::vector<bool> seen(static_cast<size_t>(p.claimant_count()), false);
  if (order.size() != seen.size()) throw std::invalid_argument("order does not cover all claimants");
  for (int j : order) {
    if (j < 0 || j >= p.claimant_count() || seen[static_cast<size_t>(j)]) {
      throw std::invalid_argument("order is not a permutation of the claimants");
    }
    seen[static_cast<size_t>(j)] = true;
  }
}

// Accumulates csp over a block of lexicographically consecutive orders.
void accumulate_block(const MbcProblem& p, std::uint64_t first, std::uint64_t count,
                      std::vector<Rat>& sums) {
  const int n = p.claimant_count();
  std::vector<int> order = nth_permutation(n, first);
  std::vector<Rat> residual(static_cast<size_t>(p.issue_count()));
  std::vector<Rat> awards(static_cast<size_t>(n));
  for (std::uint64_t k = 0; k < count; ++k) {
    residual = p.estates();
    detail::priority_sweep(p, order, p.claims(), residual, awards);
    for (int j = 0; j < n; ++j) sums[static_cast<size_t>(j)] += awards[static_cast<size_t>(j)];
    std::next_permutation(order.begin(), order.end());
  }
}

std::vector<Rat> enumerate_order_mean(const MbcProblem& p, std::uint64_t total) {
  const int n = p.claimant_count();
  std::vector<Rat> sums(static_cast<size_t>(n), Rat(0));
#ifdef _OPENMP
  const int max_threads = omp_get_max_threads();
#else
  const int max_threads = 1;
#endif
  if (max_threads > 1 && total >= 40320) {
    const std::uint64_t blocks = std::min<std::uint64_t>(static_cast<std::uint64_t>(max_threads) * 8, total);
    const std::uint64_t block_size = (total + blocks - 1) / blocks;
    std::vector<std::vector<Rat>> partial(static_cast<size_t>(blocks),
                                          std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
      const std::uint64_t first = static_cast<std::uint64_t>(b) * block_size;
      if (first >= total) continue;
      const std::uint64_t count = std::min(block_size, total - first);
      accumulate_block(p, first, count, partial[static_cast<size_t>(b)]);
    }
    for (const auto& part : partial) {
      for (int j = 0; j < n; ++j) sums[static_cast<size_t>(j)] += part[static_cast<size_t>(j)];
    }
  } else {
    accumulate_block(p, 0, total, sums);
  }
  Rat denom(static_cast<unsigned long>(total));
  for (auto& s : sums) s /= denom;
  return sums;
}

}  // namespace

Allocation sp_single(const Rat& estate, const std::vector<Rat>& claims,
                     const ClaimantOrder& order) {
  if (estate < 0) throw std::invalid_argument("negative estate");
  Allocation out(claims.size());
  Rat predecessors(0);
  for (int j : order) {
    Rat left = estate - predecessors;
    if (left < 0) left = 0;
    out[static_cast<size_t>(j)] = claims[static_cast<size_t>(j)] < left
                                      ? claims[static_cast<size_t>(j)]
                                      : left;
    predecessors += claims[static_cast<size_t>(j)];
  }
  return out;
}

Allocation ra_single(const Rat& estate, const std::vector<Rat>& claims) {
  const int n = static_cast<int>(claims.size());
  std::vector<Rat> sums(claims.size(), Rat(0));
  std::vector<int> order = identity_order(n);
  std::uint64_t total = 0;
  do {
    Allocation x = sp_single(estate, claims, order);
    for (size_t j = 0; j < claims.size(); ++j) sums[j] += x[j];
    ++total;
  } while (std::next_permutation(order.begin(), order.end()));
  Rat denom(static_cast<unsigned long>(total));
  for (auto& s : sums) s /= denom;
  return sums;
}

Allocation csp(const MbcProblem& p, const ClaimantOrder& order) {
  check_order(p, order);
  std::vector<Rat> residual = p.estates();
  Allocation out(static_cast<size_t>(p.claimant_count()));
  detail::priority_sweep(p, order, p.claims(), residual, out);
  return out;
}

Allocation csp_closed_form(const MbcProblem& p, const ClaimantOrder& order) {
  check_order(p, order);
  std::vector<Rat> charged = p.estates();  // estates minus predecessors' full claims
  Allocation out(static_cast<size_t>(p.claimant_count()));
  for (int j : order) {
    const auto& issues = p.issues_of(j);
    const Rat* lowest = &charged[static_cast<size_t>(issues.front())];
    for (size_t t = 1; t < issues.size(); ++t) {
      const Rat& r = charged[static_cast<size_t>(issues[t])];
      if (r < *lowest) lowest = &r;
    }
    Rat value = *lowest;
    if (value < 0) value = 0;
    if (p.claim(j) < value) value = p.claim(j);
    out[static_cast<size_t>(j)] = std::move(value);
    for (int i : issues) charged[static_cast<size_t>(i)] -= p.claim(j);
  }
  return out;
}

RuleValue cra_exact(const MbcProblem& p, const EnumBudget& budget) {
  const int n = p.claimant_count();
  std::uint64_t total;
  try {
    total = factorial(n);
  } catch (const std::overflow_error&) {
    total = budget.max_orders + 1;
  }
  if (n > 20 || total > budget.max_orders) {
    throw BudgetError("exact evaluation needs " + std::to_string(n) +
                      "! arrival orders, over the budget of " +
                      std::to_string(budget.max_orders) + "; use the sampled mode");
  }
  RuleValue value;
  value.allocation = enumerate_order_mean(p, total);
  if (!is_feasible(p, value.allocation)) {
    throw std::logic_error("exact mean left the feasible set");
  }
  return value;
}

RuleValue cra_sample(const MbcProblem& p, std::uint64_t samples, std::uint64_t seed,
                     SampleMode mode) {
  if (samples == 0) throw std::invalid_argument("sample count must be positive");
  const int n = p.claimant_count();
  std::uint64_t total = n <= 20 ? factorial(n) : ~std::uint64_t{0};
  const bool exhaustive = mode == SampleMode::Exhaustive;
  if (exhaustive && total == ~std::uint64_t{0}) {
    throw BudgetError("exhaustive sampling cannot enumerate more than 20! orders");
  }
  const std::uint64_t effective = exhaustive ? total : samples;

  std::vector<Rat> sums(static_cast<size_t>(n), Rat(0));
  std::vector<Rat> squares(static_cast<size_t>(n), Rat(0));
  if (exhaustive) {
    // Every order exactly once; the mean coincides with cra_exact.
    std::vector<int> order = identity_order(n);
    std::vector<Rat> residual(static_cast<size_t>(p.issue_count()));
    std::vector<Rat> awards(static_cast<size_t>(n));
    do {
      residual = p.estates();
      detail::priority_sweep(p, order, p.claims(), residual, awards);
      for (int j = 0; j < n; ++j) {
        sums[static_cast<size_t>(j)] += awards[static_cast<size_t>(j)];
        squares[static_cast<size_t>(j)] += awards[static_cast<size_t>(j)] * awards[static_cast<size_t>(j)];
      }
    } while (std::next_permutation(order.begin(), order.end()));
  } else {
#ifdef _OPENMP
    const int blocks = std::max(1, omp_get_max_threads() * 8);
#else
    const int blocks = 1;
#endif
    const std::uint64_t block_size = (effective + static_cast<std::uint64_t>(blocks) - 1) /
                                     static_cast<std::uint64_t>(blocks);
    std::vector<std::vector<Rat>> psums(static_cast<size_t>(blocks),
                                        std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    std::vector<std::vector<Rat>> psquares = psums;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int b = 0; b < blocks; ++b) {
      const std::uint64_t first = static_cast<std::uint64_t>(b) * block_size;
      if (first >= effective) continue;
      const std::uint64_t last = std::min(effective, first + block_size);
      std::vector<int> order(static_cast<size_t>(n));
      std::vector<Rat> residual(static_cast<size_t>(p.issue_count()));
      std::vector<Rat> awards(static_cast<size_t>(n));
      for (std::uint64_t k = first; k < last; ++k) {
        Rng rng = Rng::substream(seed, k);
        order = identity_order(n);
        rng.shuffle(order);
        residual = p.estates();
        detail::priority_sweep(p, order, p.claims(), residual, awards);
        for (int j = 0; j < n; ++j) {
          psums[static_cast<size_t>(b)][static_cast<size_t>(j)] += awards[static_cast<size_t>(j)];
          psquares[static_cast<size_t>(b)][static_cast<size_t>(j)] +=
              awards[static_cast<size_t>(j)] * awards[static_cast<size_t>(j)];
        }
      }
    }
    for (int b = 0; b < blocks; ++b) {
      for (int j = 0; j < n; ++j) {
        sums[static_cast<size_t>(j)] += psums[static_cast<size_t>(b)][static_cast<size_t>(j)];
        squares[static_cast<size_t>(j)] += psquares[static_cast<size_t>(b)][static_cast<size_t>(j)];
      }
    }
  }

  RuleValue value;
  value.mode = RuleValue::Mode::Sampled;
  value.samples = effective;
  value.seed = seed;
  Rat denom(static_cast<unsigned long>(effective));
  value.allocation.resize(static_cast<size_t>(n));
  value.half_width.resize(static_cast<size_t>(n), 0.0);
  for (int j = 0; j < n; ++j) {
    value.allocation[static_cast<size_t>(j)] = sums[static_cast<size_t>(j)] / denom;
    if (effective >= 2) {
      Rat var = (squares[static_cast<size_t>(j)] -
                 denom * value.allocation[static_cast<size_t>(j)] *
                     value.allocation[static_cast<size_t>(j)]) /
                Rat(static_cast<unsigned long>(effective - 1));
      value.half_width[static_cast<size_t>(j)] =
          1.96 * std::sqrt(rat_to_double(var) / static_cast<double>(effective));
    }
  }
  // A mean of feasible points stays feasible (the feasible set is convex);
  // verified rather than assumed.
  if (!is_feasible(p, value.allocation)) {
    throw std::logic_error("sampled mean left the feasible set");
  }
  return value;
}

}  // namespace mbc
