#include "mbc/crastar.hpp"

#include <algorithm>
#include <cmath>

#include "mbc/permutation.hpp"
#include "mbc/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mbc {

namespace {

void retruncate(const MbcProblem& p, CrastarState& state) {
  const int n = p.claimant_count();
  for (int j = 0; j < n; ++j) {
    Rat cap = state.live_estates[static_cast<size_t>(p.issues_of(j).front())];
    for (int i : p.issues_of(j)) {
      const Rat& e = state.live_estates[static_cast<size_t>(i)];
      if (e < cap) cap = e;
    }
    state.truncated[static_cast<size_t>(j)] =
        state.net_claims[static_cast<size_t>(j)] < cap
            ? state.net_claims[static_cast<size_t>(j)]
            : cap;
  }
}

void check_issue(const MbcProblem& p, int issue) {
  if (issue < 0 || issue >= p.issue_count()) throw std::invalid_argument("unknown issue");
}

// Average of the priority sweep over the given arrival orders of a claimant
// group, written into amounts (indexed by claimant, divided by order count).
struct GroupAverager {
  explicit GroupAverager(const MbcProblem& p)
      : residual(static_cast<size_t>(p.issue_count())),
        awards(static_cast<size_t>(p.claimant_count())),
        sums(static_cast<size_t>(p.claimant_count()), Rat(0)) {}

  void add(const MbcProblem& p, const CrastarState& state, std::span<const int> order) {
    residual = state.live_estates;
    detail::priority_sweep(p, order, state.truncated, residual, awards);
    for (int j : order) sums[static_cast<size_t>(j)] += awards[static_cast<size_t>(j)];
    ++count;
  }

  std::vector<Rat> residual;
  std::vector<Rat> awards;
  std::vector<Rat> sums;
  std::uint64_t count = 0;
};

bool group_has_positive_claim(const CrastarState& state, const std::vector<int>& group) {
  for (int j : group) {
    if (state.truncated[static_cast<size_t>(j)] > 0) return true;
  }
  return false;
}

}  // namespace

CrastarState CrastarState::initial(const MbcProblem& p) {
  CrastarState state;
  state.step = 0;
  state.live_estates = p.estates();
  state.net_claims = p.claims();
  state.truncated.resize(static_cast<size_t>(p.claimant_count()));
  retruncate(p, state);
  return state;
}

StepAmounts issue_step(const MbcProblem& p, const CrastarState& state, int issue) {
  check_issue(p, issue);
  StepAmounts result;
  result.participants = p.claimants_of(issue);
  result.amount.assign(static_cast<size_t>(p.claimant_count()), Rat(0));
  if (result.participants.empty()) return result;
  if (!group_has_positive_claim(state, result.participants)) return result;

  GroupAverager avg(p);
  std::vector<int> order = result.participants;
  std::sort(order.begin(), order.end());
  do {
    avg.add(p, state, order);
  } while (std::next_permutation(order.begin(), order.end()));
  Rat denom(static_cast<unsigned long>(avg.count));
  for (int j : result.participants) {
    result.amount[static_cast<size_t>(j)] = avg.sums[static_cast<size_t>(j)] / denom;
  }
  return result;
}

CrastarState apply_update(const MbcProblem& p, const CrastarState& state,
                          const StepAmounts& amounts, int issue) {
  check_issue(p, issue);
  CrastarState next;
  next.step = state.step + 1;
  next.live_estates = state.live_estates;
  // Claims carry forward from their truncated values: what a claimant may
  // still receive later can only shrink, never bounce back above an earlier
  // truncation.
  next.net_claims = state.truncated;
  for (int j : amounts.participants) {
    const Rat& a = amounts.amount[static_cast<size_t>(j)];
    if (a == 0) continue;
    for (int i : p.issues_of(j)) next.live_estates[static_cast<size_t>(i)] -= a;
    next.net_claims[static_cast<size_t>(j)] -= a;
    if (next.net_claims[static_cast<size_t>(j)] < 0) {
      throw std::logic_error("issue step awarded a claimant more than her claim");
    }
  }
  for (const Rat& e : next.live_estates) {
    if (e < 0) throw std::logic_error("issue step overdrew an estate");
  }
  next.truncated.resize(next.net_claims.size());
  retruncate(p, next);
  return next;
}

Allocation crastar_for_issue_order(const MbcProblem& p, const IssueOrder& order) {
  std::vector<bool> seen(static_cast<size_t>(p.issue_count()), false);
  if (order.size() != seen.size()) throw std::invalid_argument("order does not cover all issues");
  for (int i : order) {
    if (i < 0 || i >= p.issue_count() || seen[static_cast<size_t>(i)]) {
      throw std::invalid_argument("order is not a permutation of the issues");
    }
    seen[static_cast<size_t>(i)] = true;
  }
  CrastarState state = CrastarState::initial(p);
  Allocation total(static_cast<size_t>(p.claimant_count()), Rat(0));
  for (int issue : order) {
    StepAmounts amounts = issue_step(p, state, issue);
    bool any = false;
    for (int j : amounts.participants) {
      const Rat& a = amounts.amount[static_cast<size_t>(j)];
      if (a != 0) {
        total[static_cast<size_t>(j)] += a;
        any = true;
      }
    }
    if (any) state = apply_update(p, state, amounts, issue);
    // A step with nothing to hand out leaves the state untouched.
  }
  return total;
}

std::vector<CrastarStepRecord> crastar_trace(const MbcProblem& p, const IssueOrder& order) {
  std::vector<CrastarStepRecord> records;
  CrastarState state = CrastarState::initial(p);
  for (int issue : order) {
    CrastarStepRecord rec;
    rec.issue = issue;
    rec.amounts = issue_step(p, state, issue);
    rec.after = apply_update(p, state, rec.amounts, issue);
    state = rec.after;
    records.push_back(std::move(rec));
  }
  return records;
}

namespace {

// Depth-first walk over issue-order prefixes. Each distinct prefix's state is
// computed once and shared by every order extending it.
void prefix_walk(const MbcProblem& p, const CrastarState& state,
                 std::vector<int>& remaining, std::vector<Rat>& partial,
                 std::vector<Rat>& sums) {
  if (remaining.empty()) {
    for (size_t j = 0; j < sums.size(); ++j) sums[j] += partial[j];
    return;
  }
  for (size_t pick = 0; pick < remaining.size(); ++pick) {
    const int issue = remaining[pick];
    StepAmounts amounts = issue_step(p, state, issue);
    bool any = false;
    for (int j : amounts.participants) {
      if (amounts.amount[static_cast<size_t>(j)] != 0) { any = true; break; }
    }
    std::vector<int> rest;
    rest.reserve(remaining.size() - 1);
    for (size_t t = 0; t < remaining.size(); ++t) {
      if (t != pick) rest.push_back(remaining[t]);
    }
    if (any) {
      CrastarState next = apply_update(p, state, amounts, issue);
      for (int j : amounts.participants) partial[static_cast<size_t>(j)] += amounts.amount[static_cast<size_t>(j)];
      prefix_walk(p, next, rest, partial, sums);
      for (int j : amounts.participants) partial[static_cast<size_t>(j)] -= amounts.amount[static_cast<size_t>(j)];
    } else {
      prefix_walk(p, state, rest, partial, sums);
    }
  }
}

std::uint64_t max_group_orders(const MbcProblem& p) {
  std::uint64_t worst = 1;
  for (int i = 0; i < p.issue_count(); ++i) {
    const int q = static_cast<int>(p.claimants_of(i).size());
    if (q > 20) return ~std::uint64_t{0};
    worst = std::max(worst, factorial(q));
  }
  return worst;
}

Allocation evaluate_issue_order_sampled_inner(const MbcProblem& p, const IssueOrder& order,
                                              std::uint64_t inner_samples,
                                              std::uint64_t seed, std::uint64_t stream) {
  CrastarState state = CrastarState::initial(p);
  Allocation total(static_cast<size_t>(p.claimant_count()), Rat(0));
  int step_no = 0;
  for (int issue : order) {
    const auto& group = p.claimants_of(issue);
    StepAmounts amounts;
    amounts.participants = group;
    amounts.amount.assign(static_cast<size_t>(p.claimant_count()), Rat(0));
    if (!group.empty() && group_has_positive_claim(state, group)) {
      const int q = static_cast<int>(group.size());
      const std::uint64_t orders = q <= 20 ? factorial(q) : ~std::uint64_t{0};
      GroupAverager avg(p);
      if (orders <= inner_samples) {
        std::vector<int> arrival = group;
        do {
          avg.add(p, state, arrival);
        } while (std::next_permutation(arrival.begin(), arrival.end()));
      } else {
        for (std::uint64_t k = 0; k < inner_samples; ++k) {
          Rng rng = Rng::substream(seed, (stream * 1000003ULL + static_cast<std::uint64_t>(step_no)) * 2654435761ULL + k);
          std::vector<int> arrival = group;
          rng.shuffle(arrival);
          avg.add(p, state, arrival);
        }
      }
      Rat denom(static_cast<unsigned long>(avg.count));
      bool any = false;
      for (int j : group) {
        Rat a = avg.sums[static_cast<size_t>(j)] / denom;
        if (a != 0) any = true;
        amounts.amount[static_cast<size_t>(j)] = std::move(a);
      }
      if (any) {
        for (int j : group) total[static_cast<size_t>(j)] += amounts.amount[static_cast<size_t>(j)];
        state = apply_update(p, state, amounts, issue);
      }
    }
    ++step_no;
  }
  return total;
}

}  // namespace

RuleValue crastar_exact(const MbcProblem& p, const EnumBudget& budget) {
  const int m = p.issue_count();
  std::uint64_t outer;
  try {
    outer = factorial(m);
  } catch (const std::overflow_error&) {
    outer = ~std::uint64_t{0};
  }
  const std::uint64_t inner = max_group_orders(p);
  if (outer == ~std::uint64_t{0} || inner == ~std::uint64_t{0} ||
      outer > budget.max_orders / std::max<std::uint64_t>(inner, 1)) {
    throw BudgetError("exact two-level evaluation needs " + std::to_string(m) +
                      "! issue orders with up to " + std::to_string(inner) +
                      " arrival orders each, over the budget of " +
                      std::to_string(budget.max_orders) + "; use the sampled mode");
  }

  const int n = p.claimant_count();
  std::vector<Rat> sums(static_cast<size_t>(n), Rat(0));
  const CrastarState root = CrastarState::initial(p);
#ifdef _OPENMP
  const bool parallel = omp_get_max_threads() > 1 && m >= 3;
#else
  const bool parallel = false;
#endif
  if (parallel) {
    std::vector<std::vector<Rat>> partial(static_cast<size_t>(m),
                                          std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int first = 0; first < m; ++first) {
      std::vector<int> remaining;
      for (int i = 0; i < m; ++i) {
        if (i != first) remaining.push_back(i);
      }
      std::vector<Rat> acc(static_cast<size_t>(n), Rat(0));
      StepAmounts amounts = issue_step(p, root, first);
      bool any = false;
      for (int j : amounts.participants) {
        if (amounts.amount[static_cast<size_t>(j)] != 0) { any = true; break; }
      }
      if (any) {
        CrastarState next = apply_update(p, root, amounts, first);
        for (int j : amounts.participants) acc[static_cast<size_t>(j)] += amounts.amount[static_cast<size_t>(j)];
        prefix_walk(p, next, remaining, acc, partial[static_cast<size_t>(first)]);
      } else {
        prefix_walk(p, root, remaining, acc, partial[static_cast<size_t>(first)]);
      }
    }
    for (const auto& part : partial) {
      for (int j = 0; j < n; ++j) sums[static_cast<size_t>(j)] += part[static_cast<size_t>(j)];
    }
  } else {
    std::vector<int> remaining = identity_order(m);
    std::vector<Rat> acc(static_cast<size_t>(n), Rat(0));
    prefix_walk(p, root, remaining, acc, sums);
  }

  RuleValue value;
  Rat denom(static_cast<unsigned long>(outer));
  value.allocation.resize(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) value.allocation[static_cast<size_t>(j)] = sums[static_cast<size_t>(j)] / denom;
  if (!is_feasible(p, value.allocation)) {
    throw std::logic_error("two-level mean left the feasible set");
  }
  return value;
}

RuleValue crastar_sample(const MbcProblem& p, std::uint64_t outer_samples,
                         std::uint64_t inner_samples, std::uint64_t seed) {
  if (outer_samples == 0 || inner_samples == 0) {
    throw std::invalid_argument("sample counts must be positive");
  }
  const int m = p.issue_count();
  const int n = p.claimant_count();
  const std::uint64_t total = m <= 20 ? factorial(m) : ~std::uint64_t{0};
  const bool exhaustive = total <= outer_samples;
  const std::uint64_t effective = exhaustive ? total : outer_samples;

  std::vector<Rat> sums(static_cast<size_t>(n), Rat(0));
  std::vector<Rat> squares(static_cast<size_t>(n), Rat(0));
#ifdef _OPENMP
  const int blocks = std::max(1, omp_get_max_threads() * 4);
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
    for (std::uint64_t s = first; s < last; ++s) {
      IssueOrder order;
      if (exhaustive) {
        order = nth_permutation(m, s);
      } else {
        Rng rng = Rng::substream(seed ^ 0x5851f42d4c957f2dULL, s);
        order = identity_order(m);
        rng.shuffle(order);
      }
      Allocation a = evaluate_issue_order_sampled_inner(p, order, inner_samples, seed, s);
      for (int j = 0; j < n; ++j) {
        psums[static_cast<size_t>(b)][static_cast<size_t>(j)] += a[static_cast<size_t>(j)];
        psquares[static_cast<size_t>(b)][static_cast<size_t>(j)] += a[static_cast<size_t>(j)] * a[static_cast<size_t>(j)];
      }
    }
  }
  for (int b = 0; b < blocks; ++b) {
    for (int j = 0; j < n; ++j) {
      sums[static_cast<size_t>(j)] += psums[static_cast<size_t>(b)][static_cast<size_t>(j)];
      squares[static_cast<size_t>(j)] += psquares[static_cast<size_t>(b)][static_cast<size_t>(j)];
    }
  }

  RuleValue value;
  value.mode = RuleValue::Mode::Sampled;
  value.samples = effective;
  value.inner_samples = inner_samples;
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
  if (!is_feasible(p, value.allocation)) {
    throw std::logic_error("sampled two-level mean left the feasible set");
  }
  return value;
}

}  // namespace mbc
