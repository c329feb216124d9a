#ifndef MBC_RULES_HPP
#define MBC_RULES_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "mbc/problem.hpp"

namespace mbc {

/// Arrival order: position -> claimant index. Must be a permutation of the
/// problem's claimants.
using ClaimantOrder = std::vector<int>;

/// Cap on how many arrival orders an exact evaluation may enumerate.
/// 10! by default, which keeps exact runs at desk scale; anything larger is
/// refused with BudgetError and should go through the sampled evaluators.
struct EnumBudget {
  std::uint64_t max_orders = 3'628'800;
};

/// A rule evaluation: the allocation plus, for sampled runs, the sampling
/// parameters and a 95% normal-approximation half-width per claimant.
struct RuleValue {
  enum class Mode { Exact, Sampled };
  Allocation allocation;
  Mode mode = Mode::Exact;
  std::uint64_t samples = 0;        // effective draws (sampled mode)
  std::uint64_t inner_samples = 0;  // per-issue draw budget (two-level rule)
  std::uint64_t seed = 0;
  std::vector<double> half_width;
};

namespace detail {

/// Serves claimants in `order`, giving each the smallest live residual among
/// her issues (capped by her claim) and drawing that amount down from every
/// issue she claims. `residual` must hold the live estates on entry and is
/// consumed; amounts are written to `out` for the visited claimants only.
///
/// This sweep is the shared kernel behind the priority rules: estates are
/// reduced by amounts actually received, so later claimants see what is
/// genuinely left rather than what predecessors were nominally owed.
void priority_sweep(const MbcProblem& p, std::span<const int> order,
                    std::span<const Rat> claims, std::vector<Rat>& residual,
                    std::vector<Rat>& out);

}  // namespace detail

/// Single-issue sequential priority rule: each claimant receives
/// min(claim, estate left by her predecessors' full claims).
Allocation sp_single(const Rat& estate, const std::vector<Rat>& claims,
                     const ClaimantOrder& order);

/// Single-issue random arrival rule: the average of sp_single over all
/// arrival orders. Enumerates n! orders; intended for small n.
Allocation ra_single(const Rat& estate, const std::vector<Rat>& claims);

/// Constrained sequential priority rule for the given arrival order.
/// The output is feasible and Pareto efficient.
Allocation csp(const MbcProblem& p, const ClaimantOrder& order);

/// Diagnostic variant that charges each predecessor's full claim against the
/// estates instead of the amount actually received. Kept to quantify how far
/// the nominal-claim accounting drifts from csp(); it can exceed feasibility
/// bounds and is not a rule.
Allocation csp_closed_form(const MbcProblem& p, const ClaimantOrder& order);

/// Constrained random arrival rule: exact mean of csp over all n! orders.
/// Enumeration is partitioned across OpenMP workers; sums are exact
/// rationals, so the result is bit-identical however the work is split.
RuleValue cra_exact(const MbcProblem& p, const EnumBudget& budget = {});

/// How a sampled evaluation draws arrival orders. WithReplacement is the
/// estimator proper; Exhaustive walks every order exactly once (the sample
/// count is clamped to n!), which must reproduce the exact rule and pins the
/// estimator's unbiasedness in tests.
enum class SampleMode { WithReplacement, Exhaustive };

/// Seeded Monte Carlo estimate of the constrained random arrival rule.
/// Orders are drawn with replacement, one derived generator per sample, so
/// identical (problem, samples, seed) give identical output regardless of
/// thread count.
RuleValue cra_sample(const MbcProblem& p, std::uint64_t samples, std::uint64_t seed,
                     SampleMode mode = SampleMode::WithReplacement);

}  // namespace mbc

#endif  // MBC_RULES_HPP
