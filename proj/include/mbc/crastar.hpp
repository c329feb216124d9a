#ifndef MBC_CRASTAR_HPP
#define MBC_CRASTAR_HPP

#include <cstdint>
#include <vector>

#include "mbc/rules.hpp"

namespace mbc {

/// Processing order over the issues: position -> issue index.
using IssueOrder = std::vector<int>;

/// Live state of the two-level rule between issue steps: remaining estates,
/// claims net of what each claimant already received, and those claims
/// truncated by the smallest remaining estate each claimant can still reach.
struct CrastarState {
  int step = 0;
  std::vector<Rat> live_estates;
  std::vector<Rat> net_claims;
  std::vector<Rat> truncated;  // what each claimant can still be awarded

  static CrastarState initial(const MbcProblem& p);
};

/// Per-issue amounts: the claimants drawing from the processed issue and the
/// average award each of them receives over all arrival orders of that group.
struct StepAmounts {
  std::vector<int> participants;       // ascending claimant indices
  std::vector<Rat> amount;             // indexed by claimant; zero elsewhere
};

/// Runs the single-issue stage: averages the priority sweep over every
/// arrival order of the issue's claimants, using truncated claims and all
/// live estates (a claimant is limited by every issue she draws from, not
/// just the one being processed). Returns zero amounts when nobody with a
/// positive truncated claim draws from the issue.
StepAmounts issue_step(const MbcProblem& p, const CrastarState& state, int issue);

/// Charges the step's amounts against every estate the recipients draw from,
/// nets them off the recipients' claims, and re-truncates all claims against
/// the updated estates. Throws std::logic_error if anything goes negative,
/// which would indicate a bug in the step computation.
CrastarState apply_update(const MbcProblem& p, const CrastarState& state,
                          const StepAmounts& amounts, int issue);

/// Full pass for one issue order: step and update issue by issue, summing
/// each claimant's per-step awards. The result is feasible for the original
/// problem.
Allocation crastar_for_issue_order(const MbcProblem& p, const IssueOrder& order);

struct CrastarStepRecord {
  int issue;
  StepAmounts amounts;
  CrastarState after;
};

/// Same pass, but recording every intermediate state for inspection.
std::vector<CrastarStepRecord> crastar_trace(const MbcProblem& p, const IssueOrder& order);

/// Two-level constrained random arrival rule: the exact average of
/// crastar_for_issue_order over all m! issue orders. Orders sharing a prefix
/// share the prefix's computed states (they are identical by construction),
/// so the enumeration runs as a depth-first walk over the prefix tree;
/// subtrees are distributed across OpenMP workers and combined exactly.
RuleValue crastar_exact(const MbcProblem& p, const EnumBudget& budget = {});

/// Seeded sampling estimate. Issue orders are sampled with replacement
/// (`outer_samples` draws; exhaustive enumeration once outer_samples >= m!),
/// and any per-issue stage whose group factorial exceeds `inner_samples`
/// is itself sampled. Deterministic per (problem, counts, seed).
RuleValue crastar_sample(const MbcProblem& p, std::uint64_t outer_samples,
                         std::uint64_t inner_samples, std::uint64_t seed);

}  // namespace mbc

#endif  // MBC_CRASTAR_HPP
