#ifndef MBC_PROBLEM_HPP
#define MBC_PROBLEM_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbc/rational.hpp"

namespace mbc {

/// Rejected input: malformed problem data, unknown identifiers, negative
/// amounts, and similar caller errors. The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exact computation was refused because it would enumerate more orders
/// than the configured budget allows. The CLI maps this to exit code 3.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One amount per claimant, indexed like MbcProblem::claimant_ids().
using Allocation = std::vector<Rat>;

/// Problem description as read from a file, before identifier resolution.
struct RawProblem {
  std::vector<std::string> issues;
  std::vector<std::string> claimants;
  std::vector<std::pair<std::string, Rat>> estates;
  std::vector<std::pair<std::string, Rat>> claims;
  std::vector<std::pair<std::string, std::vector<std::string>>> alpha;
};

/// A multi-issue bankruptcy problem with crossed claims: several divisible
/// estates, and claimants who each hold a single claim that draws
/// simultaneously on every issue in their claim set.
///
/// Identifiers are opaque strings; all computation runs on dense indices.
/// Instances are immutable after construction and safe to share across
/// threads.
class MbcProblem {
 public:
  /// Validates and indexes a problem given dense components. `claim_issues`
  /// maps each claimant to the issue indices she claims from.
  static MbcProblem validated(std::vector<std::string> issue_ids,
                              std::vector<std::string> claimant_ids,
                              std::vector<Rat> estates, std::vector<Rat> claims,
                              std::vector<std::vector<int>> claim_issues);

  int issue_count() const { return static_cast<int>(issue_ids_.size()); }
  int claimant_count() const { return static_cast<int>(claimant_ids_.size()); }

  const std::vector<std::string>& issue_ids() const { return issue_ids_; }
  const std::vector<std::string>& claimant_ids() const { return claimant_ids_; }

  const Rat& estate(int issue) const { return estates_[static_cast<size_t>(issue)]; }
  const std::vector<Rat>& estates() const { return estates_; }
  const Rat& claim(int claimant) const { return claims_[static_cast<size_t>(claimant)]; }
  const std::vector<Rat>& claims() const { return claims_; }

  /// Issues claimant j draws from, ascending.
  const std::vector<int>& issues_of(int claimant) const {
    return claim_issues_[static_cast<size_t>(claimant)];
  }
  /// Claimants drawing from issue i, ascending.
  const std::vector<int>& claimants_of(int issue) const {
    return issue_claimants_[static_cast<size_t>(issue)];
  }

  /// True when the total claim on the issue strictly exceeds its estate.
  /// Recorded at validation; subproblem constructors routinely produce
  /// non-binding issues, so this is informational, not enforced.
  bool binding(int issue) const { return binding_[static_cast<size_t>(issue)]; }

  /// Index lookups; return -1 when the identifier is unknown.
  int issue_index(std::string_view id) const;
  int claimant_index(std::string_view id) const;

  bool operator==(const MbcProblem& other) const;

 private:
  MbcProblem() = default;

  std::vector<std::string> issue_ids_;
  std::vector<std::string> claimant_ids_;
  std::vector<Rat> estates_;
  std::vector<Rat> claims_;
  std::vector<std::vector<int>> claim_issues_;
  std::vector<std::vector<int>> issue_claimants_;
  std::vector<bool> binding_;
};

/// Resolves identifiers and validates a raw description.
MbcProblem validate_problem(const RawProblem& raw);

/// Per-issue leftovers e_i minus the amounts drawn from issue i by x.
std::vector<Rat> residuals(const MbcProblem& p, const Allocation& x);

/// True iff 0 <= x_j <= c_j for all claimants and no issue is overdrawn.
bool is_feasible(const MbcProblem& p, const Allocation& x);

struct ParetoVerdict {
  struct Improvement {
    int claimant;
    Rat delta;  // raising x[claimant] by delta stays feasible
  };
  bool efficient = true;
  std::optional<Improvement> witness;  // present iff not efficient
};

/// Checks whether any single claimant could feasibly receive more. A
/// componentwise-dominating feasible allocation exists iff some claimant with
/// slack claim sees strictly positive residuals on all her issues, so the
/// single-coordinate scan is a complete test. Throws std::invalid_argument
/// when x is infeasible.
ParetoVerdict is_pareto_efficient(const MbcProblem& p, const Allocation& x);

/// The subproblem left for `keep` after everyone else departs with their
/// amounts under x: issues restricted to those the kept claimants use,
/// estates reduced by departed awards. keep = all claimants is the identity.
MbcProblem reduced_problem(const MbcProblem& p, const Allocation& x,
                           const std::vector<int>& keep);

/// The subproblem after `leaver` departs with her full claim: her claim is
/// charged against every issue she drew from (clamped at zero), and issues no
/// remaining claimant uses are dropped. `estate_clamped`, when non-null, is
/// set when the clamp fired.
MbcProblem removal_problem(const MbcProblem& p, int leaver,
                           bool* estate_clamped = nullptr);

/// Claims capped by the smallest estate among each claimant's issues.
std::vector<Rat> truncated_claims(const MbcProblem& p);

/// Copy of the problem with a different estate vector (same issues, same
/// claimants, same claims).
MbcProblem with_estates(const MbcProblem& p, std::vector<Rat> estates);

/// Same claim set; same claim set and same claim amount.
bool are_homologous(const MbcProblem& p, int j, int k);
bool are_equal(const MbcProblem& p, int j, int k);

}  // namespace mbc

#endif  // MBC_PROBLEM_HPP
