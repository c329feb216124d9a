#ifndef MBC_AXIOMS_HPP
#define MBC_AXIOMS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbc/crastar.hpp"
#include "mbc/instance_gen.hpp"
#include "mbc/rules.hpp"

namespace mbc {

enum class Axiom { Peff, Ete, Cons, Pri, Rmon, Pmon, Bal };

std::string_view axiom_name(Axiom axiom);
std::optional<Axiom> axiom_from_name(std::string_view name);

/// A named deterministic mapping from problems to feasible allocations, with
/// enough structure to evaluate derived subproblems (which the consistency
/// and monotonicity checks need).
class RuleUnderTest {
 public:
  enum class Kind { Csp, Cra, Crastar, Table };

  /// Sequential priority with an explicit priority list (claimant ids,
  /// highest priority first). On subproblems the list restricts to the
  /// claimants present; claimants missing from the list follow in input
  /// order.
  static RuleUnderTest csp(std::vector<std::string> priority_ids);
  /// Sequential priority serving claimants in input order.
  static RuleUnderTest csp();
  static RuleUnderTest cra(EnumBudget budget = {});
  static RuleUnderTest crastar(EnumBudget budget = {});
  /// A fixed externally supplied allocation; valid only for the instance it
  /// was written for, so subproblem-based checks reject it.
  static RuleUnderTest table(std::vector<std::pair<std::string, Rat>> amounts);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool supports_subproblems() const { return kind_ != Kind::Table; }
  bool has_order() const { return kind_ == Kind::Csp; }

  Allocation evaluate(const MbcProblem& p) const;
  /// The arrival order the rule uses on this problem (Csp only).
  ClaimantOrder order_for(const MbcProblem& p) const;

 private:
  RuleUnderTest(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
  std::vector<std::string> priority_ids_;
  std::vector<std::pair<std::string, Rat>> table_;
  EnumBudget budget_;
};

/// Verdict for one axiom on one instance. `holds` means holds-on-instance;
/// nothing universal is claimed. A violated report carries enough of the
/// scenario (claimants, compared values, leaver/keep/perturbation) to be
/// re-checked independently with the core operations.
struct AxiomReport {
  Axiom axiom;
  std::string rule;
  bool holds = true;
  std::vector<std::string> claimants;           // offending claimant id(s)
  std::optional<Rat> lhs, rhs;                  // the two compared quantities
  std::optional<Rat> improvement;               // Pareto gain, when relevant
  std::optional<std::string> leaver;            // population scenarios
  std::vector<std::string> keep;                // consistency scenario
  std::vector<Rat> estates_prime;               // resource scenario
  std::optional<std::pair<std::string, std::string>> pair_ids;
  std::vector<std::string> notes;               // e.g. estate clamp fired

  std::string describe() const;
};

/// How the priority comparison treats a later homologous claimant who
/// received nothing. Served: the loss comparison applies only when the later
/// claimant got a positive amount (an exhausted estate is not a priority
/// violation). LiteralLoss: compare losses unconditionally; sequential
/// serving itself fails this form whenever a large early claim hits an
/// exhausted estate ahead of a small late one, so it is kept as a diagnostic.
enum class PriComparison { Served, LiteralLoss };

AxiomReport check_peff(const RuleUnderTest& rule, const MbcProblem& p);
AxiomReport check_ete(const RuleUnderTest& rule, const MbcProblem& p);
AxiomReport check_cons(const RuleUnderTest& rule, const MbcProblem& p,
                       const std::vector<int>& keep);
AxiomReport check_pri(const MbcProblem& p, const Allocation& output,
                      const ClaimantOrder& order,
                      PriComparison comparison = PriComparison::Served,
                      const std::string& rule_name = "allocation");
AxiomReport check_rmon(const RuleUnderTest& rule, const MbcProblem& p,
                       const std::vector<Rat>& estates_prime);
AxiomReport check_pmon(const RuleUnderTest& rule, const MbcProblem& p, int leaver);
AxiomReport check_bal(const RuleUnderTest& rule, const MbcProblem& p, int j, int k);

struct FalsifyOutcome {
  MbcProblem instance;
  AxiomReport report;
  std::uint64_t candidates_tried = 0;
};

/// Searches seeded random instances for a violation of `axiom` by `rule`,
/// then greedily shrinks the hit (drop claimants, halve amounts) while the
/// violation persists. Scenario inputs the axiom needs (keep-sets, leavers,
/// pairs, estate bumps) are enumerated per instance in deterministic order.
/// Returns the minimized counterexample, or nothing if the budget runs out.
/// Deterministic per (rule, axiom, params, seed, budget).
std::optional<FalsifyOutcome> falsify(const RuleUnderTest& rule, Axiom axiom,
                                      const GenParams& params, std::uint64_t seed,
                                      std::uint64_t budget);

}  // namespace mbc

#endif  // MBC_AXIOMS_HPP
