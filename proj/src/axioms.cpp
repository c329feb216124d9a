#include "mbc/axioms.hpp"

#include <algorithm>
#include <sstream>

#include "mbc/rng.hpp"

namespace mbc {

namespace {

constexpr std::string_view kAxiomNames[] = {"PEFF", "ETE", "CONS", "PRI",
                                            "R-MON", "P-MON", "BAL"};

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (size_t k = 0; k < ids.size(); ++k) {
    if (k) out += ",";
    out += ids[k];
  }
  return out;
}

}  // namespace

std::string_view axiom_name(Axiom axiom) {
  return kAxiomNames[static_cast<size_t>(axiom)];
}

std::optional<Axiom> axiom_from_name(std::string_view name) {
  std::string lowered(name);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  lowered.erase(std::remove(lowered.begin(), lowered.end(), '-'), lowered.end());
  if (lowered == "peff") return Axiom::Peff;
  if (lowered == "ete") return Axiom::Ete;
  if (lowered == "cons") return Axiom::Cons;
  if (lowered == "pri") return Axiom::Pri;
  if (lowered == "rmon") return Axiom::Rmon;
  if (lowered == "pmon") return Axiom::Pmon;
  if (lowered == "bal") return Axiom::Bal;
  return std::nullopt;
}

RuleUnderTest RuleUnderTest::csp(std::vector<std::string> priority_ids) {
  RuleUnderTest rule(Kind::Csp, "csp:" + join_ids(priority_ids));
  rule.priority_ids_ = std::move(priority_ids);
  return rule;
}

RuleUnderTest RuleUnderTest::csp() { return RuleUnderTest(Kind::Csp, "csp"); }

RuleUnderTest RuleUnderTest::cra(EnumBudget budget) {
  RuleUnderTest rule(Kind::Cra, "cra");
  rule.budget_ = budget;
  return rule;
}

RuleUnderTest RuleUnderTest::crastar(EnumBudget budget) {
  RuleUnderTest rule(Kind::Crastar, "crastar");
  rule.budget_ = budget;
  return rule;
}

RuleUnderTest RuleUnderTest::table(std::vector<std::pair<std::string, Rat>> amounts) {
  RuleUnderTest rule(Kind::Table, "table");
  rule.table_ = std::move(amounts);
  return rule;
}

ClaimantOrder RuleUnderTest::order_for(const MbcProblem& p) const {
  if (kind_ != Kind::Csp) throw std::invalid_argument("rule has no arrival order");
  ClaimantOrder order;
  std::vector<bool> placed(static_cast<size_t>(p.claimant_count()), false);
  for (const auto& id : priority_ids_) {
    int j = p.claimant_index(id);
    if (j >= 0 && !placed[static_cast<size_t>(j)]) {
      order.push_back(j);
      placed[static_cast<size_t>(j)] = true;
    }
  }
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (!placed[static_cast<size_t>(j)]) order.push_back(j);
  }
  return order;
}

Allocation RuleUnderTest::evaluate(const MbcProblem& p) const {
  switch (kind_) {
    case Kind::Csp:
      return mbc::csp(p, order_for(p));
    case Kind::Cra:
      return cra_exact(p, budget_).allocation;
    case Kind::Crastar:
      return crastar_exact(p, budget_).allocation;
    case Kind::Table: {
      Allocation x(static_cast<size_t>(p.claimant_count()), Rat(0));
      std::vector<bool> found(x.size(), false);
      for (const auto& [id, amount] : table_) {
        int j = p.claimant_index(id);
        if (j < 0) throw std::invalid_argument("table allocation names unknown claimant '" + id + "'");
        x[static_cast<size_t>(j)] = amount;
        found[static_cast<size_t>(j)] = true;
      }
      for (size_t j = 0; j < found.size(); ++j) {
        if (!found[j]) {
          throw std::invalid_argument("table allocation misses claimant '" + p.claimant_ids()[j] + "'");
        }
      }
      if (!is_feasible(p, x)) throw std::invalid_argument("table allocation is not feasible");
      return x;
    }
  }
  throw std::logic_error("unreachable");
}

std::string AxiomReport::describe() const {
  std::ostringstream out;
  out << axiom_name(axiom) << (holds ? " holds" : " violated") << " for " << rule;
  if (leaver) out << " (leaver " << *leaver << ")";
  if (!keep.empty()) out << " (keep {" << join_ids(keep) << "})";
  if (pair_ids) out << " (pair " << pair_ids->first << "," << pair_ids->second << ")";
  if (!holds) {
    out << ": ";
    switch (axiom) {
      case Axiom::Peff:
        out << "claimant " << claimants.front() << " can gain " << format_rational(*improvement);
        break;
      case Axiom::Ete:
        out << "equal claimants " << claimants[0] << " and " << claimants[1] << " receive "
            << format_rational(*lhs) << " vs " << format_rational(*rhs);
        break;
      case Axiom::Cons:
        out << "claimant " << claimants.front() << " gets " << format_rational(*rhs)
            << " in the reduced problem vs " << format_rational(*lhs);
        break;
      case Axiom::Pri:
        out << "claimant " << claimants[0] << " (earlier) loses " << format_rational(*lhs)
            << " but " << claimants[1] << " loses " << format_rational(*rhs);
        break;
      case Axiom::Rmon:
        out << "claimant " << claimants.front() << " drops from " << format_rational(*lhs)
            << " to " << format_rational(*rhs) << " when estates rise";
        break;
      case Axiom::Pmon:
        out << "claimant " << claimants.front() << " rises from " << format_rational(*lhs)
            << " to " << format_rational(*rhs) << " after the leaver departs";
        break;
      case Axiom::Bal:
        out << "impacts differ: " << format_rational(*lhs) << " vs " << format_rational(*rhs);
        break;
    }
  }
  for (const auto& note : notes) out << " [" << note << "]";
  return out.str();
}

AxiomReport check_peff(const RuleUnderTest& rule, const MbcProblem& p) {
  AxiomReport report{.axiom = Axiom::Peff, .rule = rule.name()};
  ParetoVerdict verdict = is_pareto_efficient(p, rule.evaluate(p));
  if (!verdict.efficient) {
    report.holds = false;
    report.claimants = {p.claimant_ids()[static_cast<size_t>(verdict.witness->claimant)]};
    report.improvement = verdict.witness->delta;
  }
  return report;
}

AxiomReport check_ete(const RuleUnderTest& rule, const MbcProblem& p) {
  AxiomReport report{.axiom = Axiom::Ete, .rule = rule.name()};
  Allocation x = rule.evaluate(p);
  for (int j = 0; j < p.claimant_count(); ++j) {
    for (int k = j + 1; k < p.claimant_count(); ++k) {
      if (!are_equal(p, j, k)) continue;
      if (x[static_cast<size_t>(j)] != x[static_cast<size_t>(k)]) {
        report.holds = false;
        report.claimants = {p.claimant_ids()[static_cast<size_t>(j)],
                            p.claimant_ids()[static_cast<size_t>(k)]};
        report.lhs = x[static_cast<size_t>(j)];
        report.rhs = x[static_cast<size_t>(k)];
        return report;
      }
    }
  }
  return report;
}

AxiomReport check_cons(const RuleUnderTest& rule, const MbcProblem& p,
                       const std::vector<int>& keep) {
  if (!rule.supports_subproblems()) {
    throw std::invalid_argument("rule cannot be evaluated on subproblems");
  }
  AxiomReport report{.axiom = Axiom::Cons, .rule = rule.name()};
  for (int j : keep) report.keep.push_back(p.claimant_ids()[static_cast<size_t>(j)]);
  Allocation x = rule.evaluate(p);
  MbcProblem reduced = reduced_problem(p, x, keep);
  Allocation y = rule.evaluate(reduced);
  for (int rj = 0; rj < reduced.claimant_count(); ++rj) {
    const std::string& id = reduced.claimant_ids()[static_cast<size_t>(rj)];
    int j = p.claimant_index(id);
    if (y[static_cast<size_t>(rj)] != x[static_cast<size_t>(j)]) {
      report.holds = false;
      report.claimants = {id};
      report.lhs = x[static_cast<size_t>(j)];
      report.rhs = y[static_cast<size_t>(rj)];
      return report;
    }
  }
  return report;
}

AxiomReport check_pri(const MbcProblem& p, const Allocation& output,
                      const ClaimantOrder& order, PriComparison comparison,
                      const std::string& rule_name) {
  if (!is_feasible(p, output)) {
    throw std::invalid_argument("priority check requires a feasible allocation");
  }
  AxiomReport report{.axiom = Axiom::Pri, .rule = rule_name};
  std::vector<int> position(order.size());
  for (size_t pos = 0; pos < order.size(); ++pos) {
    position[static_cast<size_t>(order[pos])] = static_cast<int>(pos);
  }
  for (int a = 0; a < p.claimant_count(); ++a) {
    for (int b = a + 1; b < p.claimant_count(); ++b) {
      if (!are_homologous(p, a, b)) continue;
      int j = a, k = b;  // j earlier in the order
      if (position[static_cast<size_t>(b)] < position[static_cast<size_t>(a)]) std::swap(j, k);
      if (comparison == PriComparison::Served && output[static_cast<size_t>(k)] == 0) continue;
      Rat loss_j = p.claim(j) - output[static_cast<size_t>(j)];
      Rat loss_k = p.claim(k) - output[static_cast<size_t>(k)];
      if (loss_j > loss_k) {
        report.holds = false;
        report.claimants = {p.claimant_ids()[static_cast<size_t>(j)],
                            p.claimant_ids()[static_cast<size_t>(k)]};
        report.lhs = loss_j;
        report.rhs = loss_k;
        return report;
      }
    }
  }
  return report;
}

AxiomReport check_rmon(const RuleUnderTest& rule, const MbcProblem& p,
                       const std::vector<Rat>& estates_prime) {
  if (estates_prime.size() != static_cast<size_t>(p.issue_count())) {
    throw std::invalid_argument("estate vector does not index the problem's issues");
  }
  for (int i = 0; i < p.issue_count(); ++i) {
    if (estates_prime[static_cast<size_t>(i)] < p.estate(i)) {
      throw std::invalid_argument("estates must rise componentwise");
    }
  }
  AxiomReport report{.axiom = Axiom::Rmon, .rule = rule.name()};
  report.estates_prime = estates_prime;
  Allocation before = rule.evaluate(p);
  Allocation after = rule.evaluate(with_estates(p, estates_prime));
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (after[static_cast<size_t>(j)] < before[static_cast<size_t>(j)]) {
      report.holds = false;
      report.claimants = {p.claimant_ids()[static_cast<size_t>(j)]};
      report.lhs = before[static_cast<size_t>(j)];
      report.rhs = after[static_cast<size_t>(j)];
      return report;
    }
  }
  return report;
}

AxiomReport check_pmon(const RuleUnderTest& rule, const MbcProblem& p, int leaver) {
  if (!rule.supports_subproblems()) {
    throw std::invalid_argument("rule cannot be evaluated on subproblems");
  }
  AxiomReport report{.axiom = Axiom::Pmon, .rule = rule.name()};
  report.leaver = p.claimant_ids()[static_cast<size_t>(leaver)];
  Allocation x = rule.evaluate(p);
  bool clamped = false;
  MbcProblem rest = removal_problem(p, leaver, &clamped);
  if (clamped) report.notes.push_back("estate clamped at zero for the leaver's claim");
  Allocation y = rule.evaluate(rest);
  for (int rk = 0; rk < rest.claimant_count(); ++rk) {
    const std::string& id = rest.claimant_ids()[static_cast<size_t>(rk)];
    int k = p.claimant_index(id);
    if (y[static_cast<size_t>(rk)] > x[static_cast<size_t>(k)]) {
      report.holds = false;
      report.claimants = {id};
      report.lhs = x[static_cast<size_t>(k)];
      report.rhs = y[static_cast<size_t>(rk)];
      return report;
    }
  }
  return report;
}

AxiomReport check_bal(const RuleUnderTest& rule, const MbcProblem& p, int j, int k) {
  if (!rule.supports_subproblems()) {
    throw std::invalid_argument("rule cannot be evaluated on subproblems");
  }
  if (j == k) throw std::invalid_argument("balanced impact needs two distinct claimants");
  AxiomReport report{.axiom = Axiom::Bal, .rule = rule.name()};
  report.pair_ids = {p.claimant_ids()[static_cast<size_t>(j)],
                     p.claimant_ids()[static_cast<size_t>(k)]};
  Allocation x = rule.evaluate(p);
  bool clamped_k = false, clamped_j = false;
  MbcProblem without_k = removal_problem(p, k, &clamped_k);
  MbcProblem without_j = removal_problem(p, j, &clamped_j);
  if (clamped_k || clamped_j) report.notes.push_back("estate clamped at zero for a removed claim");
  int j_in = without_k.claimant_index(p.claimant_ids()[static_cast<size_t>(j)]);
  int k_in = without_j.claimant_index(p.claimant_ids()[static_cast<size_t>(k)]);
  Rat impact_on_j = x[static_cast<size_t>(j)] -
                    rule.evaluate(without_k)[static_cast<size_t>(j_in)];
  Rat impact_on_k = x[static_cast<size_t>(k)] -
                    rule.evaluate(without_j)[static_cast<size_t>(k_in)];
  report.lhs = impact_on_j;
  report.rhs = impact_on_k;
  if (impact_on_j != impact_on_k) {
    report.holds = false;
    report.claimants = {p.claimant_ids()[static_cast<size_t>(j)],
                        p.claimant_ids()[static_cast<size_t>(k)]};
  }
  return report;
}

namespace {

// Plain deletion of a claimant (estates untouched), used by shrinking.
// Issues left with no claimant are dropped. Returns nothing if the deletion
// cannot produce a valid problem.
std::optional<MbcProblem> drop_claimant(const MbcProblem& p, int gone) {
  if (p.claimant_count() < 2) return std::nullopt;
  std::vector<int> issue_map(static_cast<size_t>(p.issue_count()), -1);
  std::vector<std::string> issue_ids;
  std::vector<Rat> estates;
  for (int i = 0; i < p.issue_count(); ++i) {
    bool used = false;
    for (int j : p.claimants_of(i)) {
      if (j != gone) { used = true; break; }
    }
    if (!used) continue;
    issue_map[static_cast<size_t>(i)] = static_cast<int>(issue_ids.size());
    issue_ids.push_back(p.issue_ids()[static_cast<size_t>(i)]);
    estates.push_back(p.estate(i));
  }
  if (issue_ids.empty()) return std::nullopt;
  std::vector<std::string> claimant_ids;
  std::vector<Rat> claims;
  std::vector<std::vector<int>> claim_issues;
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (j == gone) continue;
    claimant_ids.push_back(p.claimant_ids()[static_cast<size_t>(j)]);
    claims.push_back(p.claim(j));
    std::vector<int> issues;
    for (int i : p.issues_of(j)) issues.push_back(issue_map[static_cast<size_t>(i)]);
    claim_issues.push_back(std::move(issues));
  }
  return MbcProblem::validated(std::move(issue_ids), std::move(claimant_ids),
                               std::move(estates), std::move(claims),
                               std::move(claim_issues));
}

MbcProblem with_claim(const MbcProblem& p, int j, Rat value) {
  std::vector<Rat> claims = p.claims();
  claims[static_cast<size_t>(j)] = std::move(value);
  std::vector<std::vector<int>> claim_issues;
  for (int t = 0; t < p.claimant_count(); ++t) claim_issues.push_back(p.issues_of(t));
  return MbcProblem::validated(p.issue_ids(), p.claimant_ids(), p.estates(),
                               std::move(claims), std::move(claim_issues));
}

// Ensures an equal pair exists so equal-treatment checks are non-vacuous.
MbcProblem force_equal_pair(const MbcProblem& p) {
  if (p.claimant_count() < 2) return p;
  for (int j = 0; j < p.claimant_count(); ++j) {
    for (int k = j + 1; k < p.claimant_count(); ++k) {
      if (are_equal(p, j, k)) return p;
    }
  }
  std::vector<Rat> claims = p.claims();
  claims[1] = claims[0];
  std::vector<std::vector<int>> claim_issues;
  for (int t = 0; t < p.claimant_count(); ++t) claim_issues.push_back(p.issues_of(t));
  claim_issues[1] = claim_issues[0];
  // Re-cover issues only claimant 1 used, keeping the twins homologous.
  std::vector<bool> covered(static_cast<size_t>(p.issue_count()), false);
  for (const auto& issues : claim_issues) {
    for (int i : issues) covered[static_cast<size_t>(i)] = true;
  }
  for (int i = 0; i < p.issue_count(); ++i) {
    if (!covered[static_cast<size_t>(i)]) {
      claim_issues[0].push_back(i);
      claim_issues[1].push_back(i);
    }
  }
  return MbcProblem::validated(p.issue_ids(), p.claimant_ids(), p.estates(),
                               std::move(claims), std::move(claim_issues));
}

// Runs the axiom's scenario space on one instance in deterministic order and
// returns the first violation.
std::optional<AxiomReport> find_violation(const RuleUnderTest& rule, Axiom axiom,
                                          const MbcProblem& p) {
  const int n = p.claimant_count();
  switch (axiom) {
    case Axiom::Peff: {
      AxiomReport r = check_peff(rule, p);
      if (!r.holds) return r;
      return std::nullopt;
    }
    case Axiom::Ete: {
      AxiomReport r = check_ete(rule, p);
      if (!r.holds) return r;
      return std::nullopt;
    }
    case Axiom::Cons: {
      if (n > 16) throw std::invalid_argument("consistency scan limited to 16 claimants");
      for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
        std::vector<int> keep;
        for (int j = 0; j < n; ++j) {
          if (mask & (1u << j)) keep.push_back(j);
        }
        AxiomReport r = check_cons(rule, p, keep);
        if (!r.holds) return r;
      }
      return std::nullopt;
    }
    case Axiom::Pri: {
      if (!rule.has_order()) {
        throw std::invalid_argument("priority needs a rule with an arrival order");
      }
      AxiomReport r = check_pri(p, rule.evaluate(p), rule.order_for(p),
                                PriComparison::Served, rule.name());
      if (!r.holds) return r;
      return std::nullopt;
    }
    case Axiom::Rmon: {
      for (long bump : {1L, 3L}) {
        for (int i = 0; i < p.issue_count(); ++i) {
          std::vector<Rat> estates = p.estates();
          estates[static_cast<size_t>(i)] += Rat(bump);
          AxiomReport r = check_rmon(rule, p, estates);
          if (!r.holds) return r;
        }
      }
      return std::nullopt;
    }
    case Axiom::Pmon: {
      if (n < 2) return std::nullopt;
      for (int leaver = 0; leaver < n; ++leaver) {
        AxiomReport r = check_pmon(rule, p, leaver);
        if (!r.holds) return r;
      }
      return std::nullopt;
    }
    case Axiom::Bal: {
      if (n < 2) return std::nullopt;
      for (int j = 0; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          AxiomReport r = check_bal(rule, p, j, k);
          if (!r.holds) return r;
        }
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<FalsifyOutcome> falsify(const RuleUnderTest& rule, Axiom axiom,
                                      const GenParams& params, std::uint64_t seed,
                                      std::uint64_t budget) {
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  for (std::uint64_t t = 0; t < budget; ++t) {
    MbcProblem candidate = random_mbc(params, Rng::substream(seed, t).next());
    if (axiom == Axiom::Ete) candidate = force_equal_pair(candidate);
    std::optional<AxiomReport> hit = find_violation(rule, axiom, candidate);
    if (!hit) continue;

    // Greedy shrink: drop claimants, then halve claims and estates, keeping
    // each change only while some scenario still violates the axiom.
    MbcProblem current = std::move(candidate);
    AxiomReport report = std::move(*hit);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int j = 0; j < current.claimant_count(); ++j) {
        std::optional<MbcProblem> smaller = drop_claimant(current, j);
        if (!smaller) continue;
        std::optional<AxiomReport> still = find_violation(rule, axiom, *smaller);
        if (still) {
          current = std::move(*smaller);
          report = std::move(*still);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      for (int j = 0; j < current.claimant_count(); ++j) {
        Rat halved = rat_floor(current.claim(j) / 2);
        if (halved == current.claim(j)) continue;
        MbcProblem smaller = with_claim(current, j, halved);
        std::optional<AxiomReport> still = find_violation(rule, axiom, smaller);
        if (still) {
          current = std::move(smaller);
          report = std::move(*still);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      for (int i = 0; i < current.issue_count(); ++i) {
        Rat halved = rat_floor(current.estate(i) / 2);
        if (halved == current.estate(i)) continue;
        std::vector<Rat> estates = current.estates();
        estates[static_cast<size_t>(i)] = halved;
        MbcProblem smaller = with_estates(current, std::move(estates));
        std::optional<AxiomReport> still = find_violation(rule, axiom, smaller);
        if (still) {
          current = std::move(smaller);
          report = std::move(*still);
          changed = true;
          break;
        }
      }
    }
    return FalsifyOutcome{std::move(current), std::move(report), t + 1};
  }
  return std::nullopt;
}

}  // namespace mbc
