#include "mbc/problem.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace mbc {

namespace {

std::unordered_map<std::string, int> index_map(const std::vector<std::string>& ids,
                                               const char* what) {
  std::unordered_map<std::string, int> map;
  map.reserve(ids.size());
  for (size_t k = 0; k < ids.size(); ++k) {
    if (ids[k].empty()) throw ValidationError(std::string(what) + " identifier is empty");
    if (!map.emplace(ids[k], static_cast<int>(k)).second) {
      throw ValidationError(std::string("duplicate ") + what + " identifier '" + ids[k] + "'");
    }
  }
  return map;
}

}  // namespace

MbcProblem MbcProblem::validated(std::vector<std::string> issue_ids,
                                 std::vector<std::string> claimant_ids,
                                 std::vector<Rat> estates, std::vector<Rat> claims,
                                 std::vector<std::vector<int>> claim_issues) {
  MbcProblem p;
  p.issue_ids_ = std::move(issue_ids);
  p.claimant_ids_ = std::move(claimant_ids);
  p.estates_ = std::move(estates);
  p.claims_ = std::move(claims);
  p.claim_issues_ = std::move(claim_issues);

  index_map(p.issue_ids_, "issue");
  index_map(p.claimant_ids_, "claimant");
  const int m = p.issue_count();
  const int n = p.claimant_count();
  if (m == 0) throw ValidationError("problem has no issues");
  if (n == 0) throw ValidationError("problem has no claimants");
  if (p.estates_.size() != static_cast<size_t>(m) || p.claims_.size() != static_cast<size_t>(n) ||
      p.claim_issues_.size() != static_cast<size_t>(n)) {
    throw ValidationError("component sizes do not match identifier lists");
  }
  for (int i = 0; i < m; ++i) {
    if (p.estates_[i] < 0) {
      throw ValidationError("negative estate for issue '" + p.issue_ids_[i] + "'");
    }
  }
  for (int j = 0; j < n; ++j) {
    if (p.claims_[j] < 0) {
      throw ValidationError("negative claim for claimant '" + p.claimant_ids_[j] + "'");
    }
    auto& issues = p.claim_issues_[j];
    if (issues.empty()) {
      throw ValidationError("claimant '" + p.claimant_ids_[j] + "' claims no issues");
    }
    std::sort(issues.begin(), issues.end());
    if (std::adjacent_find(issues.begin(), issues.end()) != issues.end()) {
      throw ValidationError("claimant '" + p.claimant_ids_[j] + "' lists an issue twice");
    }
    if (issues.front() < 0 || issues.back() >= m) {
      throw ValidationError("claimant '" + p.claimant_ids_[j] + "' references an unknown issue");
    }
  }

  p.issue_claimants_.assign(static_cast<size_t>(m), {});
  for (int j = 0; j < n; ++j) {
    for (int i : p.claim_issues_[j]) p.issue_claimants_[i].push_back(j);
  }
  p.binding_.assign(static_cast<size_t>(m), false);
  for (int i = 0; i < m; ++i) {
    if (p.issue_claimants_[i].empty()) {
      throw ValidationError("issue '" + p.issue_ids_[i] + "' is claimed by nobody");
    }
    Rat total = 0;
    for (int j : p.issue_claimants_[i]) total += p.claims_[j];
    p.binding_[i] = total > p.estates_[i];
  }
  return p;
}

int MbcProblem::issue_index(std::string_view id) const {
  for (size_t k = 0; k < issue_ids_.size(); ++k) {
    if (issue_ids_[k] == id) return static_cast<int>(k);
  }
  return -1;
}

int MbcProblem::claimant_index(std::string_view id) const {
  for (size_t k = 0; k < claimant_ids_.size(); ++k) {
    if (claimant_ids_[k] == id) return static_cast<int>(k);
  }
  return -1;
}

bool MbcProblem::operator==(const MbcProblem& other) const {
  return issue_ids_ == other.issue_ids_ && claimant_ids_ == other.claimant_ids_ &&
         estates_ == other.estates_ && claims_ == other.claims_ &&
         claim_issues_ == other.claim_issues_;
}

MbcProblem validate_problem(const RawProblem& raw) {
  auto issue_idx = index_map(raw.issues, "issue");
  auto claimant_idx = index_map(raw.claimants, "claimant");

  auto gather = [](const auto& pairs, const auto& idx, size_t count, const char* what) {
    std::vector<std::optional<Rat>> slots(count);
    for (const auto& [id, value] : pairs) {
      auto it = idx.find(id);
      if (it == idx.end()) {
        throw ValidationError(std::string(what) + " entry for unknown identifier '" + id + "'");
      }
      if (slots[it->second].has_value()) {
        throw ValidationError(std::string("duplicate ") + what + " entry for '" + id + "'");
      }
      slots[it->second] = value;
    }
    std::vector<Rat> out(count);
    for (size_t k = 0; k < count; ++k) {
      if (!slots[k].has_value()) {
        throw ValidationError(std::string("missing ") + what + " entry");
      }
      out[k] = *slots[k];
    }
    return out;
  };

  std::vector<Rat> estates = gather(raw.estates, issue_idx, raw.issues.size(), "estate");
  std::vector<Rat> claims = gather(raw.claims, claimant_idx, raw.claimants.size(), "claim");

  std::vector<std::vector<int>> claim_issues(raw.claimants.size());
  std::vector<bool> seen(raw.claimants.size(), false);
  for (const auto& [id, issues] : raw.alpha) {
    auto it = claimant_idx.find(id);
    if (it == claimant_idx.end()) {
      throw ValidationError("alpha entry for unknown claimant '" + id + "'");
    }
    if (seen[it->second]) throw ValidationError("duplicate alpha entry for '" + id + "'");
    seen[it->second] = true;
    for (const auto& issue : issues) {
      auto ii = issue_idx.find(issue);
      if (ii == issue_idx.end()) {
        throw ValidationError("claimant '" + id + "' claims unknown issue '" + issue + "'");
      }
      claim_issues[it->second].push_back(ii->second);
    }
  }
  for (size_t j = 0; j < raw.claimants.size(); ++j) {
    if (!seen[j]) throw ValidationError("missing alpha entry for claimant '" + raw.claimants[j] + "'");
  }

  return MbcProblem::validated(raw.issues, raw.claimants, std::move(estates),
                               std::move(claims), std::move(claim_issues));
}

std::vector<Rat> residuals(const MbcProblem& p, const Allocation& x) {
  if (x.size() != static_cast<size_t>(p.claimant_count())) {
    throw std::invalid_argument("allocation does not index the problem's claimants");
  }
  std::vector<Rat> r = p.estates();
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (x[j] == 0) continue;
    for (int i : p.issues_of(j)) r[i] -= x[j];
  }
  return r;
}

bool is_feasible(const MbcProblem& p, const Allocation& x) {
  if (x.size() != static_cast<size_t>(p.claimant_count())) {
    throw std::invalid_argument("allocation does not index the problem's claimants");
  }
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (x[j] < 0 || x[j] > p.claim(j)) return false;
  }
  for (const Rat& r : residuals(p, x)) {
    if (r < 0) return false;
  }
  return true;
}

ParetoVerdict is_pareto_efficient(const MbcProblem& p, const Allocation& x) {
  if (!is_feasible(p, x)) {
    throw std::invalid_argument("pareto check requires a feasible allocation");
  }
  std::vector<Rat> r = residuals(p, x);
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (x[j] >= p.claim(j)) continue;
    Rat slack = r[p.issues_of(j).front()];
    for (int i : p.issues_of(j)) {
      if (r[i] < slack) slack = r[i];
    }
    if (slack > 0) {
      Rat delta = p.claim(j) - x[j];
      if (slack < delta) delta = slack;
      return {false, ParetoVerdict::Improvement{j, delta}};
    }
  }
  return {true, std::nullopt};
}

MbcProblem reduced_problem(const MbcProblem& p, const Allocation& x,
                           const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("keep set is empty");
  if (!is_feasible(p, x)) throw std::invalid_argument("reduced problem requires a feasible allocation");
  std::vector<bool> kept(static_cast<size_t>(p.claimant_count()), false);
  for (int j : keep) {
    if (j < 0 || j >= p.claimant_count()) throw std::invalid_argument("keep set references an unknown claimant");
    kept[j] = true;
  }

  std::vector<int> issue_map(static_cast<size_t>(p.issue_count()), -1);
  std::vector<std::string> issue_ids;
  std::vector<Rat> estates;
  for (int i = 0; i < p.issue_count(); ++i) {
    bool used = false;
    for (int j : p.claimants_of(i)) {
      if (kept[j]) { used = true; break; }
    }
    if (!used) continue;
    Rat e = p.estate(i);
    for (int j : p.claimants_of(i)) {
      if (!kept[j]) e -= x[j];
    }
    if (e < 0) throw std::logic_error("reduced estate went negative for a feasible allocation");
    issue_map[i] = static_cast<int>(issue_ids.size());
    issue_ids.push_back(p.issue_ids()[i]);
    estates.push_back(std::move(e));
  }

  std::vector<std::string> claimant_ids;
  std::vector<Rat> claims;
  std::vector<std::vector<int>> claim_issues;
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (!kept[j]) continue;
    claimant_ids.push_back(p.claimant_ids()[j]);
    claims.push_back(p.claim(j));
    std::vector<int> issues;
    for (int i : p.issues_of(j)) issues.push_back(issue_map[i]);
    claim_issues.push_back(std::move(issues));
  }
  return MbcProblem::validated(std::move(issue_ids), std::move(claimant_ids),
                               std::move(estates), std::move(claims), std::move(claim_issues));
}

MbcProblem removal_problem(const MbcProblem& p, int leaver, bool* estate_clamped) {
  if (leaver < 0 || leaver >= p.claimant_count()) throw std::invalid_argument("unknown leaver");
  if (p.claimant_count() < 2) throw std::invalid_argument("removal requires at least two claimants");
  if (estate_clamped) *estate_clamped = false;

  std::vector<bool> leaver_issue(static_cast<size_t>(p.issue_count()), false);
  for (int i : p.issues_of(leaver)) leaver_issue[i] = true;

  std::vector<int> issue_map(static_cast<size_t>(p.issue_count()), -1);
  std::vector<std::string> issue_ids;
  std::vector<Rat> estates;
  for (int i = 0; i < p.issue_count(); ++i) {
    bool used = false;
    for (int j : p.claimants_of(i)) {
      if (j != leaver) { used = true; break; }
    }
    if (!used) continue;  // only the leaver drew from this issue
    Rat e = p.estate(i);
    if (leaver_issue[i]) {
      e -= p.claim(leaver);
      if (e < 0) {
        e = 0;
        if (estate_clamped) *estate_clamped = true;
      }
    }
    issue_map[i] = static_cast<int>(issue_ids.size());
    issue_ids.push_back(p.issue_ids()[i]);
    estates.push_back(std::move(e));
  }

  std::vector<std::string> claimant_ids;
  std::vector<Rat> claims;
  std::vector<std::vector<int>> claim_issues;
  for (int j = 0; j < p.claimant_count(); ++j) {
    if (j == leaver) continue;
    claimant_ids.push_back(p.claimant_ids()[j]);
    claims.push_back(p.claim(j));
    std::vector<int> issues;
    for (int i : p.issues_of(j)) issues.push_back(issue_map[i]);
    claim_issues.push_back(std::move(issues));
  }
  return MbcProblem::validated(std::move(issue_ids), std::move(claimant_ids),
                               std::move(estates), std::move(claims), std::move(claim_issues));
}

std::vector<Rat> truncated_claims(const MbcProblem& p) {
  std::vector<Rat> out(static_cast<size_t>(p.claimant_count()));
  for (int j = 0; j < p.claimant_count(); ++j) {
    Rat cap = p.estate(p.issues_of(j).front());
    for (int i : p.issues_of(j)) {
      if (p.estate(i) < cap) cap = p.estate(i);
    }
    out[j] = p.claim(j) < cap ? p.claim(j) : cap;
  }
  return out;
}

MbcProblem with_estates(const MbcProblem& p, std::vector<Rat> estates) {
  std::vector<std::vector<int>> claim_issues;
  claim_issues.reserve(static_cast<size_t>(p.claimant_count()));
  for (int j = 0; j < p.claimant_count(); ++j) claim_issues.push_back(p.issues_of(j));
  return MbcProblem::validated(p.issue_ids(), p.claimant_ids(), std::move(estates),
                               p.claims(), std::move(claim_issues));
}

bool are_homologous(const MbcProblem& p, int j, int k) {
  return p.issues_of(j) == p.issues_of(k);
}

bool are_equal(const MbcProblem& p, int j, int k) {
  return are_homologous(p, j, k) && p.claim(j) == p.claim(k);
}

}  // namespace mbc
