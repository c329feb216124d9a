#include "mbc/instance_gen.hpp"

#include <string>

#include "mbc/rng.hpp"

namespace mbc {

namespace {

void check_range(long lo, long hi, const char* what) {
  if (lo > hi) throw std::invalid_argument(std::string("empty range for ") + what);
}

}  // namespace

MbcProblem random_mbc(const GenParams& params, std::uint64_t seed) {
  check_range(params.claimants_min, params.claimants_max, "claimant count");
  check_range(params.issues_min, params.issues_max, "issue count");
  check_range(params.claim_min, params.claim_max, "claim values");
  if (params.claimants_min < 1 || params.issues_min < 1 || params.claim_min < 0) {
    throw std::invalid_argument("generator ranges must be positive");
  }

  Rng rng = Rng::substream(seed, 0x6d62632d67656eULL);
  const int n = static_cast<int>(rng.range(params.claimants_min, params.claimants_max));
  const int m = static_cast<int>(rng.range(params.issues_min, params.issues_max));

  std::vector<Rat> claims(static_cast<size_t>(n));
  for (auto& c : claims) {
    c = Rat(static_cast<long>(rng.range(params.claim_min, params.claim_max)));
    if (params.rational_values) c /= Rat(static_cast<long>(rng.range(1, 4)));
  }

  std::vector<std::vector<bool>> grid(static_cast<size_t>(n),
                                      std::vector<bool>(static_cast<size_t>(m), false));
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool ok = true;
    for (int j = 0; j < n; ++j) {
      bool any = false;
      for (int i = 0; i < m; ++i) {
        grid[j][i] = rng.chance(params.alpha_density);
        any = any || grid[j][i];
      }
      ok = ok && any;
    }
    if (ok) {
      for (int i = 0; i < m && ok; ++i) {
        bool any = false;
        for (int j = 0; j < n; ++j) any = any || grid[j][i];
        ok = any;
      }
    }
    if (ok) break;
    if (attempt == 63) {
      // Degenerate density; repair instead of looping forever.
      for (int j = 0; j < n; ++j) {
        bool any = false;
        for (int i = 0; i < m; ++i) any = any || grid[j][i];
        if (!any) grid[j][static_cast<size_t>(rng.below(static_cast<std::uint64_t>(m)))] = true;
      }
      for (int i = 0; i < m; ++i) {
        bool any = false;
        for (int j = 0; j < n; ++j) any = any || grid[j][i];
        if (!any) grid[static_cast<size_t>(rng.below(static_cast<std::uint64_t>(n)))][i] = true;
      }
    }
  }

  if (n >= 2 && rng.chance(params.duplicate_prob)) {
    const int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
    if (b >= a) ++b;
    claims[static_cast<size_t>(b)] = claims[static_cast<size_t>(a)];
    grid[static_cast<size_t>(b)] = grid[static_cast<size_t>(a)];
    // Overwriting b's row may orphan an issue only b used; give such issues
    // to both twins so the pair stays equal.
    for (int i = 0; i < m; ++i) {
      bool any = false;
      for (int j = 0; j < n; ++j) any = any || grid[j][i];
      if (!any) {
        grid[static_cast<size_t>(a)][i] = true;
        grid[static_cast<size_t>(b)][i] = true;
      }
    }
  }

  std::vector<std::vector<int>> claim_issues(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      if (grid[j][i]) claim_issues[static_cast<size_t>(j)].push_back(i);
    }
  }

  std::vector<Rat> estates(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    Rat total(0);
    for (int j = 0; j < n; ++j) {
      if (grid[j][i]) total += claims[static_cast<size_t>(j)];
    }
    if (total > 0 && rng.chance(params.binding_prob)) {
      const double frac = params.binding_frac_min +
                          rng.unit() * (params.binding_frac_max - params.binding_frac_min);
      Rat scaled = total * make_rat(static_cast<long>(frac * 1024.0), 1024);
      estates[static_cast<size_t>(i)] = params.rational_values ? scaled : rat_floor(scaled);
      if (estates[static_cast<size_t>(i)] >= total) estates[static_cast<size_t>(i)] = total - 1;
      if (estates[static_cast<size_t>(i)] < 0) estates[static_cast<size_t>(i)] = 0;
    } else {
      estates[static_cast<size_t>(i)] =
          total + Rat(static_cast<long>(rng.range(0, params.claim_max)));
    }
  }

  std::vector<std::string> issue_ids(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) issue_ids[static_cast<size_t>(i)] = std::to_string(i + 1);
  std::vector<std::string> claimant_ids(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) claimant_ids[static_cast<size_t>(j)] = std::to_string(j + 1);

  return MbcProblem::validated(std::move(issue_ids), std::move(claimant_ids),
                               std::move(estates), std::move(claims), std::move(claim_issues));
}

}  // namespace mbc
