#ifndef MBC_TESTS_HELPERS_HPP
#define MBC_TESTS_HELPERS_HPP

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

#include "mbc/io.hpp"
#include "mbc/problem.hpp"

namespace mbc::test {

inline std::filesystem::path fixture_dir() { return MBC_FIXTURE_DIR; }

inline MbcProblem fixture(const std::string& name) {
  return load_problem(fixture_dir() / name);
}

inline MbcProblem eight_claimants() { return fixture("eight_claimants_three_issues.json"); }
inline MbcProblem eight_claimants_tight() { return fixture("eight_claimants_tight_estates.json"); }
inline MbcProblem two_issues() { return fixture("three_claimants_two_issues.json"); }
inline MbcProblem chain() { return fixture("three_claimants_chain.json"); }
inline MbcProblem five_claimants() { return fixture("five_claimants_three_issues.json"); }

inline std::vector<Rat> rats(std::initializer_list<const char*> values) {
  std::vector<Rat> out;
  for (const char* v : values) out.push_back(parse_rational(v));
  return out;
}

/// Order literal over single-character claimant ids, e.g. "13572468".
inline std::vector<int> order_of(const MbcProblem& p, const std::string& ids) {
  std::vector<int> order;
  for (char ch : ids) {
    int j = p.claimant_index(std::string(1, ch));
    if (j < 0) throw std::runtime_error("unknown claimant in order literal");
    order.push_back(j);
  }
  return order;
}

}  // namespace mbc::test

#endif  // MBC_TESTS_HELPERS_HPP
