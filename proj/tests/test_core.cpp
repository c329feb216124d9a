#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "mbc/instance_gen.hpp"
#include "mbc/permutation.hpp"
#include "mbc/rules.hpp"

using namespace mbc;
using namespace mbc::test;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3") == Rat(3));
  CHECK(parse_rational("-2") == Rat(-2));
  CHECK(parse_rational("3.25") == Rat(13, 4));
  CHECK(parse_rational("13/4") == Rat(13, 4));
  CHECK(parse_rational("8/6") == Rat(4, 3));
  CHECK(parse_rational(" 2/4 ") == Rat(1, 2));
  CHECK(format_rational(parse_rational("8/6")) == "4/3");
  CHECK(format_rational(Rat(3)) == "3");
  CHECK(format_decimal(Rat(13, 4), 2) == "3.25");
  CHECK(format_decimal(Rat(7, 3), 3) == "2.333");
  CHECK(format_decimal(Rat(-1, 2), 1) == "-0.5");
  CHECK(format_decimal(Rat(0), 2) == "0.00");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(rat_floor(Rat(7, 2)) == Rat(3));
  CHECK(rat_floor(Rat(-7, 2)) == Rat(-4));
  CHECK(rat_floor(Rat(4)) == Rat(4));
}

TEST_CASE("validation accepts the eight-claimant fixture with all issues binding") {
  MbcProblem p = eight_claimants();
  CHECK(p.claimant_count() == 8);
  CHECK(p.issue_count() == 3);
  for (int i = 0; i < 3; ++i) CHECK(p.binding(i));
  CHECK(p.issues_of(p.claimant_index("3")) == std::vector<int>{0, 1});
  CHECK(p.claimants_of(2) == std::vector<int>{5, 6, 7});
}

TEST_CASE("validation flags an under-claimed issue as non-binding") {
  MbcProblem p = MbcProblem::validated({"1"}, {"1"}, {Rat(5)}, {Rat(3)}, {{0}});
  CHECK_FALSE(p.binding(0));
}

TEST_CASE("validation rejects malformed problems") {
  CHECK_THROWS_AS(MbcProblem::validated({"1"}, {"1", "2"}, {Rat(4)},
                                        {Rat(1), Rat(1)}, {{0}, {}}),
                  ValidationError);  // empty claim set
  CHECK_THROWS_AS(MbcProblem::validated({"1"}, {"1"}, {Rat(-1)}, {Rat(1)}, {{0}}),
                  ValidationError);  // negative estate
  CHECK_THROWS_AS(MbcProblem::validated({"1"}, {"1"}, {Rat(1)}, {Rat(-1)}, {{0}}),
                  ValidationError);  // negative claim
  CHECK_THROWS_AS(MbcProblem::validated({"1", "1"}, {"1"}, {Rat(1), Rat(1)}, {Rat(1)}, {{0}}),
                  ValidationError);  // duplicate issue id
  CHECK_THROWS_AS(MbcProblem::validated({"1", "2"}, {"1"}, {Rat(1), Rat(1)}, {Rat(1)}, {{0}}),
                  ValidationError);  // issue claimed by nobody
  CHECK_THROWS_AS(MbcProblem::validated({"1"}, {"1"}, {Rat(1)}, {Rat(1)}, {{4}}),
                  ValidationError);  // unknown issue index
}

TEST_CASE("residuals of known allocations") {
  MbcProblem p = eight_claimants();
  Allocation x = rats({"3", "2", "4", "0", "5", "0", "3", "5"});
  CHECK(residuals(p, x) == rats({"0", "0", "1"}));
  CHECK(residuals(p, Allocation(8, Rat(0))) == p.estates());

  MbcProblem q = two_issues();
  CHECK(residuals(q, rats({"8/6", "13/6", "35/6"})) == rats({"1/2", "0"}));
  CHECK_THROWS_AS(residuals(q, Allocation(2, Rat(0))), std::invalid_argument);
}

TEST_CASE("feasibility") {
  MbcProblem p = eight_claimants();
  CHECK(is_feasible(p, rats({"3", "2", "4", "0", "5", "0", "3", "5"})));
  CHECK(is_feasible(p, Allocation(8, Rat(0))));
  CHECK_FALSE(is_feasible(p, p.claims()));  // full claims overdraw binding issues
  Allocation over = rats({"3", "2", "4", "0", "5", "0", "3", "6"});
  CHECK_FALSE(is_feasible(p, over));  // exceeds claim 8
}

TEST_CASE("pareto verdicts") {
  MbcProblem q = two_issues();
  ParetoVerdict bad = is_pareto_efficient(q, rats({"8/6", "13/6", "35/6"}));
  CHECK_FALSE(bad.efficient);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->claimant == 0);
  CHECK(bad.witness->delta == Rat(1, 2));

  MbcProblem p = eight_claimants();
  CHECK(is_pareto_efficient(p, rats({"3", "2", "4", "0", "5", "0", "3", "5"})).efficient);

  MbcProblem slack = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(10)},
                                           {Rat(2), Rat(3)}, {{0}, {0}});
  CHECK(is_pareto_efficient(slack, rats({"2", "3"})).efficient);  // all claims met

  CHECK_THROWS_AS(is_pareto_efficient(p, p.claims()), std::invalid_argument);
}

TEST_CASE("reduced problem") {
  MbcProblem p = eight_claimants();
  Allocation x = rats({"3", "2", "4", "0", "5", "0", "3", "5"});
  std::vector<int> keep = {1, 3, 5, 7};  // claimants 2,4,6,8
  MbcProblem r = reduced_problem(p, x, keep);
  CHECK(r.claimant_ids() == std::vector<std::string>{"2", "4", "6", "8"});
  CHECK(r.issue_ids() == std::vector<std::string>{"1", "2", "3"});
  CHECK(r.estates() == rats({"2", "0", "6"}));
  CHECK(r.claims() == rats({"5", "3", "4", "5"}));

  // keep everyone: identity on issues, estates, claims
  std::vector<int> all = {0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(reduced_problem(p, x, all) == p);

  MbcProblem q = two_issues();
  MbcProblem r2 = reduced_problem(q, rats({"2", "2", "6"}), {1, 2});
  CHECK(r2.estates() == rats({"2", "8"}));
}

TEST_CASE("removal problem") {
  MbcProblem p = chain();
  MbcProblem no3 = removal_problem(p, 2);
  CHECK(no3.issue_ids() == std::vector<std::string>{"1", "2", "3"});
  CHECK(no3.estates() == rats({"4", "5", "2"}));
  CHECK(no3.claims() == rats({"3", "4"}));

  MbcProblem no1 = removal_problem(p, 0);
  // Issue 1 was only claimed by claimant 1 and is dropped.
  CHECK(no1.issue_ids() == std::vector<std::string>{"2", "3"});
  CHECK(no1.estates() == rats({"2", "7"}));

  bool clamped = false;
  MbcProblem big = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(3)},
                                         {Rat(5), Rat(4)}, {{0}, {0}});
  MbcProblem rest = removal_problem(big, 0, &clamped);
  CHECK(clamped);
  CHECK(rest.estate(0) == Rat(0));

  MbcProblem zero = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(3)},
                                          {Rat(0), Rat(4)}, {{0}, {0}});
  CHECK(removal_problem(zero, 0).estate(0) == Rat(3));  // zero claim leaves estates alone

  CHECK_THROWS_AS(removal_problem(p, 7), std::invalid_argument);
}

TEST_CASE("truncated claims") {
  MbcProblem mid = MbcProblem::validated(
      {"1", "2", "3"}, {"1", "2", "3", "4", "5"},
      rats({"0", "11/3", "8"}), rats({"1/3", "1/3", "1/3", "6", "5"}),
      {{0}, {0, 1}, {0, 1}, {1, 2}, {2}});
  CHECK(truncated_claims(mid) == rats({"0", "0", "0", "11/3", "5"}));

  MbcProblem roomy = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(10)},
                                           {Rat(2), Rat(3)}, {{0}, {0}});
  CHECK(truncated_claims(roomy) == roomy.claims());

  // truncation is idempotent
  std::vector<Rat> once = truncated_claims(mid);
  std::vector<std::vector<int>> alpha;
  for (int j = 0; j < mid.claimant_count(); ++j) alpha.push_back(mid.issues_of(j));
  MbcProblem again = MbcProblem::validated(mid.issue_ids(), mid.claimant_ids(),
                                           mid.estates(), once, alpha);
  CHECK(truncated_claims(again) == once);
}

TEST_CASE("homologous and equal claimants") {
  MbcProblem p = eight_claimants();
  int c3 = p.claimant_index("3"), c4 = p.claimant_index("4");
  CHECK(are_homologous(p, c3, c4));
  CHECK_FALSE(are_equal(p, c3, c4));
  CHECK(are_equal(p, c3, c3));

  MbcProblem q = chain();
  CHECK_FALSE(are_homologous(q, 0, 1));
}

TEST_CASE("pareto check agrees with a direct improvement probe on random instances") {
  GenParams params;
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    MbcProblem p = random_mbc(params, seed);
    Allocation x = csp(p, identity_order(p.claimant_count()));
    ParetoVerdict verdict = is_pareto_efficient(p, x);
    // Oracle: add the analytic slack to one coordinate and re-test feasibility.
    bool improvable = false;
    std::vector<Rat> r = residuals(p, x);
    for (int j = 0; j < p.claimant_count() && !improvable; ++j) {
      Rat slack = p.claim(j) - x[static_cast<size_t>(j)];
      for (int i : p.issues_of(j)) {
        if (r[static_cast<size_t>(i)] < slack) slack = r[static_cast<size_t>(i)];
      }
      if (slack > 0) {
        Allocation probe = x;
        probe[static_cast<size_t>(j)] += slack;
        improvable = is_feasible(p, probe);
      }
    }
    CHECK(verdict.efficient == !improvable);
    if (!verdict.efficient) {
      Allocation probe = x;
      probe[static_cast<size_t>(verdict.witness->claimant)] += verdict.witness->delta;
      CHECK(is_feasible(p, probe));
    }
  }
}

TEST_CASE("subproblem constructors stay valid on random instances") {
  GenParams params;
  for (std::uint64_t seed = 1000; seed < 1150; ++seed) {
    MbcProblem p = random_mbc(params, seed);
    if (p.claimant_count() < 2) continue;
    Allocation x = csp(p, identity_order(p.claimant_count()));

    std::vector<int> keep;
    for (int j = 0; j < p.claimant_count(); j += 2) keep.push_back(j);
    MbcProblem r = reduced_problem(p, x, keep);
    for (const Rat& e : r.estates()) CHECK(e >= 0);

    for (int leaver = 0; leaver < p.claimant_count(); ++leaver) {
      MbcProblem rest = removal_problem(p, leaver);
      for (const Rat& e : rest.estates()) CHECK(e >= 0);
      // every surviving issue is still claimed by someone
      for (int i = 0; i < rest.issue_count(); ++i) {
        CHECK_FALSE(rest.claimants_of(i).empty());
      }
      // no issue needed by a survivor was dropped
      for (int rj = 0; rj < rest.claimant_count(); ++rj) {
        const std::string& id = rest.claimant_ids()[static_cast<size_t>(rj)];
        int j = p.claimant_index(id);
        CHECK(rest.issues_of(rj).size() == p.issues_of(j).size());
      }
    }
  }
}
