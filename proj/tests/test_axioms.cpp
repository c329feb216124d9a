#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"
#include "mbc/axioms.hpp"

using namespace mbc;
using namespace mbc::test;

namespace {

std::vector<std::string> ids_of(const MbcProblem& p, const std::string& chars) {
  std::vector<std::string> out;
  for (char ch : chars) out.emplace_back(1, ch);
  return out;
}

}  // namespace

TEST_CASE("axiom names round-trip") {
  for (Axiom axiom : {Axiom::Peff, Axiom::Ete, Axiom::Cons, Axiom::Pri,
                      Axiom::Rmon, Axiom::Pmon, Axiom::Bal}) {
    CHECK(axiom_from_name(axiom_name(axiom)) == axiom);
  }
  CHECK(axiom_from_name("pmon") == Axiom::Pmon);
  CHECK_FALSE(axiom_from_name("nope").has_value());
}

TEST_CASE("rule harness evaluates and restricts orders") {
  MbcProblem p = eight_claimants();
  RuleUnderTest rule = RuleUnderTest::csp(ids_of(p, "13572468"));
  CHECK(rule.evaluate(p) == rats({"3", "2", "4", "0", "5", "0", "3", "5"}));

  MbcProblem sub = removal_problem(p, p.claimant_index("5"));
  ClaimantOrder restricted = rule.order_for(sub);
  std::vector<std::string> seen;
  for (int j : restricted) seen.push_back(sub.claimant_ids()[static_cast<size_t>(j)]);
  CHECK(seen == std::vector<std::string>{"1", "3", "7", "2", "4", "6", "8"});

  RuleUnderTest fixed = RuleUnderTest::table({{"1", Rat(1)}, {"2", Rat(1)}, {"3", Rat(1)},
                                              {"4", Rat(1)}, {"5", Rat(1)}, {"6", Rat(1)},
                                              {"7", Rat(1)}, {"8", Rat(1)}});
  CHECK_FALSE(fixed.supports_subproblems());
  CHECK(fixed.evaluate(p) == Allocation(8, Rat(1)));
}

TEST_CASE("pareto efficiency checks on the two-issue instance") {
  MbcProblem q = two_issues();
  AxiomReport cra_report = check_peff(RuleUnderTest::cra(), q);
  CHECK_FALSE(cra_report.holds);
  CHECK(cra_report.claimants == std::vector<std::string>{"1"});
  CHECK(cra_report.improvement == Rat(1, 2));

  AxiomReport csp_report = check_peff(RuleUnderTest::csp(ids_of(q, "123")), q);
  CHECK(csp_report.holds);

  MbcProblem zero = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(4)},
                                          {Rat(0), Rat(0)}, {{0}, {0}});
  CHECK(check_peff(RuleUnderTest::cra(), zero).holds);  // nothing to hand out
}

TEST_CASE("equal treatment checks") {
  MbcProblem twins = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(5)},
                                           {Rat(4), Rat(4)}, {{0}, {0}});
  CHECK(check_ete(RuleUnderTest::cra(), twins).holds);

  AxiomReport unequal = check_ete(RuleUnderTest::csp(ids_of(twins, "12")), twins);
  CHECK_FALSE(unequal.holds);  // first in order is served first
  CHECK(unequal.lhs == Rat(4));
  CHECK(unequal.rhs == Rat(1));

  MbcProblem q = two_issues();  // no equal pair present
  CHECK(check_ete(RuleUnderTest::csp(ids_of(q, "123")), q).holds);
}

TEST_CASE("consistency checks") {
  MbcProblem p = eight_claimants();
  RuleUnderTest rule = RuleUnderTest::csp(ids_of(p, "13572468"));
  std::vector<int> keep = {1, 3, 5, 7};
  CHECK(check_cons(rule, p, keep).holds);

  std::vector<int> all = {0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(check_cons(rule, p, all).holds);  // keep everyone: trivial

  MbcProblem c = chain();
  AxiomReport report = check_cons(RuleUnderTest::cra(), c, {0, 1});
  CHECK_FALSE(report.holds);  // averaging does not survive reduction here
}

TEST_CASE("priority checks") {
  MbcProblem p = eight_claimants();
  Allocation x = rats({"3", "2", "4", "0", "5", "0", "3", "5"});
  ClaimantOrder order;
  for (char ch : std::string("13572468")) order.push_back(p.claimant_index(std::string(1, ch)));
  CHECK(check_pri(p, x, order).holds);

  // first in order fully satisfied
  MbcProblem pair = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(5)},
                                          {Rat(3), Rat(4)}, {{0}, {0}});
  CHECK(check_pri(pair, rats({"3", "2"}), {0, 1}).holds);

  // handing the later claimant more while shorting the earlier one
  AxiomReport bad = check_pri(pair, rats({"1", "4"}), {0, 1});
  CHECK_FALSE(bad.holds);
  CHECK(bad.lhs == Rat(2));
  CHECK(bad.rhs == Rat(0));

  // the literal loss comparison flags sequential serving itself when a large
  // early claim hits a short estate ahead of a small late one
  MbcProblem skew = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(3)},
                                          {Rat(9), Rat(1)}, {{0}, {0}});
  Allocation served = rats({"3", "0"});
  CHECK(check_pri(skew, served, {0, 1}).holds);
  CHECK_FALSE(check_pri(skew, served, {0, 1}, PriComparison::LiteralLoss).holds);
}

TEST_CASE("resource monotonicity checks") {
  MbcProblem tight = eight_claimants_tight();
  RuleUnderTest rule = RuleUnderTest::csp(ids_of(tight, "13572468"));
  AxiomReport report = check_rmon(rule, tight, rats({"9", "13", "7"}));
  CHECK_FALSE(report.holds);
  CHECK(report.claimants == std::vector<std::string>{"8"});
  CHECK(report.lhs == Rat(4));
  CHECK(report.rhs == Rat(3));

  CHECK(check_rmon(rule, tight, tight.estates()).holds);  // E' = E
  CHECK_THROWS_AS(check_rmon(rule, tight, rats({"9", "11", "7"})),
                  std::invalid_argument);

  MbcProblem single = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(4)},
                                            {Rat(3), Rat(5)}, {{0}, {0}});
  CHECK(check_rmon(RuleUnderTest::csp(ids_of(single, "12")), single, rats({"6"})).holds);
}

TEST_CASE("population monotonicity checks") {
  MbcProblem c = chain();
  AxiomReport cra_report = check_pmon(RuleUnderTest::cra(), c, c.claimant_index("3"));
  CHECK_FALSE(cra_report.holds);
  CHECK(cra_report.claimants == std::vector<std::string>{"1"});
  CHECK(cra_report.lhs == Rat(7, 3));
  CHECK(cra_report.rhs == Rat(3));

  AxiomReport star_report = check_pmon(RuleUnderTest::crastar(), c, c.claimant_index("3"));
  CHECK_FALSE(star_report.holds);
  CHECK(star_report.rhs == Rat(3));

  // a zero-claim leaver changes nothing
  MbcProblem null_leaver = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(4)},
                                                 {Rat(0), Rat(5)}, {{0}, {0}});
  CHECK(check_pmon(RuleUnderTest::cra(), null_leaver, 0).holds);
}

TEST_CASE("balanced impact checks") {
  MbcProblem c = chain();
  AxiomReport report = check_bal(RuleUnderTest::cra(), c, 0, 1);
  CHECK_FALSE(report.holds);
  CHECK(report.lhs == Rat(4, 3));
  CHECK(report.rhs == Rat(2, 3));

  AxiomReport star = check_bal(RuleUnderTest::crastar(), c, 0, 1);
  CHECK_FALSE(star.holds);
  CHECK(star.lhs == Rat(4, 3));  // removal values (2,5) and (1,3)
  CHECK(star.rhs == Rat(2, 3));

  // symmetric twins with no third party: impacts match
  MbcProblem twins = MbcProblem::validated({"1"}, {"1", "2"}, {Rat(5)},
                                           {Rat(4), Rat(4)}, {{0}, {0}});
  CHECK(check_bal(RuleUnderTest::cra(), twins, 0, 1).holds);
}

TEST_CASE("crastar removal values on the chain instance") {
  MbcProblem c = chain();
  RuleUnderTest star = RuleUnderTest::crastar();
  CHECK(star.evaluate(removal_problem(c, 2)) == rats({"3", "2"}));
  CHECK(star.evaluate(removal_problem(c, 0)) == rats({"2", "5"}));
  CHECK(star.evaluate(removal_problem(c, 1)) == rats({"1", "3"}));
}

TEST_CASE("falsifier finds the documented violations and is deterministic") {
  GenParams params;
  params.claimants_max = 4;
  params.issues_max = 3;

  auto outcome = falsify(RuleUnderTest::cra(), Axiom::Peff, params, 11, 2000);
  REQUIRE(outcome.has_value());
  CHECK_FALSE(outcome->report.holds);
  // the stored witness re-checks against the minimized instance
  AxiomReport again = check_peff(RuleUnderTest::cra(), outcome->instance);
  CHECK_FALSE(again.holds);
  CHECK(again.claimants == outcome->report.claimants);
  CHECK(again.improvement == outcome->report.improvement);

  auto rerun = falsify(RuleUnderTest::cra(), Axiom::Peff, params, 11, 2000);
  REQUIRE(rerun.has_value());
  CHECK(rerun->instance == outcome->instance);
  CHECK(rerun->candidates_tried == outcome->candidates_tried);

  auto ete = falsify(RuleUnderTest::csp(), Axiom::Ete, params, 3, 2000);
  REQUIRE(ete.has_value());
  CHECK(ete->instance.claimant_count() == 2);

  auto rmon = falsify(RuleUnderTest::csp(), Axiom::Rmon, params, 5, 5000);
  REQUIRE(rmon.has_value());

  auto cons = falsify(RuleUnderTest::cra(), Axiom::Cons, params, 7, 2000);
  REQUIRE(cons.has_value());
}

TEST_CASE("falsifier finds nothing where the sweep provably complies") {
  GenParams params;
  params.claimants_max = 4;
  params.issues_max = 3;
  CHECK_FALSE(falsify(RuleUnderTest::csp(), Axiom::Peff, params, 2, 400).has_value());
  CHECK_FALSE(falsify(RuleUnderTest::csp(), Axiom::Pri, params, 2, 400).has_value());
  CHECK_FALSE(falsify(RuleUnderTest::csp(), Axiom::Cons, params, 2, 150).has_value());
}
