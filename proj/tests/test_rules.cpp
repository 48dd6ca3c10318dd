#include "doctest.h"
#include "helpers.hpp"
#include "lore/rules.hpp"

using namespace lore;

namespace {
Premise q_premise(std::vector<SplitCondition> cs) { return Premise{std::move(cs)}; }
}  // namespace

TEST_CASE("satisfies evaluates the conjunction") {
  auto p = q_premise({SplitCondition::at_most(0, 25.0), SplitCondition::equals(1, "other")});
  CHECK(satisfies(testutil::loan_instance(22, "other", 0), p));
  CHECK_FALSE(satisfies(testutil::loan_instance(22, "clerk", 0), p));
  CHECK_FALSE(satisfies(testutil::loan_instance(30, "other", 0), p));
  CHECK(satisfies(testutil::loan_instance(99, "clerk", 12345), Premise{}));  // empty conjunction
}

TEST_CASE("condition bound semantics: open vs closed") {
  auto le = SplitCondition::at_most(0, 25.0);
  CHECK(le.holds(testutil::loan_instance(25.0, "clerk", 0)));
  auto gt = SplitCondition::greater_than(0, 25.0);
  CHECK_FALSE(gt.holds(testutil::loan_instance(25.0, "clerk", 0)));
  CHECK(gt.holds(testutil::loan_instance(25.0000001, "clerk", 0)));

  auto band = SplitCondition::interval(2, 900.0, false, 1500.0, true);
  CHECK_FALSE(band.holds(testutil::loan_instance(0, "clerk", 900.0)));
  CHECK(band.holds(testutil::loan_instance(0, "clerk", 1500.0)));
  CHECK(band.holds(testutil::loan_instance(0, "clerk", 1000.0)));

  CHECK_FALSE(band.empty_interval());
  CHECK(SplitCondition::interval(2, 5, false, 5, false).empty_interval());
  CHECK_FALSE(SplitCondition::interval(2, 5, true, 5, true).empty_interval());
}

TEST_CASE("update_premise overwrites matching features and appends fresh ones") {
  auto p = q_premise({SplitCondition::at_most(0, 25.0), SplitCondition::equals(1, "other")});

  SUBCASE("overwrite: {age<=25, job=other}[age>25] = {age>25, job=other}") {
    auto out = update_premise(p, {SplitCondition::greater_than(0, 25.0)});
    REQUIRE(out.conditions.size() == 2);
    CHECK(out.conditions[0] == SplitCondition::greater_than(0, 25.0));
    CHECK(out.conditions[1] == SplitCondition::equals(1, "other"));
  }
  SUBCASE("empty delta is identity") { CHECK(update_premise(p, {}) == p); }
  SUBCASE("fresh feature is added; delta conditions lead") {
    auto out = update_premise(q_premise({SplitCondition::interval(0, 0, true, 1, true)}),
                              {SplitCondition::equals(1, "clerk")});
    REQUIRE(out.conditions.size() == 2);
    CHECK(out.conditions[0] == SplitCondition::equals(1, "clerk"));
    CHECK(out.conditions[1] == SplitCondition::interval(0, 0, true, 1, true));
  }
  SUBCASE("idempotence: p[delta][delta] = p[delta]") {
    std::vector<SplitCondition> delta = {SplitCondition::greater_than(0, 40.0),
                                         SplitCondition::at_most(2, 100.0)};
    auto once = update_premise(p, delta);
    CHECK(update_premise(once, delta) == once);
  }
  SUBCASE("no stale condition survives an overwrite") {
    Rng rng(5);
    auto schema = testutil::loan_schema();
    for (int trial = 0; trial < 200; ++trial) {
      auto out = update_premise(p, {SplitCondition::greater_than(0, 25.0)});
      auto x = testutil::random_instance(schema, rng);
      bool expect = SplitCondition::greater_than(0, 25.0).holds(x) &&
                    SplitCondition::equals(1, "other").holds(x);
      CHECK(satisfies(x, out) == expect);
    }
  }
}

TEST_CASE("count_falsified matches the worked loan example") {
  auto x = testutil::loan_instance(22, "clerk", 800);
  auto q1 = q_premise({SplitCondition::at_most(0, 25.0), SplitCondition::equals(1, "clerk"),
                       SplitCondition::greater_than(2, 900.0)});
  CHECK(count_falsified(q1, x) == 1);
  auto q3 = q_premise({SplitCondition::greater_than(0, 25.0),
                       SplitCondition::at_most(2, 1500.0),
                       SplitCondition::equals(1, "other")});
  CHECK(count_falsified(q3, x) == 2);
  auto sat = q_premise({SplitCondition::at_most(0, 25.0)});
  CHECK(count_falsified(sat, x) == 0);
}

TEST_CASE("count_falsified(p,x)=0 iff satisfies(x,p)") {
  auto schema = testutil::loan_schema();
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    Premise p;
    if (rng.bernoulli(0.7))
      p.conditions.push_back(rng.bernoulli(0.5)
                                 ? SplitCondition::at_most(0, rng.uniform() * 100)
                                 : SplitCondition::greater_than(0, rng.uniform() * 100));
    if (rng.bernoulli(0.7))
      p.conditions.push_back(
          SplitCondition::equals(1, rng.bernoulli(0.5) ? "clerk" : "other"));
    auto x = testutil::random_instance(schema, rng);
    CHECK((count_falsified(p, x) == 0) == satisfies(x, p));
  }
}

TEST_CASE("rendering uses the compact display notation") {
  auto schema = testutil::loan_schema();
  CHECK(render_condition(schema, SplitCondition::at_most(0, 25.0)) == "age <= 25");
  CHECK(render_condition(schema, SplitCondition::greater_than(2, 900.0)) == "income > 900");
  CHECK(render_condition(schema, SplitCondition::interval(2, 900, false, 1500, true)) ==
        "900 < income <= 1500");
  CHECK(render_condition(schema, SplitCondition::equals(1, "clerk")) == "job = clerk");
  Rule r{Premise{{SplitCondition::at_most(0, 25.0), SplitCondition::equals(1, "clerk")}}, 0};
  CHECK(render_rule(schema, r) == "{age <= 25, job = clerk} -> loan = deny");
}

TEST_CASE("format_number is a shortest exact round-trip") {
  CHECK(format_number(25.0) == "25");
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(-3.0) == "-3");
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    double v = (rng.uniform() - 0.5) * 1e6;
    CHECK(std::stod(format_number(v)) == v);
  }
}
