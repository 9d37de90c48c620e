#include <gtest/gtest.h>

#include <algorithm>

#include "coax/dsl.hpp"
#include "coax/errors.hpp"
#include "coax/fixpoint.hpp"
#include "support/oracle.hpp"

namespace coax {
namespace {

using testing::Mask;
using testing::RandomSystem;

JudgmentSet judgments(std::initializer_list<const char*> items) {
  JudgmentSet out;
  for (const char* s : items) out.insert(parse_judgment(s));
  return out;
}

// The three-node graph a <-> b, c.
System fig1() {
  return parse_system(R"(
    visit(a,{a}) <- visit(b,{}).        visit(a,{a}) <- visit(b,{a}).
    visit(a,{a,b}) <- visit(b,{b}).     visit(a,{a,b}) <- visit(b,{a,b}).
    visit(a,{a,c}) <- visit(b,{c}).     visit(a,{a,c}) <- visit(b,{a,c}).
    visit(a,{a,b,c}) <- visit(b,{b,c}). visit(a,{a,b,c}) <- visit(b,{a,b,c}).
    visit(b,{b}) <- visit(a,{}).        visit(b,{b}) <- visit(a,{b}).
    visit(b,{a,b}) <- visit(a,{a}).     visit(b,{a,b}) <- visit(a,{a,b}).
    visit(b,{b,c}) <- visit(a,{c}).     visit(b,{b,c}) <- visit(a,{b,c}).
    visit(b,{a,b,c}) <- visit(a,{a,c}). visit(b,{a,b,c}) <- visit(a,{a,b,c}).
    visit(c,{c}).
    co visit(a,{}). co visit(b,{}). co visit(c,{}).
  )");
}

TEST(Fixpoint, Fig1BoundTrace) {
  auto r = generated(fig1());
  ASSERT_EQ(r.bound_trace.size(), 3u);
  EXPECT_EQ(r.bound_trace[0], judgments({"visit(a,{})", "visit(b,{})", "visit(c,{})", "visit(c,{c})"}));
  EXPECT_EQ(r.bound_trace[1], judgments({"visit(a,{})", "visit(b,{})", "visit(c,{})", "visit(c,{c})",
                                         "visit(a,{a})", "visit(b,{b})"}));
  EXPECT_EQ(r.bound_trace[2],
            judgments({"visit(a,{})", "visit(b,{})", "visit(c,{})", "visit(c,{c})", "visit(a,{a})",
                       "visit(b,{b})", "visit(a,{a,b})", "visit(b,{a,b})"}));
}

TEST(Fixpoint, Fig1GeneratedTrace) {
  auto r = generated(fig1());
  EXPECT_EQ(r.phase, Phase::Generated);
  ASSERT_EQ(r.trace.size(), 2u);
  EXPECT_EQ(r.trace[0], judgments({"visit(c,{c})", "visit(a,{a})", "visit(b,{b})", "visit(a,{a,b})",
                                   "visit(b,{a,b})"}));
  EXPECT_EQ(r.trace[1], judgments({"visit(c,{c})", "visit(a,{a,b})", "visit(b,{a,b})"}));
  EXPECT_EQ(r.judgments, r.trace.back());
}

TEST(Fixpoint, Fig1Endpoints) {
  auto sys = fig1();
  EXPECT_EQ(ind(sys).judgments, judgments({"visit(c,{c})"}));
  auto co = coind(sys).judgments;
  EXPECT_TRUE(co.contains(parse_judgment("visit(a,{a,b,c})")));
  EXPECT_FALSE(generated(sys).contains(parse_judgment("visit(a,{a,b,c})")));
}

TEST(Fixpoint, EmptySystem) {
  System sys;
  EXPECT_TRUE(ind(sys).judgments.empty());
  EXPECT_TRUE(coind(sys).judgments.empty());
  EXPECT_TRUE(generated(sys).judgments.empty());
  EXPECT_TRUE(step(sys, {sym("x")}).empty());
}

TEST(Fixpoint, StepUsesCoRulesOnlyWhenAsked) {
  System sys({Rule::coaxiom(sym("a")), Rule(sym("b"), {sym("a")})});
  EXPECT_EQ(step(sys, {}), JudgmentSet{});
  EXPECT_EQ(step(sys, {}, true), JudgmentSet{sym("a")});
  EXPECT_EQ(step(sys, {sym("a")}), JudgmentSet{sym("b")});
}

TEST(Fixpoint, BudgetCountsStepApplications) {
  std::vector<Rule> chain{Rule::axiom(num(0))};
  for (int i = 1; i < 10; ++i) chain.emplace_back(num(i), std::vector{num(i - 1)});
  System sys(chain);
  EXPECT_THROW(ind(sys, 5), BudgetExceeded);
  EXPECT_EQ(ind(sys, 11).judgments.size(), 10u);
  try {
    ind(sys, 3);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.budget(), 3u);
  }
}

TEST(Fixpoint, KernelRejectsNonPreFixedBound) {
  System sys({Rule::axiom(sym("a")), Rule(sym("b"), {sym("a")})});
  EXPECT_THROW(kernel(sys, {sym("a")}), NotPreFixed);
  try {
    kernel(sys, {});
  } catch (const NotPreFixed& e) {
    EXPECT_EQ(e.witness(), sym("a"));
  }
  EXPECT_EQ(kernel(sys, {sym("a"), sym("b")}).judgments, (JudgmentSet{sym("a"), sym("b")}));
}

TEST(Fixpoint, KernelDropsForeignJudgments) {
  System sys({Rule(sym("a"), {sym("a")})});
  auto k = kernel(sys, {sym("a"), sym("zz")});
  EXPECT_EQ(k.judgments, JudgmentSet{sym("a")});
}

TEST(Fixpoint, ExtendAndRestrict) {
  System sys({Rule::coaxiom(sym("a")), Rule(sym("b"), {sym("a")}), Rule::axiom(sym("c"))});
  auto ext = extend(sys);
  EXPECT_TRUE(ext.co_rules().empty());
  EXPECT_EQ(ext.regular_rules().size(), 3u);
  EXPECT_EQ(ind(ext).judgments, bound(sys).judgments);
  auto res = restrict(sys, {sym("b")});
  ASSERT_EQ(res.size(), 1u);
  EXPECT_EQ(res.regular_rules()[0].conclusion(), sym("b"));
}

// Against the brute-force lattice semantics.

TEST(Oracle, HandComputedCases) {
  // j0 <- j1, j1 <- j0, j2 <- j2, co j0.
  RandomSystem rs{3, {{0b010, 0, false}, {0b001, 1, false}, {0b100, 2, false}, {0, 0, true}}};
  EXPECT_EQ(rs.ind(), Mask{0});
  EXPECT_EQ(rs.coind(), Mask{0b111});
  EXPECT_EQ(rs.bound(), Mask{0b011});
  EXPECT_EQ(rs.generated(), Mask{0b011});
  EXPECT_EQ(rs.level(5), Mask{0b011});

  // j0 <- j0, co j1: the coaxiom alone derives nothing regular.
  RandomSystem lonely{2, {{0b01, 0, false}, {0, 1, true}}};
  EXPECT_EQ(lonely.bound(), Mask{0b10});
  EXPECT_EQ(lonely.level(1), Mask{0});
  EXPECT_EQ(lonely.generated(), Mask{0});
}

class Corpus : public ::testing::Test {
 protected:
  static const std::vector<RandomSystem>& systems() {
    static const auto c = testing::corpus();
    return c;
  }
};

TEST_F(Corpus, MatchesBruteForce) {
  for (std::size_t i = 0; i < systems().size(); ++i) {
    const auto& rs = systems()[i];
    const auto sys = rs.build();
    SCOPED_TRACE("system " + std::to_string(i));
    ASSERT_EQ(ind(sys).judgments, rs.set(rs.ind()));
    ASSERT_EQ(coind(sys).judgments, rs.set(rs.coind()));
    ASSERT_EQ(bound(sys).judgments, rs.set(rs.bound()));
    ASSERT_EQ(generated(sys).judgments, rs.set(rs.generated()));
  }
}

TEST_F(Corpus, SeparatesTheThreeSemantics) {
  std::size_t above_ind = 0, below_coind = 0, deep = 0;
  for (const auto& rs : systems()) {
    above_ind += rs.generated() != rs.ind();
    below_coind += rs.generated() != rs.coind();
    deep += rs.level(2) != rs.generated();
  }
  EXPECT_GT(above_ind, 30u);
  EXPECT_GT(below_coind, 30u);
  EXPECT_GT(deep, 10u);
}

TEST_F(Corpus, SandwichAndFixedPoint) {
  for (const auto& rs : systems()) {
    const auto sys = rs.build();
    auto i = ind(sys).judgments, g = generated(sys).judgments, c = coind(sys).judgments;
    auto b = bound(sys).judgments;
    EXPECT_TRUE(std::includes(g.begin(), g.end(), i.begin(), i.end()));
    EXPECT_TRUE(std::includes(c.begin(), c.end(), g.begin(), g.end()));
    EXPECT_TRUE(std::includes(b.begin(), b.end(), g.begin(), g.end()));
    EXPECT_EQ(step(sys, g), g);
  }
}

TEST_F(Corpus, TracesAreIteratedSteps) {
  for (const auto& rs : systems()) {
    const auto sys = rs.build();
    auto r = generated(sys);
    ASSERT_FALSE(r.trace.empty());
    for (std::size_t k = 0; k < r.trace.size(); ++k) {
      ASSERT_EQ(r.trace[k], rs.set(rs.level(k + 1)));
    }
    for (std::size_t k = 1; k < r.bound_trace.size(); ++k) {
      auto& lo = r.bound_trace[k - 1];
      auto& hi = r.bound_trace[k];
      ASSERT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
    }
  }
}

TEST_F(Corpus, EndpointsRecovered) {
  for (const auto& rs : systems()) {
    auto plain = rs;
    std::erase_if(plain.rules, [](const auto& r) { return r.co; });
    EXPECT_EQ(generated(plain.build()).judgments, ind(plain.build()).judgments);

    auto all = plain;
    for (const auto& r : plain.rules) all.rules.push_back({0, r.conclusion, true});
    EXPECT_EQ(generated(all.build()).judgments, coind(plain.build()).judgments);
  }
}

TEST_F(Corpus, MonotoneInCoRules) {
  std::mt19937 rng(7);
  for (const auto& rs : systems()) {
    auto more = rs;
    std::uniform_int_distribution<std::size_t> pick(0, rs.atoms - 1);
    for (int k = 0; k < 3; ++k) more.rules.push_back({0, pick(rng), true});
    auto lo = generated(rs.build()).judgments;
    auto hi = generated(more.build()).judgments;
    EXPECT_TRUE(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
  }
}

TEST_F(Corpus, KernelLaws) {
  for (const auto& rs : systems()) {
    const auto sys = rs.build();
    auto b = bound(sys).judgments;
    auto k = kernel(sys, b).judgments;
    EXPECT_EQ(k, generated(sys).judgments);
    // Already consistent: kernel is the identity.
    EXPECT_EQ(kernel(sys, k).judgments, k);
    // Any pre-fixed point works, the full universe included.
    JudgmentSet all(sys.universe().begin(), sys.universe().end());
    EXPECT_EQ(kernel(sys, all).judgments, coind(sys).judgments);
  }
}

TEST_F(Corpus, Deterministic) {
  for (const auto& rs : systems()) {
    auto a = generated(rs.build());
    auto rules = rs;
    std::reverse(rules.rules.begin(), rules.rules.end());
    auto b = generated(rules.build());
    EXPECT_EQ(a.trace, b.trace);
    EXPECT_EQ(a.bound_trace, b.bound_trace);
  }
}

}  // namespace
}  // namespace coax
