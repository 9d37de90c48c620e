#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "coax/dsl.hpp"
#include "coax/errors.hpp"
#include "coax/gen.hpp"

namespace coax {
namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Dsl, ParsesStatementsWithLocations) {
  auto src = parse_source(
      "% a comment\n"
      "visit(c,{c}).\n"
      "  co visit(a,{}).   visit(a,{a}) <- visit(b,{}), visit(b,{}). % trailing\n");
  ASSERT_EQ(src.statements.size(), 3u);
  EXPECT_EQ(src.statements[0].location.line, 2u);
  EXPECT_EQ(src.statements[0].location.column, 1u);
  EXPECT_EQ(src.statements[1].location.line, 3u);
  EXPECT_EQ(src.statements[1].location.column, 3u);
  EXPECT_TRUE(src.statements[1].rule.is_co());
  EXPECT_EQ(src.statements[2].rule.premises().size(), 1u);
  EXPECT_EQ(src.statements[2].location.column, 21u);
}

TEST(Dsl, Literals) {
  EXPECT_EQ(parse_judgment("dist(a,e,inf)"), sym("dist", {sym("a"), sym("e"), Term::infinity()}));
  EXPECT_EQ(parse_judgment("add(z,z,n,-1)").args()[3], num(-1));
  EXPECT_EQ(parse_judgment("{b, a, b}"), Term::set({sym("a"), sym("b")}));
  EXPECT_EQ(parse_judgment("{}"), Term::set({}));
  EXPECT_EQ(parse_judgment("f(g(h(x_1)))").to_string(), "f(g(h(x_1)))");
}

TEST(Dsl, CoIsOnlyAKeywordBeforeATerm) {
  auto sys = parse_system("co. co(x). co co. co {}.");
  EXPECT_EQ(sys.regular_rules().size(), 2u);
  ASSERT_EQ(sys.co_rules().size(), 2u);
  EXPECT_EQ(sys.co_rules()[0].conclusion(), sym("co"));
  EXPECT_TRUE(sys.rules_concluding(sym("co", {sym("x")})).size() == 1);
}

TEST(Dsl, JudgmentSets) {
  auto s = parse_judgment_set("% spec\nallPos(l,T).\nallPos(m,T). allPos(l,T).\n");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(parse_judgment_set("  % nothing\n").empty());
  EXPECT_THROW(parse_judgment_set("allPos(l,T)"), ParseError);
}

TEST(Dsl, ErrorsCarryPositionAndExpectation) {
  struct Case {
    const char* text;
    std::size_t line, column;
    const char* expected;
  };
  for (const auto& c : std::vector<Case>{
           {"a <- b", 1, 7, "'.'"},
           {"a(b.", 1, 4, "')'"},
           {"\n\n  a <- .", 3, 8, "term"},
           {"{a, }.", 1, 5, "term"},
           {"a. b c.", 1, 6, "'.'"},
           {"a(99999999999999999999).", 1, 3, "integer in 64-bit range"},
       }) {
    SCOPED_TRACE(c.text);
    try {
      parse_system(c.text);
      ADD_FAILURE() << "no error";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), c.line);
      EXPECT_EQ(e.column(), c.column);
      EXPECT_NE(std::find(e.expected().begin(), e.expected().end(), c.expected), e.expected().end())
          << e.what();
    }
  }
  EXPECT_THROW(parse_judgment("a b"), ParseError);
  EXPECT_THROW(parse_judgment(""), ParseError);
  EXPECT_THROW(parse_system("a # b."), ParseError);
}

TEST(Dsl, RendersCanonically) {
  EXPECT_EQ(render_rule(Rule::axiom(sym("c"))), "c.");
  EXPECT_EQ(render_rule(Rule(sym("c"), {sym("p2"), sym("p1")})), "c <- p1, p2.");
  EXPECT_EQ(render_rule(Rule::coaxiom(sym("c"))), "co c.");
  EXPECT_EQ(render_system(parse_system("co z. b <- a. a.")), "a.\nb <- a.\nco z.\n");
}

Term random_term(std::mt19937& rng, int depth) {
  static const std::vector<std::string> names{"a", "b", "visit", "dist", "co", "T", "x_1", "seq"};
  int kind = std::uniform_int_distribution<int>(0, depth > 0 ? 4 : 2)(rng);
  switch (kind) {
    case 0: return num(std::uniform_int_distribution<std::int64_t>(-20, 20)(rng));
    case 1: return std::bernoulli_distribution(0.3)(rng) ? Term::infinity() : sym("a");
    case 2: return sym(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)]);
    default: {
      std::vector<Term> args;
      for (int n = std::uniform_int_distribution<int>(0, 3)(rng); n > 0; --n) {
        args.push_back(random_term(rng, depth - 1));
      }
      if (kind == 3) return Term::set(std::move(args));
      if (args.empty()) args.push_back(num(0));
      return sym(names[std::uniform_int_distribution<std::size_t>(0, names.size() - 1)(rng)],
                 std::move(args));
    }
  }
}

TEST(Dsl, RoundTrip) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Rule> rules;
    for (int n = std::uniform_int_distribution<int>(0, 8)(rng); n > 0; --n) {
      std::vector<Term> premises;
      for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k) {
        premises.push_back(random_term(rng, 3));
      }
      rules.emplace_back(random_term(rng, 3), std::move(premises),
                         std::bernoulli_distribution(0.25)(rng) ? RuleKind::Co : RuleKind::Regular);
    }
    System sys(rules);
    const std::string text = render_system(sys);
    ASSERT_EQ(parse_system(text), sys) << text;
    ASSERT_EQ(render_system(parse_system(text)), text);
    for (const auto& t : sys.universe()) ASSERT_EQ(parse_judgment(t.to_string()), t);
  }
}

TEST(Dsl, GoldenFig1) {
  auto sys = gen_visit(parse_graph(slurp(COAX_DATA_DIR "/fig1.graph")));
  EXPECT_EQ(render_system(sys), slurp(COAX_GOLDEN_DIR "/fig1.coax"));
  EXPECT_EQ(parse_system(slurp(COAX_GOLDEN_DIR "/fig1.coax")), sys);
}

}  // namespace
}  // namespace coax
