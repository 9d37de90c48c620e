// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <sstream>
#include <string>

#include "coax/dsl.hpp"
#include "coax/fixpoint.hpp"
#include "coax/gen.hpp"
#include "coax/proof.hpp"
#include "coax/proofcheck.hpp"
#include "support/oracle.hpp"

namespace {

using namespace coax;
using testing::Mask;
using testing::RandomSystem;

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(COAX_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing data file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

JudgmentSet set_of(std::initializer_list<const char*> items) {
  JudgmentSet out;
  for (const char* s : items) out.insert(parse_judgment(s));
  return out;
}

bool includes(const JudgmentSet& big, const JudgmentSet& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// Empty string: criterion met. Otherwise the first discrepancy.
using Check = std::function<std::string()>;

std::string expect_set(const std::string& what, const JudgmentSet& got, const JudgmentSet& want) {
  if (got == want) return {};
  return what + ": got " + to_string(got) + ", want " + to_string(want);
}

const std::vector<RandomSystem>& corpus() {
  static const auto c = testing::corpus(250);
  return c;
}

std::string visit_regression() {
  auto sys = parse_system(slurp("fig1.coax"));
  auto r = generated(sys);
  if (auto e = expect_set("generated", r.judgments,
                          set_of({"visit(a,{a,b})", "visit(b,{a,b})", "visit(c,{c})"}));
      !e.empty()) {
    return e;
  }
  const std::vector<JudgmentSet> up{
      set_of({"visit(a,{})", "visit(b,{})", "visit(c,{})", "visit(c,{c})"}),
      set_of({"visit(a,{})", "visit(b,{})", "visit(c,{})", "visit(c,{c})", "visit(a,{a})",
              "visit(b,{b})"}),
      set_of({"visit(a,{})", "visit(b,{})", "visit(c,{})", "visit(c,{c})", "visit(a,{a})",
              "visit(b,{b})", "visit(a,{a,b})", "visit(b,{a,b})"}),
  };
  const std::vector<JudgmentSet> down{
      set_of({"visit(c,{c})", "visit(a,{a})", "visit(b,{b})", "visit(a,{a,b})", "visit(b,{a,b})"}),
      set_of({"visit(c,{c})", "visit(a,{a,b})", "visit(b,{a,b})"}),
  };
  if (r.bound_trace != up) return "first-phase listing differs";
  if (r.trace != down) return "second-phase listing differs";
  return {};
}

std::string list_regressions() {
  auto eqs = parse_equations(slurp("ones.eq"));
  struct Case {
    ListPred pred;
    std::optional<Term> elem;
    const char* want;
  };
  for (const auto& c : std::vector<Case>{{ListPred::AllPos, std::nullopt, "allPos(l,T)"},
                                         {ListPred::Member, num(2), "member(2,l,F)"},
                                         {ListPred::Elems, std::nullopt, "elems(l,{1})"},
                                         {ListPred::MaxElem, std::nullopt, "maxElem(l,1)"}}) {
    auto start = std::chrono::steady_clock::now();
    auto got = generated(gen_listpred(eqs, c.pred, "l", c.elem)).judgments;
    if (std::chrono::steady_clock::now() - start > std::chrono::seconds(1)) {
      return std::string(c.want) + ": slower than 1 s";
    }
    if (auto e = expect_set(c.want, got, set_of({c.want})); !e.empty()) return e;
  }
  return {};
}

std::string tree_paths() {
  auto eqs = parse_equations(slurp("trees.eq"));
  if (!generated(gen_listpred(eqs, ListPred::Path0, "t1")).contains(parse_judgment("path0(t1)"))) {
    return "path0(t1) not generated";
  }
  if (generated(gen_listpred(eqs, ListPred::Path0, "t2")).contains(parse_judgment("path0(t2)"))) {
    return "path0(t2) generated";
  }
  return {};
}

std::string digit_addition() {
  auto eqs = parse_equations(slurp("digits.eq"));
  if (!generated(gen_add(eqs, "z", "z", "n")).contains(parse_judgment("add(z,z,n,-1)"))) {
    return "add(0..., 0..., 9..., -1) not generated";
  }
  if (!generated(gen_add(eqs, "n", "n", "z")).contains(parse_judgment("add(n,n,z,2)"))) {
    return "add(9..., 9..., 0..., 2) not generated";
  }
  const Term wrong = parse_judgment("add(z,z,z,1)");
  if (generated(gen_add(eqs, "z", "z", "z")).contains(wrong)) {
    return "add(0..., 0..., 0..., 1) generated with carries {-1,0,1,2}";
  }
  std::vector<std::int64_t> wide;
  for (std::int64_t c = -10; c <= 10; ++c) wide.push_back(c);
  auto sys = gen_add(eqs, "z", "z", "z", wide);
  if (!generated(sys).contains(wrong)) {
    return "add(0..., 0..., 0..., 1) not generated with carries [-10,10] (" +
           to_string(level_witness(sys, wrong, 100)) + ")";
  }
  return {};
}

// Plain Dijkstra towards `target` over the reversed edges.
std::map<std::string, std::optional<std::uint64_t>> dijkstra_to(const Graph& g,
                                                                  const std::string& target) {
  std::map<std::string, std::optional<std::uint64_t>> d;
  for (const auto& v : g.nodes) d[v] = std::nullopt;
  using Item = std::pair<std::uint64_t, std::string>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  d[target] = 0;
  pq.push({0, target});
  while (!pq.empty()) {
    auto [du, u] = pq.top();
    pq.pop();
    if (du != *d[u]) continue;
    for (const auto& e : g.edges) {
      if (e.to == u && (!d[e.from] || du + *e.weight < *d[e.from])) {
        d[e.from] = du + *e.weight;
        pq.push({*d[e.from], e.from});
      }
    }
  }
  return d;
}

std::string graph_distances() {
  auto g = parse_graph(slurp("g2.graph"));
  auto oracle = dijkstra_to(g, "e");
  const std::map<std::string, std::uint64_t> stated{{"a", 5}, {"b", 5}, {"c", 6}, {"d", 7}, {"e", 0}};
  for (const auto& [v, d] : stated) {
    if (oracle[v] != d) return "oracle disagrees with the stated distance for " + v;
  }
  auto gen = generated(gen_dist(g)).judgments;
  for (const auto& [v, d] : oracle) {
    JudgmentSet got;
    for (const auto& j : gen) {
      if (j.args()[0] == sym(v) && j.args()[1] == sym("e")) got.insert(j);
    }
    Term want = d ? num(static_cast<std::int64_t>(*d)) : Term::infinity();
    if (auto e = expect_set("dist " + v, got, {sym("dist", {sym(v), sym("e"), want})}); !e.empty()) {
      return e;
    }
  }
  if (!gen.contains(parse_judgment("dist(a,d,inf)"))) return "dist(a,d,inf) not generated";

  auto sys = gen_dist(g, std::string("e"));
  JudgmentSet co_ae, gen_ae;
  for (const auto& j : coind(sys).judgments) {
    if (j.args()[0] == sym("a")) co_ae.insert(j);
  }
  for (const auto& j : generated(sys).judgments) {
    if (j.args()[0] == sym("a")) gen_ae.insert(j);
  }
  if (!(includes(co_ae, gen_ae) && co_ae.size() > gen_ae.size())) {
    return "coind " + to_string(co_ae) + " does not strictly exceed generated " + to_string(gen_ae);
  }
  return {};
}

std::string lambda_divergence() {
  auto e = parse_lambda(slurp("omega.lam"));
  const Term root = encode_lambda(e);
  const Term delta = encode_lambda(parse_lambda("\\x. x x"));
  return expect_set("generated", generated(gen_lambda(e)).judgments,
                    {sym("eval", {root, Term::infinity()}), sym("eval", {delta, delta})});
}

std::string oracle_equivalence() {
  if (corpus().size() < 200) return "corpus too small";
  for (std::size_t i = 0; i < corpus().size(); ++i) {
    const auto& rs = corpus()[i];
    const auto sys = rs.build();
    const std::string at = "system " + std::to_string(i) + ": ";
    if (generated(sys).judgments != rs.set(rs.generated())) return at + "generated";
    if (ind(sys).judgments != rs.set(rs.ind())) return at + "ind";
    if (coind(sys).judgments != rs.set(rs.coind())) return at + "coind";
  }
  return {};
}

std::string proof_objects() {
  for (std::size_t s = 0; s < corpus().size(); ++s) {
    const auto& rs = corpus()[s];
    const auto sys = rs.build();
    const Mask b = rs.bound(), g = rs.generated();
    for (std::size_t i = 0; i < rs.atoms; ++i) {
      const Term j = testing::atom(i);
      const std::string at = "system " + std::to_string(s) + ", " + j.to_string() + ": ";
      auto wf = prove_wf(sys, j);
      if (wf.has_value() != bool(b >> i & 1)) return at + "prove_wf";
      if (wf && !validate(sys, *wf, ValidationMode::wf_extended()).passed()) return at + "wf invalid";
      for (std::size_t n = 0; n <= rs.atoms + 2; ++n) {
        auto p = prove_approx(sys, j, n);
        if (p.has_value() != bool(rs.level(n) >> i & 1)) return at + "prove_approx " + std::to_string(n);
        if (p && !validate(sys, *p, ValidationMode::approx(n)).passed()) {
          return at + "approx invalid at " + std::to_string(n);
        }
      }
      auto reg = prove_regular(sys, j);
      if (reg.has_value() != bool(g >> i & 1)) return at + "prove_regular";
      if (reg && !validate(sys, *reg).passed()) return at + "regular invalid";
    }
  }
  return {};
}

std::string technique_checks() {
  std::mt19937 rng(4242);
  for (std::size_t s = 0; s < corpus().size(); ++s) {
    const auto& rs = corpus()[s];
    const auto sys = rs.build();
    const std::string at = "system " + std::to_string(s) + ": ";
    const Mask g = rs.generated();
    if (!bounded_coinduction(sys, rs.set(g)).accepted) return at + "generated rejected";
    for (int t = 0; t < 30; ++t) {
      Mask m = std::uniform_int_distribution<Mask>(0, rs.full())(rng);
      if (t % 2 == 0) m &= rs.bound();
      if (bounded_coinduction(sys, rs.set(m)).accepted && (m & ~g) != 0) return at + "unsound accept";
    }
    const std::size_t max_n = rs.atoms + 2;
    for (std::size_t i = 0; i < rs.atoms; ++i) {
      const Term j = testing::atom(i);
      auto w = level_witness(sys, j, max_n);
      for (std::size_t n = 0; n <= max_n; ++n) {
        const bool provable = prove_approx(sys, j, n).has_value();
        bool expected = false;
        switch (w.kind) {
          case LevelWitness::Kind::NotInBound: expected = false; break;
          case LevelWitness::Kind::DropsAtLevel: expected = n < w.level; break;
          case LevelWitness::Kind::SurvivesTo: expected = true; break;
        }
        if (provable != expected) return at + j.to_string() + " " + to_string(w) + " at " + std::to_string(n);
      }
    }
  }
  return {};
}

std::string endpoint_laws() {
  std::mt19937 rng(77);
  for (std::size_t s = 0; s < corpus().size(); ++s) {
    const auto& rs = corpus()[s];
    const std::string at = "system " + std::to_string(s) + ": ";
    auto plain = rs;
    std::erase_if(plain.rules, [](const auto& r) { return r.co; });
    if (generated(plain.build()).judgments != ind(plain.build()).judgments) return at + "no co rules";
    auto all = plain;
    for (const auto& r : plain.rules) all.rules.push_back({0, r.conclusion, true});
    if (generated(all.build()).judgments != coind(plain.build()).judgments) return at + "all coaxioms";
    auto more = rs;
    std::uniform_int_distribution<std::size_t> pick(0, rs.atoms - 1);
    for (int k = 0; k < 2; ++k) more.rules.push_back({0, pick(rng), true});
    if (!includes(generated(more.build()).judgments, generated(rs.build()).judgments)) {
      return at + "not monotone in coaxioms";
    }
  }
  return {};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    Check check;
  };
  const std::vector<Criterion> criteria{
      {1, "visit on the three-node graph, with iteration listings", 1, visit_regression},
      {2, "list predicates on the list of ones", 4, list_regressions},
      {3, "path0 on the two rational trees", 1, tree_paths},
      {4, "digit-stream addition and the carry window", 2, digit_addition},
      {5, "distances against Dijkstra, coind exceeds generated", 2, graph_distances},
      {6, "self-application diverges", 1, lambda_divergence},
      {7, "fixpoints against brute force on the random corpus", 60, oracle_equivalence},
      {8, "proof objects exist exactly where they should and validate", 60, proof_objects},
      {9, "bounded coinduction and level witnesses", 60, technique_checks},
      {10, "endpoint and monotonicity laws", 60, endpoint_laws},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    try {
      detail = c.check();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (detail.empty() && secs > c.limit_s) detail = "took longer than the limit";
    std::printf("%s  criterion %2d  %-60s %8.3f s (limit %g s)%s%s\n", detail.empty() ? "PASS" : "FAIL",
                c.id, c.name, secs, c.limit_s, detail.empty() ? "" : "  -- ", detail.c_str());
    failed += !detail.empty();
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
