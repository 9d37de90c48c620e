#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <stdexcept>

#include "coax/gen.hpp"
#include "gen_common.hpp"
#include "scan.hpp"

namespace coax {

using detail::Token;

std::vector<Graph::Edge> Graph::out(const std::string& v) const {
  std::vector<Edge> result;
  for (const auto& e : edges) {
    if (e.from == v) result.push_back(e);
  }
  std::sort(result.begin(), result.end(),
            [](const Edge& a, const Edge& b) { return a.to < b.to; });
  return result;
}

bool Graph::weighted() const {
  return std::all_of(edges.begin(), edges.end(), [](const Edge& e) { return e.weight.has_value(); });
}

Graph parse_graph(std::string_view text) {
  detail::Cursor in(detail::scan(text, {}, true));
  Graph g;
  std::vector<std::pair<Token, Token>> pending;  // endpoints checked at the end
  auto name = [&]() {
    Token t = in.expect(Token::Kind::Ident, "node name");
    if (detail::reserved_name(t.text)) in.fail_at(t, {"node name other than 'inf'"});
    return t;
  };
  while (!in.at_end()) {
    if (in.accept("\n")) continue;
    Token kw = in.expect(Token::Kind::Ident, "'node' or 'edge'");
    if (kw.text == "node") {
      g.nodes.insert(name().text);
    } else if (kw.text == "edge") {
      Token from = name();
      Token to = name();
      Graph::Edge e{from.text, to.text, std::nullopt};
      if (in.peek().kind == Token::Kind::Int) {
        Token w = in.take();
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(w.text.data(), w.text.data() + w.text.size(), v);
        if (ec != std::errc()) in.fail_at(w, {"weight in 64-bit range"});
        e.weight = v;
      }
      for (const auto& old : g.edges) {
        if (old.from == e.from && old.to == e.to) in.fail_at(from, {"edge not declared twice"});
      }
      g.edges.push_back(e);
      pending.emplace_back(from, to);
    } else {
      in.fail_at(kw, {"'node' or 'edge'"});
    }
    if (!in.at_end()) in.expect("\n");
  }
  for (const auto& [from, to] : pending) {
    if (!g.nodes.contains(from.text)) in.fail_at(from, {"declared node"});
    if (!g.nodes.contains(to.text)) in.fail_at(to, {"declared node"});
  }
  return g;
}

Term path_term(const std::vector<std::string>& nodes) {
  std::vector<Term> args;
  for (const auto& n : nodes) args.push_back(sym(n));
  return sym("path", std::move(args));
}

namespace {

// Distinct successors of every node, ordered.
std::map<std::string, std::vector<Graph::Edge>> adjacency(const Graph& g) {
  std::map<std::string, std::vector<Graph::Edge>> adj;
  for (const auto& v : g.nodes) adj[v] = g.out(v);
  return adj;
}

void require_weights(const Graph& g) {
  for (const auto& e : g.edges) {
    if (!e.weight) throw std::invalid_argument("edge " + e.from + " -> " + e.to + " has no weight");
  }
}

std::vector<std::string> targets(const Graph& g, const std::optional<std::string>& target) {
  if (!target) return {g.nodes.begin(), g.nodes.end()};
  if (!g.nodes.contains(*target)) throw std::invalid_argument("unknown target node " + *target);
  return {*target};
}

struct SimplePath {
  std::vector<std::string> nodes;  // from the start node to the target
  std::uint64_t weight = 0;
};

// All simple paths ending at `u`, grouped by start node.
std::map<std::string, std::vector<SimplePath>> simple_paths_to(const Graph& g,
                                                               const std::string& u,
                                                               detail::RuleBudget& budget) {
  std::map<std::string, std::vector<std::pair<std::string, std::uint64_t>>> preds;
  for (const auto& e : g.edges) preds[e.to].emplace_back(e.from, e.weight.value_or(0));
  std::map<std::string, std::vector<SimplePath>> out;
  std::vector<std::string> rev{u};
  std::function<void(std::uint64_t)> go = [&](std::uint64_t w) {
    budget.reserve(1);
    out[rev.back()].push_back({{rev.rbegin(), rev.rend()}, w});
    for (const auto& [p, pw] : preds[rev.back()]) {
      if (std::find(rev.begin(), rev.end(), p) != rev.end()) continue;
      rev.push_back(p);
      go(w + pw);
      rev.pop_back();
    }
  };
  go(0);
  return out;
}

// Calls `f` with every choice vector picking one index below sizes[i].
void for_each_choice(const std::vector<std::size_t>& sizes,
                     const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) return;
  std::vector<std::size_t> pick(sizes.size(), 0);
  while (true) {
    f(pick);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == sizes[i]) pick[i++] = 0;
    if (i == pick.size()) return;
  }
}

Term weight_term(std::optional<std::uint64_t> w) {
  return w ? num(static_cast<std::int64_t>(*w)) : Term::infinity();
}

}  // namespace

System gen_visit(const Graph& g, std::size_t cap) {
  const std::vector<std::string> nodes(g.nodes.begin(), g.nodes.end());
  const std::size_t n = nodes.size();
  if (n >= 8 * sizeof(std::size_t) - 1) throw InstantiationTooLarge(SIZE_MAX, cap);
  const std::size_t subsets = std::size_t{1} << n;
  auto adj = adjacency(g);

  detail::RuleBudget budget(cap);
  for (const auto& v : nodes) budget.reserve(detail::pow_sat(subsets, adj[v].size()));
  budget.reserve(n);

  std::vector<Term> set_of(subsets, Term::set({}));
  for (std::size_t m = 0; m < subsets; ++m) {
    std::vector<Term> elems;
    for (std::size_t i = 0; i < n; ++i) {
      if (m >> i & 1) elems.push_back(sym(nodes[i]));
    }
    set_of[m] = Term::set(std::move(elems));
  }
  auto visit = [](const std::string& v, const Term& s) { return sym("visit", {sym(v), s}); };

  std::vector<Rule> rules;
  for (std::size_t vi = 0; vi < n; ++vi) {
    const auto& succ = adj[nodes[vi]];
    std::vector<std::size_t> sizes(succ.size(), subsets);
    for_each_choice(sizes, [&](const std::vector<std::size_t>& pick) {
      std::size_t all = std::size_t{1} << vi;
      std::vector<Term> premises;
      for (std::size_t k = 0; k < succ.size(); ++k) {
        all |= pick[k];
        premises.push_back(visit(succ[k].to, set_of[pick[k]]));
      }
      rules.emplace_back(visit(nodes[vi], set_of[all]), std::move(premises));
    });
    rules.push_back(Rule::coaxiom(visit(nodes[vi], set_of[0])));
  }
  return System(std::move(rules));
}

System gen_dist(const Graph& g, const std::optional<std::string>& target, std::size_t cap) {
  require_weights(g);
  auto adj = adjacency(g);
  detail::RuleBudget budget(cap);
  std::vector<Rule> rules;
  auto dist = [](const std::string& v, const std::string& u, const Term& d) {
    return sym("dist", {sym(v), sym(u), d});
  };

  for (const auto& u : targets(g, target)) {
    // Candidate distances: weights of simple paths into u, plus infinity.
    std::set<std::uint64_t> weights;
    for (const auto& [v, paths] : simple_paths_to(g, u, budget)) {
      for (const auto& p : paths) weights.insert(p.weight);
    }
    std::vector<std::optional<std::uint64_t>> delta(weights.begin(), weights.end());
    delta.push_back(std::nullopt);

    rules.push_back(Rule::axiom(dist(u, u, num(0))));
    for (const auto& v : g.nodes) {
      if (v == u) continue;
      const auto& succ = adj[v];
      rules.push_back(Rule::coaxiom(dist(v, u, Term::infinity())));
      if (succ.empty()) {
        rules.push_back(Rule::axiom(dist(v, u, Term::infinity())));
        continue;
      }
      budget.reserve(detail::pow_sat(delta.size(), succ.size()));
      std::vector<std::size_t> sizes(succ.size(), delta.size());
      for_each_choice(sizes, [&](const std::vector<std::size_t>& pick) {
        std::optional<std::uint64_t> best;
        std::vector<Term> premises;
        for (std::size_t k = 0; k < succ.size(); ++k) {
          const auto& d = delta[pick[k]];
          premises.push_back(dist(succ[k].to, u, weight_term(d)));
          if (d && (!best || *succ[k].weight + *d < *best)) best = *succ[k].weight + *d;
        }
        if (best && !weights.contains(*best)) return;  // outside the finite universe
        rules.emplace_back(dist(v, u, weight_term(best)), std::move(premises));
      });
    }
  }
  return System(std::move(rules));
}

System gen_minpath(const Graph& g, const std::optional<std::string>& target, std::size_t cap) {
  require_weights(g);
  auto adj = adjacency(g);
  detail::RuleBudget budget(cap);
  std::vector<Rule> rules;
  const Term bot = sym("bot");
  auto min_path = [](const std::string& v, const std::string& u, const Term& p, const Term& d) {
    return sym("minPath", {sym(v), sym(u), p, d});
  };

  for (const auto& u : targets(g, target)) {
    auto paths = simple_paths_to(g, u, budget);
    rules.push_back(Rule::axiom(min_path(u, u, path_term({u}), num(0))));
    for (const auto& v : g.nodes) {
      if (v == u) continue;
      const auto& succ = adj[v];
      rules.push_back(Rule::coaxiom(min_path(v, u, bot, Term::infinity())));
      if (succ.empty()) {
        rules.push_back(Rule::axiom(min_path(v, u, bot, Term::infinity())));
        continue;
      }
      // Option j < paths(vk).size() is that path; the last option is bot.
      std::vector<std::size_t> sizes;
      std::size_t count = 1;
      for (const auto& e : succ) {
        sizes.push_back(paths[e.to].size() + 1);
        count = detail::mul_sat(count, sizes.back());
      }
      budget.reserve(count);
      for_each_choice(sizes, [&](const std::vector<std::size_t>& pick) {
        std::vector<Term> premises;
        // Lightest option; ties go to fewer edges, then to the smaller successor.
        std::optional<std::size_t> arg;
        std::uint64_t best_w = 0;
        std::size_t best_len = 0;
        for (std::size_t k = 0; k < succ.size(); ++k) {
          const auto& opts = paths[succ[k].to];
          if (pick[k] == opts.size()) {
            premises.push_back(min_path(succ[k].to, u, bot, Term::infinity()));
            continue;
          }
          const auto& p = opts[pick[k]];
          premises.push_back(min_path(succ[k].to, u, path_term(p.nodes),
                                      num(static_cast<std::int64_t>(p.weight))));
          std::uint64_t w = *succ[k].weight + p.weight;
          std::size_t len = p.nodes.size();
          if (!arg || w < best_w || (w == best_w && len < best_len)) {
            arg = k;
            best_w = w;
            best_len = len;
          }
        }
        if (!arg) {
          rules.emplace_back(min_path(v, u, bot, Term::infinity()), std::move(premises));
          return;
        }
        const auto& via = paths[succ[*arg].to][pick[*arg]].nodes;
        if (std::find(via.begin(), via.end(), v) != via.end()) return;  // not simple
        std::vector<std::string> full{v};
        full.insert(full.end(), via.begin(), via.end());
        rules.emplace_back(min_path(v, u, path_term(full), num(static_cast<std::int64_t>(best_w))),
                           std::move(premises));
      });
    }
  }
  return System(std::move(rules));
}

}  // namespace coax
