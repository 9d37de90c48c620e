#include "coax/proof.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>

#include "coax/fixpoint.hpp"
#include "engine.hpp"

namespace coax {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Candidate {
  RuleRef ref;
  const System::Compiled* rule;
};

std::vector<Candidate> candidates(const System& sys, System::Id id, bool with_co) {
  std::vector<Candidate> out;
  for (auto i : sys.regular_by_conclusion(id)) out.push_back({{i, false}, &sys.compiled_regular()[i]});
  if (with_co) {
    for (auto i : sys.co_by_conclusion(id)) out.push_back({{i, true}, &sys.compiled_co()[i]});
  }
  return out;
}

class WfBuilder {
 public:
  explicit WfBuilder(const System& sys) : sys_(sys) {
    auto chain = detail::ascend(sys, true, kDefaultBudget);
    entry_ = detail::entry_levels(chain, sys.universe().size());
    memo_.assign(entry_.size(), kNone);
  }

  bool in_bound(System::Id id) const { return entry_[id] != 0; }

  // Proof node for a judgment in the bound, appended to `out`.
  std::size_t build(System::Id id, WfProof& out) {
    if (memo_[id] != kNone) return memo_[id];
    const std::size_t k = entry_[id];
    for (const auto& c : candidates(sys_, id, true)) {
      bool earlier = std::all_of(c.rule->premises.begin(), c.rule->premises.end(),
                                 [&](System::Id p) { return entry_[p] != 0 && entry_[p] < k; });
      if (!earlier) continue;
      ProofNode node{sys_.term(id), c.ref, {}};
      for (auto p : c.rule->premises) node.children.push_back(build(p, out));
      out.nodes.push_back(std::move(node));
      return memo_[id] = out.nodes.size() - 1;
    }
    // Unreachable for judgments in the bound.
    throw std::logic_error("no rule fires below entry level");
  }

 private:
  const System& sys_;
  std::vector<std::size_t> entry_;
  std::vector<std::size_t> memo_;
};

}  // namespace

std::size_t WfProof::height() const {
  std::vector<std::size_t> h(nodes.size(), kNone);
  std::function<std::size_t(std::size_t)> go = [&](std::size_t i) -> std::size_t {
    if (h[i] != kNone) return h[i];
    std::size_t best = 0;
    for (auto c : nodes[i].children) best = std::max(best, go(c) + 1);
    return h[i] = best;
  };
  return nodes.empty() ? 0 : go(root);
}

namespace {

// Minimal depth of every node reachable from root (kNone if unreachable).
// Assumes an acyclic node graph.
std::vector<std::size_t> min_depths(const WfProof& p) {
  std::vector<std::size_t> d(p.nodes.size(), kNone);
  if (p.nodes.empty() || p.root >= p.nodes.size()) return d;
  std::deque<std::size_t> queue{p.root};
  d[p.root] = 0;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (auto c : p.nodes[i].children) {
      if (c < d.size() && d[c] == kNone) {
        d[c] = d[i] + 1;
        queue.push_back(c);
      }
    }
  }
  return d;
}

}  // namespace

std::optional<std::size_t> WfProof::min_co_depth() const {
  auto d = min_depths(*this);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (d[i] != kNone && nodes[i].rule.co && (!best || d[i] < *best)) best = d[i];
  }
  return best;
}

WfProof WfProof::subtree(std::size_t node) const {
  WfProof out = *this;
  out.root = node;
  return out;
}

std::optional<WfProof> prove_wf(const System& sys, const Term& j) {
  auto id = sys.id_of(j);
  if (!id) return std::nullopt;
  WfBuilder b(sys);
  if (!b.in_bound(*id)) return std::nullopt;
  WfProof out;
  out.root = b.build(*id, out);
  return out;
}

std::optional<WfProof> prove_approx(const System& sys, const Term& j, std::size_t n) {
  if (n == 0) return prove_wf(sys, j);
  auto id = sys.id_of(j);
  if (!id) return std::nullopt;

  auto up = detail::ascend(sys, true, kDefaultBudget);
  // levels[k] = step^k(bound); beyond the chain the set is constant.
  std::vector<detail::Mask> levels{up.back()};
  for (auto& m : detail::descend(sys, up.back(), kDefaultBudget)) levels.push_back(std::move(m));
  auto level = [&](std::size_t k) -> const detail::Mask& {
    return levels[std::min(k, levels.size() - 1)];
  };
  if (!level(n)[*id]) return std::nullopt;

  WfBuilder base(sys);
  WfProof out;
  std::map<std::pair<System::Id, std::size_t>, std::size_t> memo;
  // Above the chain's fixpoint every level behaves the same, but depth still
  // has to reach n, so memoize on the actual level.
  std::function<std::size_t(System::Id, std::size_t)> build = [&](System::Id i,
                                                                  std::size_t k) -> std::size_t {
    if (k == 0) return base.build(i, out);
    if (auto it = memo.find({i, k}); it != memo.end()) return it->second;
    const auto& below = level(k - 1);
    for (auto r : sys.regular_by_conclusion(i)) {
      const auto& rule = sys.compiled_regular()[r];
      if (!detail::premises_in(rule, below)) continue;
      ProofNode node{sys.term(i), {r, false}, {}};
      for (auto p : rule.premises) node.children.push_back(build(p, k - 1));
      out.nodes.push_back(std::move(node));
      return memo[{i, k}] = out.nodes.size() - 1;
    }
    throw std::logic_error("no rule fires inside the previous level");
  };
  out.root = build(*id, n);
  return out;
}

std::optional<RegularProof> prove_regular(const System& sys, const Term& j) {
  auto id = sys.id_of(j);
  if (!id) return std::nullopt;
  auto up = detail::ascend(sys, true, kDefaultBudget);
  const auto gen = detail::descend(sys, up.back(), kDefaultBudget).back();
  if (!gen[*id]) return std::nullopt;

  RegularProof out{j, {}};
  std::vector<bool> seen(gen.size(), false);
  std::deque<System::Id> queue{*id};
  seen[*id] = true;
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop_front();
    for (auto r : sys.regular_by_conclusion(i)) {
      const auto& rule = sys.compiled_regular()[r];
      if (!detail::premises_in(rule, gen)) continue;
      out.choice.emplace(sys.term(i), r);
      for (auto p : rule.premises) {
        if (!seen[p]) {
          seen[p] = true;
          queue.push_back(p);
        }
      }
      break;
    }
  }
  return out;
}

std::string to_string(Violation::Reason r) {
  using R = Violation::Reason;
  switch (r) {
    case R::UnknownRule: return "unknown-rule";
    case R::ConclusionMismatch: return "conclusion-mismatch";
    case R::PremiseMismatch: return "premise-mismatch";
    case R::CoRuleTooShallow: return "co-rule-too-shallow";
    case R::MissingChoice: return "missing-choice";
    case R::NotInBound: return "not-in-bound";
    case R::Cyclic: return "cyclic";
    case R::WrongMode: return "wrong-mode";
  }
  return "?";
}

namespace {

bool rule_exists(const System& sys, RuleRef ref) {
  return ref.co ? ref.index < sys.co_rules().size() : ref.index < sys.regular_rules().size();
}

// Checks that the rule applied at a node concludes its judgment and that the
// children carry exactly its premises, each once.
void check_node(const System& sys, const Term& judgment, RuleRef ref,
                const std::vector<Term>& children, std::size_t depth,
                std::vector<Violation>& out) {
  using R = Violation::Reason;
  if (!rule_exists(sys, ref)) {
    out.push_back({R::UnknownRule, judgment, depth,
                   (ref.co ? "c" : "r") + std::to_string(ref.index)});
    return;
  }
  const Rule& rule = sys.rule(ref);
  if (!(rule.conclusion() == judgment)) {
    out.push_back({R::ConclusionMismatch, judgment, depth,
                   "rule concludes " + rule.conclusion().to_string()});
  }
  auto labels = children;
  std::sort(labels.begin(), labels.end());
  bool distinct = std::adjacent_find(labels.begin(), labels.end()) == labels.end();
  if (!distinct || !std::equal(labels.begin(), labels.end(), rule.premises().begin(),
                               rule.premises().end())) {
    out.push_back({R::PremiseMismatch, judgment, depth, "children do not match premises"});
  }
}

}  // namespace

ValidationReport validate(const System& sys, const WfProof& proof, ValidationMode mode) {
  using R = Violation::Reason;
  ValidationReport report;
  auto& out = report.violations;
  if (mode.kind == ValidationMode::Kind::RegularGenerated) {
    out.push_back({R::WrongMode, proof.nodes.empty() ? Term::symbol("?") : proof.root_node().judgment,
                   0, "well-founded proof checked as regular"});
    return report;
  }
  if (proof.root >= proof.nodes.size()) {
    out.push_back({R::UnknownRule, Term::symbol("?"), 0, "root index out of range"});
    return report;
  }

  // Cycle detection over the node graph reachable from root.
  enum Colour : std::uint8_t { White, Grey, Black };
  std::vector<Colour> colour(proof.nodes.size(), White);
  bool cyclic = false;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{proof.root, 0}};
  colour[proof.root] = Grey;
  while (!stack.empty() && !cyclic) {
    auto& [i, next] = stack.back();
    const auto& kids = proof.nodes[i].children;
    if (next == kids.size()) {
      colour[i] = Black;
      stack.pop_back();
      continue;
    }
    auto c = kids[next++];
    if (c >= proof.nodes.size()) continue;
    if (colour[c] == Grey) {
      out.push_back({R::Cyclic, proof.nodes[c].judgment, 0, "node graph has a cycle"});
      cyclic = true;
    } else if (colour[c] == White) {
      colour[c] = Grey;
      stack.push_back({c, 0});
    }
  }
  if (cyclic) return report;

  auto depth = min_depths(proof);
  for (std::size_t i = 0; i < proof.nodes.size(); ++i) {
    if (depth[i] == kNone) continue;
    const auto& node = proof.nodes[i];
    std::vector<Term> labels;
    bool dangling = false;
    for (auto c : node.children) {
      if (c >= proof.nodes.size()) {
        dangling = true;
      } else {
        labels.push_back(proof.nodes[c].judgment);
      }
    }
    if (dangling) {
      out.push_back({R::PremiseMismatch, node.judgment, depth[i], "child index out of range"});
    } else {
      check_node(sys, node.judgment, node.rule, labels, depth[i], out);
    }
    if (mode.kind == ValidationMode::Kind::Approx && node.rule.co && depth[i] < mode.level) {
      out.push_back({R::CoRuleTooShallow, node.judgment, depth[i],
                     "co rule at depth " + std::to_string(depth[i]) + " < " +
                         std::to_string(mode.level)});
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Violation& a, const Violation& b) { return a.depth < b.depth; });
  return report;
}

ValidationReport validate(const System& sys, const RegularProof& proof, ValidationMode mode) {
  using R = Violation::Reason;
  ValidationReport report;
  auto& out = report.violations;
  if (mode.kind != ValidationMode::Kind::RegularGenerated) {
    out.push_back({R::WrongMode, proof.root, 0, "regular proof checked as well-founded"});
    return report;
  }
  if (!proof.choice.contains(proof.root)) {
    out.push_back({R::MissingChoice, proof.root, 0, "root has no chosen rule"});
  }
  const auto bound_mask = detail::ascend(sys, true, kDefaultBudget).back();
  for (const auto& [j, index] : proof.choice) {
    RuleRef ref{index, false};
    if (!rule_exists(sys, ref)) {
      out.push_back({R::UnknownRule, j, 0, "r" + std::to_string(index)});
    } else {
      const Rule& rule = sys.rule(ref);
      if (!(rule.conclusion() == j)) {
        out.push_back({R::ConclusionMismatch, j, 0,
                       "rule concludes " + rule.conclusion().to_string()});
      }
      for (const auto& p : rule.premises()) {
        if (!proof.choice.contains(p)) {
          out.push_back({R::MissingChoice, p, 0, "premise of " + j.to_string()});
        }
      }
    }
    auto id = sys.id_of(j);
    if (!id || !bound_mask[*id]) out.push_back({R::NotInBound, j, 0, {}});
  }
  return report;
}

}  // namespace coax
