#include "coax/fixpoint.hpp"

#include "coax/errors.hpp"
#include "engine.hpp"

namespace coax {

namespace detail {

Mask to_mask(const System& sys, const JudgmentSet& s) {
  Mask m(sys.universe().size(), false);
  for (const auto& t : s) {
    if (auto id = sys.id_of(t)) m[*id] = true;
  }
  return m;
}

JudgmentSet to_set(const System& sys, const Mask& m) {
  JudgmentSet out;
  for (System::Id i = 0; i < m.size(); ++i) {
    if (m[i]) out.insert(out.end(), sys.term(i));
  }
  return out;
}

bool subset(const Mask& a, const Mask& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && !b[i]) return false;
  }
  return true;
}

bool premises_in(const System::Compiled& rule, const Mask& s) {
  for (auto p : rule.premises) {
    if (!s[p]) return false;
  }
  return true;
}

Mask step(const System& sys, const Mask& s, bool use_co) {
  Mask out(s.size(), false);
  for (const auto& r : sys.compiled_regular()) {
    if (!out[r.conclusion] && premises_in(r, s)) out[r.conclusion] = true;
  }
  if (use_co) {
    for (const auto& r : sys.compiled_co()) {
      if (!out[r.conclusion] && premises_in(r, s)) out[r.conclusion] = true;
    }
  }
  return out;
}

std::vector<Mask> ascend(const System& sys, bool use_co, std::size_t budget) {
  std::vector<Mask> chain;
  Mask cur(sys.universe().size(), false);
  for (std::size_t applied = 1;; ++applied) {
    if (applied > budget) throw BudgetExceeded(budget);
    Mask next = step(sys, cur, use_co);
    if (!chain.empty() && next == cur) break;
    chain.push_back(next);
    cur = std::move(next);
  }
  return chain;
}

std::vector<Mask> descend(const System& sys, const Mask& beta, std::size_t budget) {
  std::vector<Mask> chain;
  Mask cur = beta;
  for (std::size_t applied = 1;; ++applied) {
    if (applied > budget) throw BudgetExceeded(budget);
    Mask next = step(sys, cur, false);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = next[i] && beta[i];
    if (!chain.empty() && next == cur) break;
    chain.push_back(next);
    cur = std::move(next);
  }
  return chain;
}

std::vector<std::size_t> entry_levels(const std::vector<Mask>& chain, std::size_t n) {
  std::vector<std::size_t> entry(n, 0);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (chain[k][i] && entry[i] == 0) entry[i] = k + 1;
    }
  }
  return entry;
}

Mask conclusions(const System& sys) {
  Mask m(sys.universe().size(), false);
  for (const auto& r : sys.compiled_regular()) m[r.conclusion] = true;
  return m;
}

}  // namespace detail

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::Inductive: return "inductive";
    case Phase::Coinductive: return "coinductive";
    case Phase::Bound: return "bound";
    case Phase::Generated: return "generated";
  }
  return "?";
}

JudgmentSet step(const System& sys, const JudgmentSet& s, bool use_co) {
  return detail::to_set(sys, detail::step(sys, detail::to_mask(sys, s), use_co));
}

System extend(const System& sys) {
  std::vector<Rule> rules(sys.regular_rules().begin(), sys.regular_rules().end());
  for (const auto& r : sys.co_rules()) rules.push_back(r.with_kind(RuleKind::Regular));
  return System(std::move(rules));
}

System restrict(const System& sys, const JudgmentSet& s) {
  std::vector<Rule> rules;
  for (const auto& r : sys.regular_rules()) {
    if (s.contains(r.conclusion())) rules.push_back(r);
  }
  return System(std::move(rules));
}

namespace {

Interpretation from_chain(const System& sys, const std::vector<detail::Mask>& chain,
                          Phase phase) {
  Interpretation out;
  out.phase = phase;
  out.trace.reserve(chain.size());
  for (const auto& m : chain) out.trace.push_back(detail::to_set(sys, m));
  out.judgments = out.trace.back();
  return out;
}

}  // namespace

Interpretation ind(const System& sys, std::size_t budget) {
  return from_chain(sys, detail::ascend(sys, false, budget), Phase::Inductive);
}

Interpretation coind(const System& sys, std::size_t budget) {
  return from_chain(sys, detail::descend(sys, detail::conclusions(sys), budget),
                    Phase::Coinductive);
}

Interpretation bound(const System& sys, std::size_t budget) {
  return from_chain(sys, detail::ascend(sys, true, budget), Phase::Bound);
}

Interpretation kernel(const System& sys, const JudgmentSet& beta, std::size_t budget) {
  // Judgments outside the universe have no rules; they drop after one step.
  JudgmentSet once = step(sys, beta);
  for (const auto& j : once) {
    if (!beta.contains(j)) throw NotPreFixed(j);
  }
  auto chain = detail::descend(sys, detail::to_mask(sys, beta), budget);
  return from_chain(sys, chain, Phase::Coinductive);
}

Interpretation generated(const System& sys, std::size_t budget) {
  auto up = detail::ascend(sys, true, budget);
  auto down = detail::descend(sys, up.back(), budget);
  Interpretation out = from_chain(sys, down, Phase::Generated);
  out.bound_trace = from_chain(sys, up, Phase::Bound).trace;
  return out;
}

}  // namespace coax
