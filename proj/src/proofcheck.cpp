#include "coax/proofcheck.hpp"

#include "engine.hpp"

namespace coax {

namespace {

// Membership in step(sys, s) for a single judgment, including terms outside
// the universe (never inferable).
bool inferable(const System& sys, const detail::Mask& s, const Term& j) {
  auto id = sys.id_of(j);
  if (!id) return false;
  for (auto r : sys.regular_by_conclusion(*id)) {
    if (detail::premises_in(sys.compiled_regular()[r], s)) return true;
  }
  return false;
}

}  // namespace

bool is_closed(const System& sys, const JudgmentSet& s) {
  auto next = step(sys, s);
  for (const auto& j : next) {
    if (!s.contains(j)) return false;
  }
  return true;
}

bool is_consistent(const System& sys, const JudgmentSet& s) {
  auto mask = detail::to_mask(sys, s);
  for (const auto& j : s) {
    if (!inferable(sys, mask, j)) return false;
  }
  return true;
}

std::string to_string(Verdict::Reason r) {
  return r == Verdict::Reason::NotInBound ? "not-in-bound" : "not-consistent";
}

Verdict bounded_coinduction(const System& sys, const JudgmentSet& s, std::size_t budget) {
  const auto b = detail::ascend(sys, true, budget).back();
  const auto mask = detail::to_mask(sys, s);
  Verdict v;
  for (const auto& j : s) {
    auto id = sys.id_of(j);
    if (!id || !b[*id]) v.failures.push_back({j, Verdict::Reason::NotInBound});
    if (!inferable(sys, mask, j)) v.failures.push_back({j, Verdict::Reason::NotConsistent});
  }
  v.accepted = v.failures.empty();
  return v;
}

std::string to_string(const LevelWitness& w) {
  switch (w.kind) {
    case LevelWitness::Kind::NotInBound: return "NotInBound";
    case LevelWitness::Kind::DropsAtLevel: return "DropsAtLevel(" + std::to_string(w.level) + ")";
    case LevelWitness::Kind::SurvivesTo:
      return "SurvivesTo(" + std::to_string(w.level) + (w.exact ? ", generated)" : ")");
  }
  return "?";
}

LevelWitness level_witness(const System& sys, const Term& j, std::size_t max_n,
                           std::size_t budget) {
  auto id = sys.id_of(j);
  if (!id) return {LevelWitness::Kind::NotInBound, 0, false};
  const auto b = detail::ascend(sys, true, budget).back();
  if (!b[*id]) return {LevelWitness::Kind::NotInBound, 0, false};

  // chain[k-1] = step^k(bound); the last entry is the fixpoint.
  const auto chain = detail::descend(sys, b, budget);
  for (std::size_t n = 1; n <= max_n; ++n) {
    if (n > chain.size()) return {LevelWitness::Kind::SurvivesTo, max_n, true};
    if (!chain[n - 1][*id]) return {LevelWitness::Kind::DropsAtLevel, n, false};
  }
  return {LevelWitness::Kind::SurvivesTo, max_n, max_n >= chain.size()};
}

}  // namespace coax
