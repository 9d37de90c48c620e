#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "coax/system.hpp"
#include "coax/term.hpp"

namespace coax {

inline constexpr std::size_t kDefaultBudget = 100000;

enum class Phase : std::uint8_t { Inductive, Coinductive, Bound, Generated };

std::string_view to_string(Phase p);

/// Result of a fixpoint computation.
///
/// `trace` holds one set per iteration of the operator, ending with the
/// fixpoint itself: ascending for Inductive/Bound, descending for
/// Coinductive/Generated. For Generated, `bound_trace` additionally keeps the
/// ascending first-phase iterations that produced the bound.
struct Interpretation {
  JudgmentSet judgments;
  std::vector<JudgmentSet> trace;
  std::vector<JudgmentSet> bound_trace;
  Phase phase = Phase::Inductive;

  bool contains(const Term& j) const { return judgments.contains(j); }
};

/// One application of the inference operator: every conclusion of a rule
/// whose premises all lie in `s`. Co rules take part only when `use_co`.
JudgmentSet step(const System& sys, const JudgmentSet& s, bool use_co = false);

/// The system whose regular rules are all rules of `sys` (co rules re-tagged
/// regular) and which has no co rules.
System extend(const System& sys);

/// Regular rules of `sys` with conclusion in `s`; co rules are dropped.
System restrict(const System& sys, const JudgmentSet& s);

/// Least fixpoint of the regular rules, iterating upward from the empty set.
Interpretation ind(const System& sys, std::size_t budget = kDefaultBudget);

/// Greatest fixpoint of the regular rules, iterating downward from the set of
/// all regular-rule conclusions.
Interpretation coind(const System& sys, std::size_t budget = kDefaultBudget);

/// Inductive interpretation of the extended system: the closure of the co
/// rules under the regular ones.
Interpretation bound(const System& sys, std::size_t budget = kDefaultBudget);

/// Largest consistent subset of `beta`, by descending iteration from `beta`.
/// Throws NotPreFixed when one step from `beta` leaves it.
Interpretation kernel(const System& sys, const JudgmentSet& beta,
                      std::size_t budget = kDefaultBudget);

/// Interpretation generated by the co rules: kernel of the bound.
Interpretation generated(const System& sys, std::size_t budget = kDefaultBudget);

}  // namespace coax
