#pragma once

// Id-level fixpoint machinery shared by the engine, proof construction and
// the reasoning checks. Sets of judgments are bit masks over System ids.

#include <cstddef>
#include <vector>

#include "coax/system.hpp"
#include "coax/term.hpp"

namespace coax::detail {

using Mask = std::vector<bool>;

Mask to_mask(const System& sys, const JudgmentSet& s);
JudgmentSet to_set(const System& sys, const Mask& m);
bool subset(const Mask& a, const Mask& b);

bool premises_in(const System::Compiled& rule, const Mask& s);

/// One inference step over regular rules (plus co rules when `use_co`).
Mask step(const System& sys, const Mask& s, bool use_co);

/// Ascending iterates s1 = step(empty), s2 = step(s1), ... ending at the
/// least fixpoint; the repeated fixpoint is not duplicated.
std::vector<Mask> ascend(const System& sys, bool use_co, std::size_t budget);

/// Descending iterates s_{k+1} = step(s_k) & beta from s_0 = beta, ending at
/// the greatest fixpoint below beta. beta itself is not included.
std::vector<Mask> descend(const System& sys, const Mask& beta, std::size_t budget);

/// Iteration at which each judgment entered an ascending chain (1-based);
/// 0 for judgments never reached.
std::vector<std::size_t> entry_levels(const std::vector<Mask>& chain, std::size_t n);

Mask conclusions(const System& sys);

}  // namespace coax::detail
