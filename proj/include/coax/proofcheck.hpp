#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "coax/fixpoint.hpp"
#include "coax/system.hpp"
#include "coax/term.hpp"

namespace coax {

/// step(sys, s) is contained in s (regular rules only).
bool is_closed(const System& sys, const JudgmentSet& s);
/// s is contained in step(sys, s) (regular rules only).
bool is_consistent(const System& sys, const JudgmentSet& s);

struct Verdict {
  enum class Reason { NotInBound, NotConsistent };
  struct Failure {
    Term judgment;
    Reason reason;
  };

  bool accepted = true;
  std::vector<Failure> failures;  // by judgment, NotInBound first
};

std::string to_string(Verdict::Reason r);

/// Bounded coinduction: accepts when s lies inside the bound and is
/// consistent, in which case s is contained in generated(sys).
Verdict bounded_coinduction(const System& sys, const JudgmentSet& s,
                            std::size_t budget = kDefaultBudget);

struct LevelWitness {
  enum class Kind { NotInBound, DropsAtLevel, SurvivesTo };
  Kind kind = Kind::NotInBound;
  std::size_t level = 0;
  // SurvivesTo only: the descending chain reached its fixpoint within the
  // range, so the judgment survives every level (it is generated).
  bool exact = false;

  friend bool operator==(const LevelWitness&, const LevelWitness&) = default;
};

std::string to_string(const LevelWitness& w);

/// Least n <= max_n with j outside step^n(bound), if any.
LevelWitness level_witness(const System& sys, const Term& j, std::size_t max_n,
                           std::size_t budget = kDefaultBudget);

}  // namespace coax
