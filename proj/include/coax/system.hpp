#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coax/term.hpp"

namespace coax {

enum class RuleKind : std::uint8_t { Regular, Co };

/// An inference rule: a finite premise set and a conclusion.
///
/// A co rule with no premises is a coaxiom; with premises it is a corule.
/// Co rules only take part in the bounding (inductive, extended) phase.
class Rule {
 public:
  Rule(Term conclusion, std::vector<Term> premises = {}, RuleKind kind = RuleKind::Regular);

  static Rule axiom(Term conclusion) { return Rule(std::move(conclusion)); }
  static Rule coaxiom(Term conclusion) { return Rule(std::move(conclusion), {}, RuleKind::Co); }

  const Term& conclusion() const { return conclusion_; }
  /// Duplicate-free, canonical order.
  std::span<const Term> premises() const { return premises_; }
  RuleKind kind() const { return kind_; }
  bool is_co() const { return kind_ == RuleKind::Co; }

  Rule with_kind(RuleKind kind) const;

  /// Orders by kind, conclusion, premise count, premises pointwise.
  friend std::strong_ordering operator<=>(const Rule& a, const Rule& b);
  friend bool operator==(const Rule& a, const Rule& b) { return (a <=> b) == 0; }

 private:
  Term conclusion_;
  std::vector<Term> premises_;
  RuleKind kind_;
};

/// Reference to a rule inside a System: index into regular_rules() or
/// co_rules() depending on `co`.
struct RuleRef {
  std::size_t index = 0;
  bool co = false;
  friend auto operator<=>(const RuleRef&, const RuleRef&) = default;
};

/// A finite inference system with co rules.
///
/// Rules are deduplicated and stored in canonical order, so the order in
/// which they were supplied never matters. Every term mentioned by a rule is
/// interned into a sorted universe; the fixpoint engine works on ids into it.
class System {
 public:
  using Id = std::uint32_t;

  System() = default;
  explicit System(std::vector<Rule> rules);

  std::span<const Rule> regular_rules() const { return regular_; }
  std::span<const Rule> co_rules() const { return co_; }
  const Rule& rule(RuleRef ref) const { return ref.co ? co_[ref.index] : regular_[ref.index]; }
  std::size_t size() const { return regular_.size() + co_.size(); }
  bool empty() const { return size() == 0; }

  /// All rules, regular first then co.
  std::vector<Rule> rules() const;

  /// Indices of regular rules concluding `j`, in canonical order.
  std::span<const std::size_t> rules_concluding(const Term& j) const;
  /// Indices of co rules concluding `j`, in canonical order.
  std::span<const std::size_t> co_rules_concluding(const Term& j) const;

  /// Every term appearing as a premise or conclusion, in canonical order.
  std::span<const Term> universe() const { return universe_; }
  std::optional<Id> id_of(const Term& t) const;
  const Term& term(Id id) const { return universe_[id]; }

  // Compiled form used by the engine.
  struct Compiled {
    std::vector<Id> premises;
    Id conclusion;
  };
  std::span<const Compiled> compiled_regular() const { return compiled_regular_; }
  std::span<const Compiled> compiled_co() const { return compiled_co_; }
  std::span<const std::size_t> regular_by_conclusion(Id id) const { return by_conclusion_[id]; }
  std::span<const std::size_t> co_by_conclusion(Id id) const { return co_by_conclusion_[id]; }

  friend bool operator==(const System& a, const System& b) {
    return a.regular_ == b.regular_ && a.co_ == b.co_;
  }

 private:
  std::vector<Rule> regular_;
  std::vector<Rule> co_;
  std::vector<Term> universe_;
  std::vector<Compiled> compiled_regular_;
  std::vector<Compiled> compiled_co_;
  std::vector<std::vector<std::size_t>> by_conclusion_;
  std::vector<std::vector<std::size_t>> co_by_conclusion_;
};

}  // namespace coax
