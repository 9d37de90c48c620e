#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace coax {

/// Ground first-order term. Terms double as judgments.
///
/// A term is an integer literal, the infinity literal, a symbol applied to an
/// ordered argument list, or a finite set literal. Set literals are kept
/// duplicate-free and sorted, so structural equality is set equality.
///
/// Terms are immutable and cheap to copy (the payload is shared).
class Term {
 public:
  enum class Kind : std::uint8_t { Integer, Infinity, Symbol, Set };

  static Term integer(std::int64_t value);
  static Term infinity();
  static Term symbol(std::string name, std::vector<Term> args = {});
  static Term set(std::vector<Term> elements);

  Kind kind() const;
  bool is_integer() const { return kind() == Kind::Integer; }
  bool is_infinity() const { return kind() == Kind::Infinity; }
  bool is_symbol() const { return kind() == Kind::Symbol; }
  bool is_set() const { return kind() == Kind::Set; }

  /// Integer payload; only meaningful for Kind::Integer.
  std::int64_t value() const;
  /// Symbol name; empty for non-symbols.
  const std::string& name() const;
  /// Symbol arguments, or set elements in canonical order.
  std::span<const Term> args() const;
  std::span<const Term> elements() const { return args(); }
  std::size_t arity() const { return args().size(); }

  std::size_t hash() const;

  /// Compact textual form, e.g. `visit(a,{a,b})`, `inf`, `-3`.
  std::string to_string() const;

  /// Canonical total order: kind first (integer < infinity < symbol < set),
  /// then value, then name / arity / arguments pointwise; sets compare by
  /// size and then pointwise.
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::ostream& operator<<(std::ostream& os, const Term& t);

/// Finite set of judgments, iterated in canonical term order.
using JudgmentSet = std::set<Term>;

std::string to_string(const JudgmentSet& s);

/// Convenience shorthands used heavily by generators and tests.
inline Term sym(std::string name, std::vector<Term> args = {}) {
  return Term::symbol(std::move(name), std::move(args));
}
inline Term num(std::int64_t v) { return Term::integer(v); }

}  // namespace coax

template <>
struct std::hash<coax::Term> {
  std::size_t operator()(const coax::Term& t) const noexcept { return t.hash(); }
};
