#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "coax/system.hpp"
#include "coax/term.hpp"

namespace coax {

inline constexpr std::size_t kDefaultCap = 1'000'000;
inline constexpr std::size_t kDefaultClosureBudget = 10'000;

// ---- graphs -------------------------------------------------------------

struct Graph {
  struct Edge {
    std::string from;
    std::string to;
    std::optional<std::uint64_t> weight;
  };

  std::set<std::string> nodes;
  std::vector<Edge> edges;

  /// Outgoing edges of `v`, ordered by target.
  std::vector<Edge> out(const std::string& v) const;
  bool weighted() const;
};

/// Lines `node <id>` and `edge <from> <to> [<nat>]`; `%` starts a comment.
Graph parse_graph(std::string_view text);

/// visit(v, N): N is the set of nodes reachable from v.
System gen_visit(const Graph& g, std::size_t cap = kDefaultCap);

/// dist(v, u, d): d is the least weight of a path from v to u. Without a
/// target, every node is a target.
System gen_dist(const Graph& g, const std::optional<std::string>& target = std::nullopt,
                std::size_t cap = kDefaultCap);

/// minPath(v, u, p, d): p is a lightest path from v to u, written
/// path(v,...,u), or `bot` with d = inf when there is none.
System gen_minpath(const Graph& g, const std::optional<std::string>& target = std::nullopt,
                   std::size_t cap = kDefaultCap);

/// path(v1,...,vn) for a node sequence.
Term path_term(const std::vector<std::string>& nodes);

// ---- grammars -----------------------------------------------------------

struct Grammar {
  std::set<std::string> terminals;
  std::set<std::string> nonterminals;
  /// Alternatives per nonterminal; an empty body is the empty string.
  std::map<std::string, std::vector<std::vector<std::string>>> productions;

  std::set<std::string> nullable() const;
};

/// `S -> A S | b ;` with an empty alternative for the empty string. Names
/// starting with an uppercase letter are nonterminals.
Grammar parse_grammar(std::string_view text);

/// first(x, F): F is the set of terminals starting strings derived from x.
/// Strings are `eps`, a bare symbol, or seq(X1,...,Xn).
System gen_first(const Grammar& g, std::size_t cap = kDefaultCap);

Term string_term(const std::vector<std::string>& symbols);

// ---- equation systems ---------------------------------------------------

struct Binding {
  enum class Kind { Nil, Cons, Tree };
  Kind kind = Kind::Nil;
  Term head = Term::integer(0);  // Cons: integer element or variable symbol
  std::int64_t label = 0;        // Tree
  std::string tail;              // Cons: tail variable; Tree: child list
};

/// Rational lists, trees and streams as recursive equations. Inline
/// constructors on right-hand sides are named `<var>_<k>`. The variable
/// `nil` is implicitly bound to the empty list.
struct EquationSystem {
  std::map<std::string, Binding> bindings;

  const Binding& at(const std::string& var) const;
  /// Variables reachable from `root` through tails, heads and children.
  std::vector<std::string> reachable(const std::string& root) const;
  /// Whether two variables denote the same infinite term.
  bool equal(const std::string& a, const std::string& b) const;
};

/// `l = 1 : l ;`, `m = nil ;`, `t = tree(0, l) ;`; `%` comments.
EquationSystem parse_equations(std::string_view text);

enum class ListPred { Member, AllPos, Elems, MaxElem, Path0 };

std::optional<ListPred> list_pred_from_string(std::string_view name);

/// member needs `elem`, the element searched for.
System gen_listpred(const EquationSystem& eqs, ListPred pred, const std::string& root,
                    const std::optional<Term>& elem = std::nullopt,
                    std::size_t cap = kDefaultCap);

/// add(s1, s2, s3, c) over digit streams: [[s1]] + [[s2]] = [[s3]] + c.
System gen_add(const EquationSystem& eqs, const std::string& r1, const std::string& r2,
               const std::string& r, const std::vector<std::int64_t>& carries = {-1, 0, 1, 2},
               std::size_t cap = kDefaultCap);

// ---- lambda terms -------------------------------------------------------

struct LambdaTerm {
  enum class Kind { Var, Lam, App };
  Kind kind = Kind::Var;
  std::string name;  // Var, Lam (bound variable)
  std::shared_ptr<const LambdaTerm> left;   // Lam body, App function
  std::shared_ptr<const LambdaTerm> right;  // App argument

  static LambdaTerm var(std::string x);
  static LambdaTerm lam(std::string x, LambdaTerm body);
  static LambdaTerm app(LambdaTerm f, LambdaTerm a);

  std::set<std::string> free_vars() const;
  std::string to_string() const;
};

/// `\x. e`, application by juxtaposition, parentheses.
LambdaTerm parse_lambda(std::string_view text);

/// Canonical term for an expression: binders are renamed x0, x1, ... by
/// depth, so alpha-equivalent expressions encode identically.
Term encode_lambda(const LambdaTerm& e);

/// Call-by-value evaluation with divergence: eval(e, v) and eval(e, inf).
/// Throws ClosureBudgetExceeded when more than `budget` expressions are
/// reachable as evaluation subjects.
System gen_lambda(const LambdaTerm& e, std::size_t budget = kDefaultClosureBudget);

}  // namespace coax
