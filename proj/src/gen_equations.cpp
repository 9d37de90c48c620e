#include <algorithm>
#include <charconv>
#include <deque>
#include <stdexcept>

#include "coax/gen.hpp"
#include "gen_common.hpp"
#include "scan.hpp"

namespace coax {

using detail::Token;

namespace {

// Right-hand side before flattening.
struct Expr {
  enum class Kind { Int, Var, Nil, Tree, Cons };
  Kind kind;
  std::int64_t value = 0;
  std::string name;
  std::vector<Expr> kids;  // Tree: {child}; Cons: {head, tail}
  Token at;
};

class EquationParser {
 public:
  explicit EquationParser(std::string_view text) : in_(detail::scan(text, {})) {}

  std::vector<std::pair<Token, Expr>> statements() {
    std::vector<std::pair<Token, Expr>> out;
    while (!in_.at_end()) {
      Token lhs = in_.expect(Token::Kind::Ident, "variable");
      if (lhs.text == "nil" || detail::reserved_name(lhs.text)) in_.fail_at(lhs, {"variable"});
      in_.expect("=");
      Expr rhs = cons();
      in_.expect(";");
      out.emplace_back(lhs, std::move(rhs));
    }
    return out;
  }

 private:
  Expr cons() {
    Expr head = atom();
    if (!in_.accept(":")) return head;
    Token at = head.at;
    Expr tail = cons();
    return {Expr::Kind::Cons, 0, "", {std::move(head), std::move(tail)}, at};
  }

  std::int64_t integer() {
    bool neg = in_.accept("-");
    Token t = in_.expect(Token::Kind::Int, "integer");
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) in_.fail_at(t, {"integer in 64-bit range"});
    return neg ? -v : v;
  }

  Expr atom() {
    Token t = in_.peek();
    if (t.kind == Token::Kind::Int || t.is("-")) return {Expr::Kind::Int, integer(), "", {}, t};
    if (in_.accept("(")) {
      Expr e = cons();
      in_.expect(")");
      return e;
    }
    if (t.kind != Token::Kind::Ident) in_.fail({"integer", "variable", "'nil'", "'tree'", "'('"});
    in_.take();
    if (t.text == "nil") return {Expr::Kind::Nil, 0, "", {}, t};
    if (t.text == "tree" && in_.peek().is("(")) {
      in_.take();
      std::int64_t label = integer();
      in_.expect(",");
      Expr child = cons();
      in_.expect(")");
      return {Expr::Kind::Tree, label, "", {std::move(child)}, t};
    }
    return {Expr::Kind::Var, 0, t.text, {}, t};
  }

  detail::Cursor in_;
};

std::string where(const Token& t) {
  return std::to_string(t.line) + ":" + std::to_string(t.column) + ": ";
}

class Flattener {
 public:
  Flattener(EquationSystem& eqs, std::set<std::string> taken)
      : eqs_(eqs), taken_(std::move(taken)) {}

  void bind(const std::string& var, const Expr& e) {
    Binding b;
    switch (e.kind) {
      case Expr::Kind::Var:
        throw MalformedEquations(where(e.at) + var + " is an alias of " + e.name);
      case Expr::Kind::Int:
        throw MalformedEquations(where(e.at) + var + " is bound to a bare integer");
      case Expr::Kind::Nil:
        b.kind = Binding::Kind::Nil;
        break;
      case Expr::Kind::Tree:
        b.kind = Binding::Kind::Tree;
        b.label = e.value;
        b.tail = list_name(var, e.kids[0]);
        break;
      case Expr::Kind::Cons:
        b.kind = Binding::Kind::Cons;
        b.head = element(var, e.kids[0]);
        b.tail = list_name(var, e.kids[1]);
        break;
    }
    eqs_.bindings[var] = b;
  }

 private:
  std::string fresh(const std::string& parent) {
    for (std::size_t k = ++counter_[parent];; k = ++counter_[parent]) {
      std::string name = parent + "_" + std::to_string(k);
      if (taken_.insert(name).second) return name;
    }
  }

  std::string list_name(const std::string& parent, const Expr& e) {
    if (e.kind == Expr::Kind::Var) return e.name;
    if (e.kind == Expr::Kind::Nil) return "nil";
    std::string name = fresh(parent);
    bind(name, e);
    return name;
  }

  Term element(const std::string& parent, const Expr& e) {
    if (e.kind == Expr::Kind::Int) return num(e.value);
    if (e.kind == Expr::Kind::Var) return sym(e.name);
    if (e.kind == Expr::Kind::Nil) return sym("nil");
    return sym(list_name(parent, e));
  }

  EquationSystem& eqs_;
  std::set<std::string> taken_;
  std::map<std::string, std::size_t> counter_;
};

}  // namespace

const Binding& EquationSystem::at(const std::string& var) const {
  static const Binding nil{};
  if (var == "nil") return nil;
  auto it = bindings.find(var);
  if (it == bindings.end()) throw MalformedEquations("unbound variable " + var);
  return it->second;
}

std::vector<std::string> EquationSystem::reachable(const std::string& root) const {
  std::set<std::string> seen{root};
  std::deque<std::string> queue{root};
  while (!queue.empty()) {
    const Binding& b = at(queue.front());
    queue.pop_front();
    std::vector<std::string> next;
    if (b.kind != Binding::Kind::Nil) next.push_back(b.tail);
    if (b.kind == Binding::Kind::Cons && b.head.is_symbol()) next.push_back(b.head.name());
    for (auto& v : next) {
      if (seen.insert(v).second) queue.push_back(v);
    }
  }
  return {seen.begin(), seen.end()};
}

namespace {

// Bisimilarity classes by partition refinement over all variables.
std::map<std::string, std::size_t> bisim_classes(const EquationSystem& eqs) {
  std::vector<std::string> vars{"nil"};
  for (const auto& [v, b] : eqs.bindings) vars.push_back(v);
  std::map<std::string, std::size_t> cls;
  for (const auto& v : vars) cls[v] = 0;
  std::size_t count = 1;
  while (true) {
    // Current class, shape, integer payload, classes of the variable parts.
    using Sig = std::tuple<std::size_t, int, std::int64_t, std::size_t, std::size_t>;
    std::map<Sig, std::size_t> ids;
    std::map<std::string, std::size_t> next;
    for (const auto& v : vars) {
      const Binding& b = eqs.at(v);
      Sig s{cls[v], static_cast<int>(b.kind), 0, 0, 0};
      if (b.kind == Binding::Kind::Tree) std::get<2>(s) = b.label;
      if (b.kind == Binding::Kind::Cons) {
        if (b.head.is_symbol()) {
          std::get<3>(s) = cls.at(b.head.name()) + 1;
        } else {
          std::get<2>(s) = b.head.value();
        }
      }
      if (b.kind != Binding::Kind::Nil) std::get<4>(s) = cls.at(b.tail);
      next[v] = ids.emplace(s, ids.size()).first->second;
    }
    cls = std::move(next);
    if (ids.size() == count) return cls;
    count = ids.size();
  }
}

}  // namespace

bool EquationSystem::equal(const std::string& a, const std::string& b) const {
  at(a);
  at(b);
  auto cls = bisim_classes(*this);
  return cls.at(a) == cls.at(b);
}

EquationSystem parse_equations(std::string_view text) {
  EquationParser p(text);
  auto stmts = p.statements();
  std::set<std::string> taken{"nil"};
  for (const auto& [lhs, rhs] : stmts) {
    if (!taken.insert(lhs.text).second) {
      throw MalformedEquations(where(lhs) + lhs.text + " is bound twice");
    }
  }
  EquationSystem eqs;
  Flattener f(eqs, taken);
  for (const auto& [lhs, rhs] : stmts) f.bind(lhs.text, rhs);

  for (const auto& [v, b] : eqs.bindings) {
    if (b.kind != Binding::Kind::Nil) eqs.at(b.tail);
    if (b.kind == Binding::Kind::Cons && b.head.is_symbol()) eqs.at(b.head.name());
  }
  for (const auto& [v, b] : eqs.bindings) {
    if (b.kind == Binding::Kind::Tree && eqs.at(b.tail).kind == Binding::Kind::Tree) {
      throw MalformedEquations("children of tree " + v + " must be a list");
    }
    if (b.kind == Binding::Kind::Cons && eqs.at(b.tail).kind == Binding::Kind::Tree) {
      throw MalformedEquations("tail of list " + v + " must be a list");
    }
  }
  return eqs;
}

std::optional<ListPred> list_pred_from_string(std::string_view name) {
  if (name == "member") return ListPred::Member;
  if (name == "allPos" || name == "allpos") return ListPred::AllPos;
  if (name == "elems") return ListPred::Elems;
  if (name == "maxElem" || name == "maxelem") return ListPred::MaxElem;
  if (name == "path0") return ListPred::Path0;
  return std::nullopt;
}

System gen_listpred(const EquationSystem& eqs, ListPred pred, const std::string& root,
                    const std::optional<Term>& elem, std::size_t cap) {
  const auto vars = eqs.reachable(root);
  const auto cls = bisim_classes(eqs);
  std::vector<std::string> lists, trees;
  for (const auto& v : vars) {
    (eqs.at(v).kind == Binding::Kind::Tree ? trees : lists).push_back(v);
  }
  if (pred != ListPred::Path0 && eqs.at(root).kind == Binding::Kind::Tree) {
    throw MalformedEquations(root + " is a tree, not a list");
  }
  auto same = [&](const Term& a, const Term& b) {
    if (a.is_symbol() && b.is_symbol() && cls.contains(a.name()) && cls.contains(b.name())) {
      return cls.at(a.name()) == cls.at(b.name());
    }
    return a == b;
  };
  auto need_ints = [&]() {
    for (const auto& l : lists) {
      const Binding& b = eqs.at(l);
      if (b.kind == Binding::Kind::Cons && !b.head.is_integer()) {
        throw MalformedEquations("list " + l + " has a non-integer element");
      }
    }
  };
  const Term yes = sym("T"), no = sym("F");
  detail::RuleBudget budget(cap);
  std::vector<Rule> rules;

  switch (pred) {
    case ListPred::Member: {
      if (!elem) throw std::invalid_argument("member needs the element to look for");
      auto member = [&](const std::string& l, const Term& b) {
        return sym("member", {*elem, sym(l), b});
      };
      budget.reserve(4 * lists.size());
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Nil) {
          rules.push_back(Rule::axiom(member(l, no)));
        } else if (same(b.head, *elem)) {
          rules.push_back(Rule::axiom(member(l, yes)));
        } else {
          for (const auto& v : {yes, no}) rules.emplace_back(member(l, v), std::vector{member(b.tail, v)});
        }
        rules.push_back(Rule::coaxiom(member(l, no)));
      }
      break;
    }
    case ListPred::AllPos: {
      need_ints();
      auto all_pos = [&](const std::string& l, const Term& b) { return sym("allPos", {sym(l), b}); };
      budget.reserve(4 * lists.size());
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Nil) {
          rules.push_back(Rule::axiom(all_pos(l, yes)));
        } else if (b.head.value() <= 0) {
          rules.push_back(Rule::axiom(all_pos(l, no)));
        } else {
          for (const auto& v : {yes, no}) rules.emplace_back(all_pos(l, v), std::vector{all_pos(b.tail, v)});
        }
        rules.push_back(Rule::coaxiom(all_pos(l, yes)));
      }
      break;
    }
    case ListPred::Elems: {
      std::vector<Term> carrier;
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Cons) carrier.push_back(b.head);
      }
      std::sort(carrier.begin(), carrier.end());
      carrier.erase(std::unique(carrier.begin(), carrier.end()), carrier.end());
      if (carrier.size() >= 8 * sizeof(std::size_t) - 1) throw InstantiationTooLarge(SIZE_MAX, cap);
      const std::size_t subsets = std::size_t{1} << carrier.size();
      budget.reserve(detail::mul_sat(lists.size(), subsets + 1));
      auto subset = [&](std::size_t m) {
        std::vector<Term> xs;
        for (std::size_t i = 0; i < carrier.size(); ++i) {
          if (m >> i & 1) xs.push_back(carrier[i]);
        }
        return Term::set(std::move(xs));
      };
      auto elems = [&](const std::string& l, const Term& xs) { return sym("elems", {sym(l), xs}); };
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Nil) {
          rules.push_back(Rule::axiom(elems(l, Term::set({}))));
        } else {
          std::size_t h = std::lower_bound(carrier.begin(), carrier.end(), b.head) - carrier.begin();
          for (std::size_t m = 0; m < subsets; ++m) {
            rules.emplace_back(elems(l, subset(m | std::size_t{1} << h)),
                               std::vector{elems(b.tail, subset(m))});
          }
        }
        rules.push_back(Rule::coaxiom(elems(l, Term::set({}))));
      }
      break;
    }
    case ListPred::MaxElem: {
      need_ints();
      std::set<std::int64_t> candidates;
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Cons) candidates.insert(b.head.value());
      }
      budget.reserve(detail::mul_sat(lists.size(), candidates.size() + 2));
      auto max_elem = [&](const std::string& l, std::int64_t x) {
        return sym("maxElem", {sym(l), num(x)});
      };
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Nil) continue;
        const std::int64_t x = b.head.value();
        if (eqs.at(b.tail).kind == Binding::Kind::Nil) {
          rules.push_back(Rule::axiom(max_elem(l, x)));
        } else {
          for (auto y : candidates) {
            rules.emplace_back(max_elem(l, std::max(x, y)), std::vector{max_elem(b.tail, y)});
          }
        }
        rules.push_back(Rule::coaxiom(max_elem(l, x)));
      }
      break;
    }
    case ListPred::Path0: {
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind == Binding::Kind::Cons &&
            !(b.head.is_symbol() && eqs.at(b.head.name()).kind == Binding::Kind::Tree)) {
          throw MalformedEquations("list " + l + " has an element that is not a tree");
        }
      }
      auto path0 = [](const std::string& t) { return sym("path0", {sym(t)}); };
      auto is_in = [](const std::string& t, const std::string& l) {
        return sym("is_in", {sym(t), sym(l)});
      };
      budget.reserve(detail::mul_sat(trees.size(), 2 * lists.size() + trees.size() + 1));
      for (const auto& t0 : trees) {
        const Binding& b = eqs.at(t0);
        if (b.label == 0) {
          for (const auto& t : trees) {
            rules.emplace_back(path0(t0), std::vector{is_in(t, b.tail), path0(t)});
          }
        }
        rules.push_back(Rule::coaxiom(path0(t0)));
      }
      for (const auto& l : lists) {
        const Binding& b = eqs.at(l);
        if (b.kind != Binding::Kind::Cons) continue;
        for (const auto& t : trees) {
          if (same(sym(t), b.head)) rules.push_back(Rule::axiom(is_in(t, l)));
          rules.emplace_back(is_in(t, l), std::vector{is_in(t, b.tail)});
        }
      }
      break;
    }
  }
  return System(std::move(rules));
}

System gen_add(const EquationSystem& eqs, const std::string& r1, const std::string& r2,
               const std::string& r, const std::vector<std::int64_t>& carries, std::size_t cap) {
  auto stream = [&](const std::string& root) {
    auto vars = eqs.reachable(root);
    for (const auto& v : vars) {
      const Binding& b = eqs.at(v);
      if (b.kind != Binding::Kind::Cons || !b.head.is_integer() || b.head.value() < 0 ||
          b.head.value() > 9) {
        throw MalformedEquations(v + " is not a digit stream (d : s with 0 <= d <= 9)");
      }
    }
    return vars;
  };
  const auto s1 = stream(r1), s2 = stream(r2), s3 = stream(r);
  const std::set<std::int64_t> cs(carries.begin(), carries.end());

  detail::RuleBudget budget(cap);
  budget.reserve(detail::mul_sat(
      detail::mul_sat(detail::mul_sat(s1.size(), s2.size()), s3.size()), 2 * cs.size()));
  auto add = [](const std::string& a, const std::string& b, const std::string& c, std::int64_t k) {
    return sym("add", {sym(a), sym(b), sym(c), num(k)});
  };
  auto floor_div = [](std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
  };

  std::vector<Rule> rules;
  for (const auto& a : s1) {
    const Binding& ba = eqs.at(a);
    for (const auto& b : s2) {
      const Binding& bb = eqs.at(b);
      for (const auto& c : s3) {
        const Binding& bc = eqs.at(c);
        for (auto carry : cs) {
          const std::int64_t s = ba.head.value() + bb.head.value() + carry;
          const std::int64_t q = floor_div(s, 10);
          if (s - 10 * q == bc.head.value() && cs.contains(q)) {
            rules.emplace_back(add(a, b, c, q), std::vector{add(ba.tail, bb.tail, bc.tail, carry)});
          }
          rules.push_back(Rule::coaxiom(add(a, b, c, carry)));
        }
      }
    }
  }
  return System(std::move(rules));
}

}  // namespace coax
