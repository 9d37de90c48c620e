#include <functional>
#include <map>

#include "coax/gen.hpp"
#include "scan.hpp"

namespace coax {

using detail::Token;

LambdaTerm LambdaTerm::var(std::string x) { return {Kind::Var, std::move(x), nullptr, nullptr}; }

LambdaTerm LambdaTerm::lam(std::string x, LambdaTerm body) {
  return {Kind::Lam, std::move(x), std::make_shared<const LambdaTerm>(std::move(body)), nullptr};
}

LambdaTerm LambdaTerm::app(LambdaTerm f, LambdaTerm a) {
  return {Kind::App, "", std::make_shared<const LambdaTerm>(std::move(f)),
          std::make_shared<const LambdaTerm>(std::move(a))};
}

std::set<std::string> LambdaTerm::free_vars() const {
  switch (kind) {
    case Kind::Var: return {name};
    case Kind::Lam: {
      auto fv = left->free_vars();
      fv.erase(name);
      return fv;
    }
    case Kind::App: {
      auto fv = left->free_vars();
      fv.merge(right->free_vars());
      return fv;
    }
  }
  return {};
}

std::string LambdaTerm::to_string() const {
  switch (kind) {
    case Kind::Var: return name;
    case Kind::Lam: return "\\" + name + ". " + left->to_string();
    case Kind::App: {
      std::string f = left->kind == Kind::Lam ? "(" + left->to_string() + ")" : left->to_string();
      std::string a = right->kind == Kind::Var ? right->to_string() : "(" + right->to_string() + ")";
      return f + " " + a;
    }
  }
  return "?";
}

namespace {

class LambdaParser {
 public:
  explicit LambdaParser(std::string_view text) : in_(detail::scan(text, {"\xCE\xBB"})) {}

  LambdaTerm parse() {
    LambdaTerm e = expr();
    if (!in_.at_end()) in_.fail({"end of input"});
    return e;
  }

 private:
  bool at_lambda() const { return in_.peek().is("\\") || in_.peek().is("\xCE\xBB"); }
  bool at_atom() const {
    return in_.peek().kind == Token::Kind::Ident || in_.peek().is("(");
  }

  LambdaTerm expr() {
    if (at_lambda()) {
      in_.take();
      Token x = in_.expect(Token::Kind::Ident, "variable");
      in_.expect(".");
      return LambdaTerm::lam(x.text, expr());
    }
    if (!at_atom()) in_.fail({"variable", "'('", "'\\'"});
    LambdaTerm e = atom();
    while (at_atom() || at_lambda()) {
      if (at_lambda()) return LambdaTerm::app(std::move(e), expr());
      e = LambdaTerm::app(std::move(e), atom());
    }
    return e;
  }

  LambdaTerm atom() {
    if (in_.accept("(")) {
      LambdaTerm e = expr();
      in_.expect(")");
      return e;
    }
    return LambdaTerm::var(in_.take().text);
  }

  detail::Cursor in_;
};

bool is_lam(const Term& t) { return t.is_symbol() && t.name() == "lam" && t.arity() == 2; }
bool is_app(const Term& t) { return t.is_symbol() && t.name() == "app" && t.arity() == 2; }

Term binder(std::size_t depth) { return sym("x" + std::to_string(depth)); }

// Renames binders by depth; `env` maps the old names in scope.
Term canonical(const Term& t, std::map<std::string, Term>& env, std::size_t depth) {
  if (is_lam(t)) {
    const std::string& old = t.args()[0].name();
    auto saved = env.find(old) != env.end() ? std::optional<Term>(env.at(old)) : std::nullopt;
    env.insert_or_assign(old, binder(depth));
    Term body = canonical(t.args()[1], env, depth + 1);
    if (saved) {
      env.insert_or_assign(old, *saved);
    } else {
      env.erase(old);
    }
    return sym("lam", {binder(depth), body});
  }
  if (is_app(t)) {
    return sym("app", {canonical(t.args()[0], env, depth), canonical(t.args()[1], env, depth)});
  }
  auto it = env.find(t.name());
  return it == env.end() ? t : it->second;
}

// Replaces the variable `x` by the closed term `v`; inner binders never
// reuse `x` in canonical terms.
Term replace(const Term& t, const Term& x, const Term& v) {
  if (is_lam(t)) return sym("lam", {t.args()[0], replace(t.args()[1], x, v)});
  if (is_app(t)) return sym("app", {replace(t.args()[0], x, v), replace(t.args()[1], x, v)});
  return t == x ? v : t;
}

// Body of the closed abstraction `lam` with its variable bound to `v`.
Term instantiate(const Term& lam, const Term& v) {
  std::map<std::string, Term> env;
  return canonical(replace(lam.args()[1], lam.args()[0], v), env, 0);
}

}  // namespace

LambdaTerm parse_lambda(std::string_view text) { return LambdaParser(text).parse(); }

Term encode_lambda(const LambdaTerm& e) {
  std::function<Term(const LambdaTerm&)> raw = [&](const LambdaTerm& t) -> Term {
    switch (t.kind) {
      case LambdaTerm::Kind::Var: return sym(t.name);
      case LambdaTerm::Kind::Lam: return sym("lam", {sym(t.name), raw(*t.left)});
      case LambdaTerm::Kind::App: return sym("app", {raw(*t.left), raw(*t.right)});
    }
    return sym("?");
  };
  std::map<std::string, Term> env;
  return canonical(raw(e), env, 0);
}

System gen_lambda(const LambdaTerm& e, std::size_t budget) {
  if (auto fv = e.free_vars(); !fv.empty()) {
    throw std::invalid_argument("lambda term is not closed: " + *fv.begin() + " is free");
  }
  const Term root = encode_lambda(e);

  // Least solution of: subjects reachable through (app), and the values
  // each subject may evaluate to.
  std::set<Term> subjects{root};
  std::map<Term, std::set<Term>> vals;
  for (bool changed = true; changed;) {
    changed = false;
    auto add_subject = [&](const Term& s) {
      if (subjects.insert(s).second) {
        changed = true;
        if (subjects.size() > budget) throw ClosureBudgetExceeded(budget);
      }
    };
    const std::vector<Term> snapshot(subjects.begin(), subjects.end());
    for (const auto& s : snapshot) {
      auto& mine = vals[s];
      if (is_lam(s)) {
        changed |= mine.insert(s).second;
        continue;
      }
      const Term& f = s.args()[0];
      const Term& a = s.args()[1];
      add_subject(f);
      add_subject(a);
      const auto fs = vals[f];
      const auto as = vals[a];
      for (const auto& lam : fs) {
        for (const auto& v : as) {
          Term body = instantiate(lam, v);
          add_subject(body);
          for (const auto& r : std::set<Term>(vals[body])) changed |= vals[s].insert(r).second;
        }
      }
    }
  }

  std::set<Term> all_values;
  for (const auto& [s, vs] : vals) all_values.insert(vs.begin(), vs.end());
  std::vector<Term> outcomes(all_values.begin(), all_values.end());
  outcomes.push_back(Term::infinity());
  auto eval = [](const Term& s, const Term& v) { return sym("eval", {s, v}); };
  const Term inf = Term::infinity();

  std::vector<Rule> rules;
  for (const auto& s : subjects) {
    rules.push_back(Rule::coaxiom(eval(s, inf)));
    if (is_lam(s)) {
      rules.push_back(Rule::axiom(eval(s, s)));
      continue;
    }
    const Term& f = s.args()[0];
    const Term& a = s.args()[1];
    for (const auto& lam : vals[f]) {
      for (const auto& v : vals[a]) {
        Term body = instantiate(lam, v);
        for (const auto& out : outcomes) {
          rules.emplace_back(eval(s, out), std::vector{eval(f, lam), eval(a, v), eval(body, out)});
        }
      }
    }
    rules.emplace_back(eval(s, inf), std::vector{eval(f, inf)});
    for (const auto& v : all_values) {
      rules.emplace_back(eval(s, inf), std::vector{eval(f, v), eval(a, inf)});
    }
  }
  return System(std::move(rules));
}

}  // namespace coax
