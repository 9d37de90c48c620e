#include <cctype>
#include <functional>
#include <stdexcept>

#include "coax/gen.hpp"
#include "gen_common.hpp"
#include "scan.hpp"

namespace coax {

using detail::Token;

namespace {

bool is_nonterminal(const std::string& s) {
  return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

}  // namespace

std::set<std::string> Grammar::nullable() const {
  std::set<std::string> out;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [a, bodies] : productions) {
      if (out.contains(a)) continue;
      for (const auto& body : bodies) {
        if (std::all_of(body.begin(), body.end(), [&](const auto& x) { return out.contains(x); })) {
          out.insert(a);
          changed = true;
          break;
        }
      }
    }
  }
  return out;
}

Grammar parse_grammar(std::string_view text) {
  detail::Cursor in(detail::scan(text, {"->"}));
  Grammar g;
  std::vector<Token> used;
  while (!in.at_end()) {
    Token lhs = in.expect(Token::Kind::Ident, "nonterminal");
    if (!is_nonterminal(lhs.text)) in.fail_at(lhs, {"nonterminal (uppercase)"});
    in.expect("->");
    auto& bodies = g.productions[lhs.text];
    g.nonterminals.insert(lhs.text);
    while (true) {
      std::vector<std::string> body;
      while (in.peek().kind == Token::Kind::Ident) {
        Token s = in.take();
        if (!is_nonterminal(s.text)) {
          if (s.text == "eps" || detail::reserved_name(s.text)) {
            in.fail_at(s, {"terminal other than 'eps' or 'inf'"});
          }
          g.terminals.insert(s.text);
        }
        used.push_back(s);
        body.push_back(s.text);
      }
      if (std::find(bodies.begin(), bodies.end(), body) == bodies.end()) bodies.push_back(body);
      if (in.accept(";")) break;
      if (!in.accept("|")) in.fail({"symbol", "'|'", "';'"});
    }
  }
  for (const auto& s : used) {
    if (is_nonterminal(s.text) && !g.productions.contains(s.text)) {
      in.fail_at(s, {"nonterminal with productions"});
    }
  }
  return g;
}

Term string_term(const std::vector<std::string>& symbols) {
  if (symbols.empty()) return sym("eps");
  if (symbols.size() == 1) return sym(symbols[0]);
  std::vector<Term> args;
  for (const auto& s : symbols) args.push_back(sym(s));
  return sym("seq", std::move(args));
}

System gen_first(const Grammar& g, std::size_t cap) {
  const std::vector<std::string> terms(g.terminals.begin(), g.terminals.end());
  const std::size_t t = terms.size();
  if (t >= 8 * sizeof(std::size_t) / 2) throw InstantiationTooLarge(SIZE_MAX, cap);
  const std::size_t subsets = std::size_t{1} << t;
  std::vector<Term> set_of;
  for (std::size_t m = 0; m < subsets; ++m) {
    std::vector<Term> elems;
    for (std::size_t i = 0; i < t; ++i) {
      if (m >> i & 1) elems.push_back(sym(terms[i]));
    }
    set_of.push_back(Term::set(std::move(elems)));
  }
  auto first = [&](const std::vector<std::string>& s, std::size_t m) {
    return sym("first", {string_term(s), set_of[m]});
  };
  auto bit = [&](const std::string& a) {
    return std::size_t{1} << (std::lower_bound(terms.begin(), terms.end(), a) - terms.begin());
  };

  // Strings that occur as subjects: nonterminals, nonempty body suffixes, eps.
  std::set<std::vector<std::string>> strings{{}};
  for (const auto& a : g.nonterminals) strings.insert({a});
  for (const auto& [a, bodies] : g.productions) {
    for (const auto& body : bodies) {
      for (std::size_t i = 0; i < body.size(); ++i) strings.insert({body.begin() + i, body.end()});
    }
  }
  const auto nullable = g.nullable();

  detail::RuleBudget budget(cap);
  std::vector<Rule> rules;
  for (const auto& s : strings) {
    if (s.empty()) {
      budget.reserve(1);
      rules.push_back(Rule::axiom(first(s, 0)));
    } else if (!is_nonterminal(s[0])) {
      budget.reserve(1);
      rules.push_back(Rule::axiom(first(s, bit(s[0]))));
    } else if (s.size() >= 2) {
      // A single nonterminal is handled by its productions below.
      const std::vector<std::string> a{s[0]};
      const std::vector<std::string> rest(s.begin() + 1, s.end());
      if (!nullable.contains(s[0])) {
        budget.reserve(subsets);
        for (std::size_t f = 0; f < subsets; ++f) rules.emplace_back(first(s, f), std::vector{first(a, f)});
      } else {
        budget.reserve(detail::mul_sat(subsets, subsets));
        for (std::size_t f = 0; f < subsets; ++f) {
          for (std::size_t f2 = 0; f2 < subsets; ++f2) {
            rules.emplace_back(first(s, f | f2), std::vector{first(a, f), first(rest, f2)});
          }
        }
      }
    }
  }

  for (const auto& [a, bodies] : g.productions) {
    budget.reserve(detail::pow_sat(subsets, bodies.size()) + 1);
    std::vector<std::size_t> pick(bodies.size(), 0);
    while (true) {
      std::size_t all = 0;
      std::vector<Term> premises;
      for (std::size_t i = 0; i < bodies.size(); ++i) {
        all |= pick[i];
        premises.push_back(first(bodies[i], pick[i]));
      }
      rules.emplace_back(first({a}, all), std::move(premises));
      std::size_t i = 0;
      while (i < pick.size() && ++pick[i] == subsets) pick[i++] = 0;
      if (i == pick.size()) break;
    }
    rules.push_back(Rule::coaxiom(first({a}, 0)));
  }
  return System(std::move(rules));
}

}  // namespace coax
