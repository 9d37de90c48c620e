#include "coax/dsl.hpp"

#include <cctype>
#include <charconv>
#include <optional>

#include "coax/errors.hpp"

namespace coax {

namespace {

std::string describe(const std::vector<std::string>& expected) {
  std::string out;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
    out += expected[i];
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       std::string found)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": expected " +
                         describe(expected) + (found.empty() ? "" : ", found " + found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Int, LParen, RParen, LBrace, RBrace, Comma, Dot, Arrow, End };

struct Token {
  Tok kind;
  std::string text;
  SourceLocation at;
};

std::string quoted(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Int: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrace: return "'{'";
    case Tok::RBrace: return "'}'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Arrow: return "'<-'";
    case Tok::End: return "end of input";
  }
  return "?";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    SourceLocation at = here_;
    if (pos_ >= src_.size()) return {Tok::End, "", at};
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                    src_[pos_] == '_')) {
        advance();
      }
      return {Tok::Ident, std::string(src_.substr(start, pos_ - start)), at};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
      std::size_t start = pos_;
      if (c == '-') {
        advance();
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          if (pos_ < src_.size() && src_[pos_] == '>') {
            throw ParseError(at.line, at.column, {"term"}, "'->'");
          }
          throw ParseError(here_.line, here_.column, {"digit"}, found_here());
        }
      }
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      return {Tok::Int, std::string(src_.substr(start, pos_ - start)), at};
    }
    if (c == '<') {
      advance();
      if (pos_ < src_.size() && src_[pos_] == '-') {
        advance();
        return {Tok::Arrow, "<-", at};
      }
      throw ParseError(here_.line, here_.column, {"'-'"}, found_here());
    }
    Tok k;
    switch (c) {
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      case '{': k = Tok::LBrace; break;
      case '}': k = Tok::RBrace; break;
      case ',': k = Tok::Comma; break;
      case '.': k = Tok::Dot; break;
      default:
        throw ParseError(at.line, at.column, {"term", "'.'", "'<-'"}, found_here());
    }
    advance();
    return {k, std::string(1, c), at};
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++here_.line;
      here_.column = 1;
    } else {
      ++here_.column;
    }
    ++pos_;
  }

  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '%') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string found_here() const {
    if (pos_ >= src_.size()) return "end of input";
    return "'" + std::string(1, src_[pos_]) + "'";
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  SourceLocation here_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {
    cur_ = lex_.next();
    peek_ = lex_.next();
  }

  bool at_end() const { return cur_.kind == Tok::End; }

  Statement statement() {
    SourceLocation at = cur_.at;
    RuleKind kind = RuleKind::Regular;
    if (cur_.kind == Tok::Ident && cur_.text == "co" && starts_term(peek_)) {
      kind = RuleKind::Co;
      shift();
    }
    Term conclusion = term();
    std::vector<Term> premises;
    if (cur_.kind == Tok::Arrow) {
      shift();
      premises.push_back(term());
      while (cur_.kind == Tok::Comma) {
        shift();
        premises.push_back(term());
      }
      expect(Tok::Dot, {"','", "'.'"});
    } else {
      expect(Tok::Dot, {"'<-'", "'.'"});
    }
    return {Rule(std::move(conclusion), std::move(premises), kind), at};
  }

  Term term() {
    switch (cur_.kind) {
      case Tok::Int: {
        std::int64_t v = 0;
        const auto& s = cur_.text;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || p != s.data() + s.size()) {
          throw ParseError(cur_.at.line, cur_.at.column, {"integer in 64-bit range"}, s);
        }
        shift();
        return Term::integer(v);
      }
      case Tok::Ident: {
        std::string name = cur_.text;
        shift();
        if (name == "inf") return Term::infinity();
        std::vector<Term> args;
        if (cur_.kind == Tok::LParen) {
          shift();
          args.push_back(term());
          while (cur_.kind == Tok::Comma) {
            shift();
            args.push_back(term());
          }
          expect(Tok::RParen, {"','", "')'"});
        }
        return Term::symbol(std::move(name), std::move(args));
      }
      case Tok::LBrace: {
        shift();
        std::vector<Term> elems;
        if (cur_.kind != Tok::RBrace) {
          elems.push_back(term());
          while (cur_.kind == Tok::Comma) {
            shift();
            elems.push_back(term());
          }
        }
        expect(Tok::RBrace, elems.empty() ? std::vector<std::string>{"term", "'}'"}
                                          : std::vector<std::string>{"','", "'}'"});
        return Term::set(std::move(elems));
      }
      default:
        fail({"term"});
    }
  }

  void expect(Tok k, std::vector<std::string> expected) {
    if (cur_.kind != k) fail(std::move(expected));
    shift();
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = cur_.kind == Tok::End ? quoted(Tok::End) : "'" + cur_.text + "'";
    throw ParseError(cur_.at.line, cur_.at.column, std::move(expected), found);
  }

 private:
  static bool starts_term(const Token& t) {
    return t.kind == Tok::Ident || t.kind == Tok::Int || t.kind == Tok::LBrace;
  }

  void shift() {
    cur_ = std::move(peek_);
    if (cur_.kind != Tok::End) {
      peek_ = lex_.next();
    } else {
      peek_ = cur_;
    }
  }

  Lexer lex_;
  Token cur_;
  Token peek_;
};

}  // namespace

System SourceSystem::to_system() const {
  std::vector<Rule> rules;
  rules.reserve(statements.size());
  for (const auto& s : statements) rules.push_back(s.rule);
  return System(std::move(rules));
}

SourceSystem parse_source(std::string_view text) {
  Parser p(text);
  SourceSystem out;
  while (!p.at_end()) out.statements.push_back(p.statement());
  return out;
}

System parse_system(std::string_view text) { return parse_source(text).to_system(); }

Term parse_judgment(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  if (!p.at_end()) p.fail({"end of input"});
  return t;
}

JudgmentSet parse_judgment_set(std::string_view text) {
  Parser p(text);
  JudgmentSet out;
  while (!p.at_end()) {
    out.insert(p.term());
    p.expect(Tok::Dot, {"'.'"});
  }
  return out;
}

std::string render_rule(const Rule& rule) {
  std::string out = rule.is_co() ? "co " : "";
  out += rule.conclusion().to_string();
  auto premises = rule.premises();
  for (std::size_t i = 0; i < premises.size(); ++i) {
    out += i == 0 ? " <- " : ", ";
    out += premises[i].to_string();
  }
  out += ".";
  return out;
}

std::string render_system(const System& sys) {
  std::string out;
  for (const auto& r : sys.regular_rules()) out += render_rule(r) + "\n";
  for (const auto& r : sys.co_rules()) out += render_rule(r) + "\n";
  return out;
}

}  // namespace coax
