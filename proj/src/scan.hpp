#pragma once

// Small tokenizer shared by the generator input formats.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coax/errors.hpp"

namespace coax::detail {

struct Token {
  enum class Kind { Ident, Int, Punct, End };
  Kind kind;
  std::string text;
  std::size_t line;
  std::size_t column;

  bool is(std::string_view p) const { return kind == Kind::Punct && text == p; }
  std::string shown() const { return kind == Kind::End ? "end of input" : "'" + text + "'"; }
};

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

/// Splits `text` into identifiers, unsigned integers and punctuation. The
/// multi-character punctuators in `puncts` are matched first; any other
/// non-blank character is a one-character punctuator. `%` comments and, when
/// `newlines` is set, line ends are reported as the punctuator "\n".
inline std::vector<Token> scan(std::string_view text, const std::vector<std::string>& puncts,
                               bool newlines = false) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto bump = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '%') {
      while (i < text.size() && text[i] != '\n') bump(1);
      continue;
    }
    if (c == '\n' && newlines) {
      out.push_back({Token::Kind::Punct, "\n", line, col});
      bump(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      bump(1);
      continue;
    }
    std::size_t start = i, l = line, k = col;
    if (is_ident_start(c)) {
      while (i < text.size() && is_ident_char(text[i])) bump(1);
      out.push_back({Token::Kind::Ident, std::string(text.substr(start, i - start)), l, k});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) bump(1);
      out.push_back({Token::Kind::Int, std::string(text.substr(start, i - start)), l, k});
      continue;
    }
    std::string p(1, c);
    for (const auto& m : puncts) {
      if (text.substr(i, m.size()) == m) {
        p = m;
        break;
      }
    }
    bump(p.size());
    out.push_back({Token::Kind::Punct, p, l, k});
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

/// Cursor over a token vector with error helpers.
class Cursor {
 public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token take() {
    Token t = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view p) {
    if (!peek().is(p)) return false;
    take();
    return true;
  }
  Token expect(std::string_view p) {
    if (!peek().is(p)) fail({"'" + std::string(p) + "'"});
    return take();
  }
  Token expect(Token::Kind k, std::string what) {
    if (peek().kind != k) fail({std::move(what)});
    return take();
  }
  bool at_end() const { return peek().kind == Token::Kind::End; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw ParseError(peek().line, peek().column, std::move(expected), peek().shown());
  }
  [[noreturn]] void fail_at(const Token& t, std::vector<std::string> expected) const {
    throw ParseError(t.line, t.column, std::move(expected), t.shown());
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace coax::detail
