#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "coax/system.hpp"
#include "coax/term.hpp"

namespace coax {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Statement {
  Rule rule;
  SourceLocation location;
};

/// A parsed `.coax` file, statements in source order.
struct SourceSystem {
  std::vector<Statement> statements;

  System to_system() const;
};

// Syntax:
//   system := stmt*
//   stmt   := ["co"] term ["<-" term ("," term)*] "."
//   term   := IDENT ["(" term ("," term)* ")"] | INT | "inf" | "{" [term ("," term)*] "}"
// `%` comments run to the end of the line. `co` is a keyword only when a term
// follows it, so a bare `co.` is the nullary symbol.

SourceSystem parse_source(std::string_view text);
System parse_system(std::string_view text);
Term parse_judgment(std::string_view text);
/// A sequence of `term .` items, e.g. the judgment sets read by `bcp`.
JudgmentSet parse_judgment_set(std::string_view text);

std::string render_rule(const Rule& rule);
/// One statement per line in canonical order; parse_system inverts it.
std::string render_system(const System& sys);

}  // namespace coax
