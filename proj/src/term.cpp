#include "coax/term.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace coax {

struct Term::Node {
  Kind kind;
  std::int64_t value = 0;
  std::string name;
  std::vector<Term> args;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term Term::integer(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Integer;
  n->value = value;
  n->hash = mix(1, std::hash<std::int64_t>{}(value));
  return Term(std::move(n));
}

Term Term::infinity() {
  static const Term inf = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Infinity;
    n->hash = mix(2, 0);
    return Term(std::move(n));
  }();
  return inf;
}

Term Term::symbol(std::string name, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  std::size_t h = mix(3, std::hash<std::string>{}(name));
  for (const auto& a : args) h = mix(h, a.hash());
  n->hash = h;
  n->name = std::move(name);
  n->args = std::move(args);
  return Term(std::move(n));
}

Term Term::set(std::vector<Term> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Set;
  std::size_t h = mix(4, elements.size());
  for (const auto& e : elements) h = mix(h, e.hash());
  n->hash = h;
  n->args = std::move(elements);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
std::int64_t Term::value() const { return node_->value; }
const std::string& Term::name() const { return node_->name; }
std::span<const Term> Term::args() const { return node_->args; }
std::size_t Term::hash() const { return node_->hash; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  switch (x.kind) {
    case Term::Kind::Integer:
      return x.value <=> y.value;
    case Term::Kind::Infinity:
      return std::strong_ordering::equal;
    case Term::Kind::Symbol:
      if (auto c = x.name.compare(y.name); c != 0) {
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
      }
      [[fallthrough]];
    case Term::Kind::Set:
      if (auto c = x.args.size() <=> y.args.size(); c != 0) return c;
      for (std::size_t i = 0; i < x.args.size(); ++i) {
        if (auto c = x.args[i] <=> y.args[i]; c != 0) return c;
      }
      return std::strong_ordering::equal;
  }
  return std::strong_ordering::equal;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == 0;
}

namespace {

void write(std::ostream& os, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Integer:
      os << t.value();
      return;
    case Term::Kind::Infinity:
      os << "inf";
      return;
    case Term::Kind::Symbol:
      os << t.name();
      if (t.arity() > 0) {
        os << '(';
        for (std::size_t i = 0; i < t.arity(); ++i) {
          if (i > 0) os << ',';
          write(os, t.args()[i]);
        }
        os << ')';
      }
      return;
    case Term::Kind::Set:
      os << '{';
      for (std::size_t i = 0; i < t.elements().size(); ++i) {
        if (i > 0) os << ',';
        write(os, t.elements()[i]);
      }
      os << '}';
      return;
  }
}

}  // namespace

std::string Term::to_string() const {
  std::ostringstream os;
  write(os, *this);
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  write(os, t);
  return os;
}

std::string to_string(const JudgmentSet& s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& t : s) {
    if (!first) os << ", ";
    first = false;
    write(os, t);
  }
  os << '}';
  return os.str();
}

}  // namespace coax
