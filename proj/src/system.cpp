#include "coax/system.hpp"

#include <algorithm>

namespace coax {

Rule::Rule(Term conclusion, std::vector<Term> premises, RuleKind kind)
    : conclusion_(std::move(conclusion)), premises_(std::move(premises)), kind_(kind) {
  std::sort(premises_.begin(), premises_.end());
  premises_.erase(std::unique(premises_.begin(), premises_.end()), premises_.end());
}

Rule Rule::with_kind(RuleKind kind) const {
  Rule r = *this;
  r.kind_ = kind;
  return r;
}

std::strong_ordering operator<=>(const Rule& a, const Rule& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.conclusion_ <=> b.conclusion_; c != 0) return c;
  if (auto c = a.premises_.size() <=> b.premises_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.premises_.size(); ++i) {
    if (auto c = a.premises_[i] <=> b.premises_[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

System::System(std::vector<Rule> rules) {
  std::sort(rules.begin(), rules.end());
  rules.erase(std::unique(rules.begin(), rules.end()), rules.end());
  for (auto& r : rules) (r.is_co() ? co_ : regular_).push_back(std::move(r));

  for (const auto* list : {&regular_, &co_}) {
    for (const auto& r : *list) {
      universe_.push_back(r.conclusion());
      universe_.insert(universe_.end(), r.premises().begin(), r.premises().end());
    }
  }
  std::sort(universe_.begin(), universe_.end());
  universe_.erase(std::unique(universe_.begin(), universe_.end()), universe_.end());

  by_conclusion_.resize(universe_.size());
  co_by_conclusion_.resize(universe_.size());
  auto compile = [&](const std::vector<Rule>& src, std::vector<Compiled>& dst,
                     std::vector<std::vector<std::size_t>>& index) {
    dst.reserve(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) {
      Compiled c{{}, *id_of(src[i].conclusion())};
      c.premises.reserve(src[i].premises().size());
      for (const auto& p : src[i].premises()) c.premises.push_back(*id_of(p));
      index[c.conclusion].push_back(i);
      dst.push_back(std::move(c));
    }
  };
  compile(regular_, compiled_regular_, by_conclusion_);
  compile(co_, compiled_co_, co_by_conclusion_);
}

std::vector<Rule> System::rules() const {
  std::vector<Rule> all = regular_;
  all.insert(all.end(), co_.begin(), co_.end());
  return all;
}

std::optional<System::Id> System::id_of(const Term& t) const {
  auto it = std::lower_bound(universe_.begin(), universe_.end(), t);
  if (it == universe_.end() || !(*it == t)) return std::nullopt;
  return static_cast<Id>(it - universe_.begin());
}

std::span<const std::size_t> System::rules_concluding(const Term& j) const {
  auto id = id_of(j);
  if (!id) return {};
  return by_conclusion_[*id];
}

std::span<const std::size_t> System::co_rules_concluding(const Term& j) const {
  auto id = id_of(j);
  if (!id) return {};
  return co_by_conclusion_[*id];
}

}  // namespace coax
