#include "coax/render.hpp"

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace coax {

using Json = nlohmann::ordered_json;

std::string rule_id(RuleRef ref) { return (ref.co ? "c" : "r") + std::to_string(ref.index); }

namespace {

Json to_json(const JudgmentSet& s) {
  Json out = Json::array();
  for (const auto& j : s) out.push_back(j.to_string());
  return out;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string render(const Interpretation& interp, Format fmt, bool trace) {
  if (fmt == Format::Dot) throw std::invalid_argument("dot output is only defined for proofs");
  if (fmt == Format::Json) {
    Json out;
    out["phase"] = std::string(to_string(interp.phase));
    out["judgments"] = to_json(interp.judgments);
    if (trace) {
      if (interp.phase == Phase::Generated) {
        Json up = Json::array();
        for (const auto& s : interp.bound_trace) up.push_back(to_json(s));
        out["bound_trace"] = std::move(up);
      }
      Json down = Json::array();
      for (const auto& s : interp.trace) down.push_back(to_json(s));
      out["trace"] = std::move(down);
    }
    return out.dump(2) + "\n";
  }

  std::ostringstream os;
  if (trace) {
    auto listing = [&](std::string_view phase, const std::vector<JudgmentSet>& sets) {
      for (std::size_t k = 0; k < sets.size(); ++k) {
        os << "% " << phase << " (" << k + 1 << "): " << to_string(sets[k]) << "\n";
      }
    };
    if (interp.phase == Phase::Generated) listing(to_string(Phase::Bound), interp.bound_trace);
    listing(to_string(interp.phase), interp.trace);
  }
  for (const auto& j : interp.judgments) os << j << ".\n";
  return os.str();
}

std::string render(const System& /*sys*/, const WfProof& proof, Format fmt) {
  if (fmt == Format::Json) {
    std::function<Json(std::size_t)> node = [&](std::size_t i) {
      const auto& n = proof.at(i);
      Json out;
      out["judgment"] = n.judgment.to_string();
      out["rule"] = rule_id(n.rule);
      out["co"] = n.rule.co;
      Json kids = Json::array();
      for (auto c : n.children) kids.push_back(node(c));
      out["children"] = std::move(kids);
      return out;
    };
    return node(proof.root).dump(2) + "\n";
  }
  std::ostringstream os;
  if (fmt == Format::Dot) {
    // Shared subproofs are drawn once.
    os << "digraph proof {\n  node [shape=box];\n";
    std::set<std::size_t> seen;
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
      if (!seen.insert(i).second) return;
      const auto& n = proof.at(i);
      os << "  n" << i << " [label=\"" << dot_escape(n.judgment.to_string()) << "\\n"
         << rule_id(n.rule) << "\"" << (n.rule.co ? ", style=dashed" : "") << "];\n";
      for (auto c : n.children) {
        os << "  n" << i << " -> n" << c << ";\n";
        walk(c);
      }
    };
    walk(proof.root);
    os << "}\n";
    return os.str();
  }
  std::function<void(std::size_t, std::size_t)> line = [&](std::size_t i, std::size_t depth) {
    const auto& n = proof.at(i);
    os << std::string(2 * depth, ' ') << n.judgment << "  [" << rule_id(n.rule) << "]\n";
    for (auto c : n.children) line(c, depth + 1);
  };
  line(proof.root, 0);
  return os.str();
}

std::string render(const System& sys, const RegularProof& proof, Format fmt) {
  // Path expansion from the root; a judgment already expanded becomes a
  // back reference, so cycles stay finite.
  auto rule_of = [&](const Term& j) -> std::optional<RuleRef> {
    auto it = proof.choice.find(j);
    if (it == proof.choice.end()) return std::nullopt;
    return RuleRef{it->second, false};
  };
  std::set<Term> expanded;

  if (fmt == Format::Json) {
    std::function<Json(const Term&)> node = [&](const Term& j) {
      Json out;
      out["judgment"] = j.to_string();
      if (!expanded.insert(j).second) {
        out["back_reference"] = j.to_string();
        return out;
      }
      auto ref = rule_of(j);
      if (!ref) {
        out["rule"] = nullptr;
        return out;
      }
      out["rule"] = rule_id(*ref);
      out["co"] = false;
      Json kids = Json::array();
      for (const auto& p : sys.rule(*ref).premises()) kids.push_back(node(p));
      out["children"] = std::move(kids);
      return out;
    };
    return node(proof.root).dump(2) + "\n";
  }

  std::ostringstream os;
  if (fmt == Format::Dot) {
    std::map<Term, std::size_t> ids;
    auto id = [&](const Term& j) {
      return ids.emplace(j, ids.size()).first->second;
    };
    os << "digraph proof {\n  node [shape=box];\n";
    std::function<void(const Term&)> walk = [&](const Term& j) {
      expanded.insert(j);
      auto ref = rule_of(j);
      os << "  n" << id(j) << " [label=\"" << dot_escape(j.to_string());
      if (ref) os << "\\n" << rule_id(*ref);
      os << "\"];\n";
      if (!ref) return;
      for (const auto& p : sys.rule(*ref).premises()) {
        bool back = expanded.contains(p);
        os << "  n" << id(j) << " -> n" << id(p);
        if (back) os << " [style=dashed, constraint=false, label=\"" << rule_id(*ref) << "\"]";
        os << ";\n";
        if (!back) walk(p);
      }
    };
    walk(proof.root);
    os << "}\n";
    return os.str();
  }

  std::function<void(const Term&, std::size_t)> line = [&](const Term& j, std::size_t depth) {
    os << std::string(2 * depth, ' ') << j;
    if (!expanded.insert(j).second) {
      os << "  (see above)\n";
      return;
    }
    auto ref = rule_of(j);
    if (!ref) {
      os << "  [?]\n";
      return;
    }
    os << "  [" << rule_id(*ref) << "]\n";
    for (const auto& p : sys.rule(*ref).premises()) line(p, depth + 1);
  };
  line(proof.root, 0);
  return os.str();
}

std::string render(const Verdict& v, Format fmt) {
  if (fmt == Format::Json) {
    Json out;
    out["accepted"] = v.accepted;
    Json fails = Json::array();
    for (const auto& f : v.failures) {
      fails.push_back({{"judgment", f.judgment.to_string()}, {"reason", to_string(f.reason)}});
    }
    out["failures"] = std::move(fails);
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << (v.accepted ? "accepted" : "rejected") << "\n";
  for (const auto& f : v.failures) os << "  " << f.judgment << ": " << to_string(f.reason) << "\n";
  return os.str();
}

std::string render(const ValidationReport& r, Format fmt) {
  if (fmt == Format::Json) {
    Json out;
    out["passed"] = r.passed();
    Json list = Json::array();
    for (const auto& v : r.violations) {
      list.push_back({{"judgment", v.judgment.to_string()},
                      {"reason", to_string(v.reason)},
                      {"depth", v.depth},
                      {"detail", v.detail}});
    }
    out["violations"] = std::move(list);
    return out.dump(2) + "\n";
  }
  std::ostringstream os;
  os << (r.passed() ? "valid" : "invalid") << "\n";
  for (const auto& v : r.violations) {
    os << "  " << v.judgment << ": " << to_string(v.reason);
    if (!v.detail.empty()) os << " (" << v.detail << ")";
    os << "\n";
  }
  return os.str();
}

}  // namespace coax
