#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coax/system.hpp"
#include "coax/term.hpp"

namespace coax {

struct ProofNode {
  Term judgment;
  RuleRef rule;
  std::vector<std::size_t> children;  // indices into WfProof::nodes
};

/// A well-founded proof tree, stored as a DAG: identical subtrees built for
/// the same judgment at the same level are shared, so trees of large levels
/// stay linear in size. The tree is the unfolding of `nodes` from `root`.
struct WfProof {
  std::vector<ProofNode> nodes;
  std::size_t root = 0;

  const ProofNode& root_node() const { return nodes[root]; }
  const ProofNode& at(std::size_t i) const { return nodes[i]; }

  /// Length of the longest root-to-leaf path (a single node has height 0).
  std::size_t height() const;
  /// Smallest depth at which a co rule is applied, if any.
  std::optional<std::size_t> min_co_depth() const;
  /// The same DAG rooted at another node.
  WfProof subtree(std::size_t node) const;
};

/// A possibly infinite proof tree over regular rules, given by choosing one
/// rule per judgment. Its unfolding from `root` is the tree.
struct RegularProof {
  Term root;
  std::map<Term, std::size_t> choice;  // judgment -> regular-rule index
};

/// Well-founded proof of `j` in the extended system (co rules as axioms).
/// Present exactly when j is in the bound.
std::optional<WfProof> prove_wf(const System& sys, const Term& j);

/// Approximated proof tree of level `n`: regular rules down to depth n, with
/// co rules only at depth >= n. Present exactly when j is in step^n(bound).
std::optional<WfProof> prove_approx(const System& sys, const Term& j, std::size_t n);

/// Regular proof staying inside the generated interpretation. Present exactly
/// when j is generated.
std::optional<RegularProof> prove_regular(const System& sys, const Term& j);

struct ValidationMode {
  enum class Kind { WfExtended, Approx, RegularGenerated };
  Kind kind = Kind::WfExtended;
  std::size_t level = 0;

  static ValidationMode wf_extended() { return {Kind::WfExtended, 0}; }
  static ValidationMode approx(std::size_t n) { return {Kind::Approx, n}; }
  static ValidationMode regular_generated() { return {Kind::RegularGenerated, 0}; }
};

struct Violation {
  enum class Reason {
    UnknownRule,         // rule reference out of range
    ConclusionMismatch,  // referenced rule concludes something else
    PremiseMismatch,     // children labels differ from the premise set
    CoRuleTooShallow,    // co rule above the required level
    MissingChoice,       // premise (or root) without a chosen rule
    NotInBound,          // node judgment outside the bound
    Cyclic,              // node graph of a WfProof is not well-founded
    WrongMode,           // mode does not apply to this proof object
  };
  Reason reason;
  Term judgment;
  std::size_t depth = 0;  // WfProof only: depth of the first offending occurrence
  std::string detail;
};

std::string to_string(Violation::Reason r);

struct ValidationReport {
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
};

ValidationReport validate(const System& sys, const WfProof& proof, ValidationMode mode);
ValidationReport validate(const System& sys, const RegularProof& proof,
                          ValidationMode mode = ValidationMode::regular_generated());

}  // namespace coax
