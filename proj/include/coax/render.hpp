#pragma once

#include <string>

#include "coax/fixpoint.hpp"
#include "coax/proof.hpp"
#include "coax/proofcheck.hpp"
#include "coax/system.hpp"

namespace coax {

enum class Format { Text, Json, Dot };

/// `r<i>` for regular rules, `c<i>` for co rules.
std::string rule_id(RuleRef ref);

/// Text: one `judgment.` per line; with `trace`, each iteration first as a
/// `% <phase> (k): {...}` comment line. Json: {phase, judgments[, trace,
/// bound_trace]}. Dot is not defined for interpretations.
std::string render(const Interpretation& interp, Format fmt, bool trace = false);

/// Proof trees. Json nodes are {judgment, rule, co, children}; in regular
/// proofs a judgment met again is emitted as {judgment, back_reference}.
/// Dot draws regular-proof back-edges dashed and labelled with the rule id.
std::string render(const System& sys, const WfProof& proof, Format fmt);
std::string render(const System& sys, const RegularProof& proof, Format fmt);

std::string render(const Verdict& v, Format fmt);
std::string render(const ValidationReport& r, Format fmt);

}  // namespace coax
