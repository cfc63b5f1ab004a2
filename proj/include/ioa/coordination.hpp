#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ioa/product.hpp"
#include "ioa/protocol.hpp"

namespace ioa {

// Names a set of role-level transitions; "*" wildcards any field.
struct TransitionClassRef {
    std::string role;
    std::string from = "*";
    std::string to = "*";
    std::string input = "*";   // rendered role input ("eps" for spontaneous)
    std::string output = "*";

    bool operator==(const TransitionClassRef&) const = default;
};

// Guard-based transition eliminator: when the guard fires at a product
// state, the listed transition classes are forbidden there. Guards are
// decision tables over the mode components of the global state and the
// input character.
struct CoordinationRule {
    std::string name;
    std::map<std::string, std::string> when_modes;  // role name -> required component state
    std::optional<std::string> on_input;  // rendered role input filter ("eps" allowed)
    std::vector<TransitionClassRef> forbid;

    bool operator==(const CoordinationRule&) const = default;
};

struct CoordinatedAutomaton {
    std::string name;
    ProductResult base;       // unrestricted product of the roles
    std::vector<NIOA> roles;
    std::vector<CoordinationRule> rules;
    NIOA result;              // restricted transition relation, same Q/I/O/Acc
    std::vector<ProjectionMap> role_projections;
};

struct CoordinationViolation {
    std::string condition;  // "quasi-determinism" | "acceptance-retention" | "projection-retention"
    std::string witness;
};

struct ApplyOutcome {
    std::optional<CoordinatedAutomaton> automaton;
    std::optional<CoordinationViolation> violation;
    bool ok() const { return automaton.has_value(); }
};

// Removes every transition whose class is forbidden by a firing guard,
// then verifies quasi-determinism, acceptance satisfiability from every
// reachable state, and recovery of every role by projection. Throws when a
// rule references a class matching no transition of the named role.
ApplyOutcome apply_rules(const ProductResult& base, const std::vector<NIOA>& roles,
                         const std::vector<CoordinationRule>& rules,
                         std::string name = {});

// Independent re-check of the three retention conditions.
CheckReport check_coordinated(const CoordinatedAutomaton& c);

struct SynthesisResult {
    bool found = false;  // false = budget exhausted
    std::vector<CoordinationRule> rules;
    size_t candidates_tried = 0;
};

// Brute force over transition subsets to remove, smallest first, skipping
// subsets that would erase a role's last representative; the first subset
// passing the retention checks is returned as per-state forbid rules.
SynthesisResult synthesize_rules(const ProductResult& base, const std::vector<NIOA>& roles,
                                 size_t budget);

// A system taking part in at least two distinct protocol interactions:
// a coordinated automaton plus the counterparty each role faces.
struct ProcessSpec {
    std::string name;
    CoordinatedAutomaton coordinated;
    std::map<std::string, std::string> external_bindings;  // role name -> counterparty
};

struct ProcessCompositionError {
    std::string reason;
};

struct ProcessCompositionResult {
    std::optional<ProcessSpec> process;
    std::optional<ProcessCompositionError> rejection;
    bool ok() const { return process.has_value(); }
};

// Couples two processes through a consistent protocol that connects one
// role of each. The protocol traffic becomes internal (its components are
// hidden); the remaining roles keep their bindings. Rejected when the via
// protocol is not consistent, when a process would lose its last external
// interaction, or when the leftover externals all face the same
// counterparty (closed chain).
ProcessCompositionResult compose_processes(const ProcessSpec& p1, const ProcessSpec& p2,
                                           const Protocol& via, std::string name = {});

}  // namespace ioa
