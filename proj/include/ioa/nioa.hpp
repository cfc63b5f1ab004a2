#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ioa/alphabet.hpp"

namespace ioa {

// Acceptance component of an automaton. Finite acceptance names the
// admissible halt states; Muller acceptance names the admissible sets of
// infinitely often visited states. A product automaton does not merge the
// factor components: it keeps them side by side (Conjunction), and factor
// k is evaluated on component k of the product state tuple.
struct Acceptance {
    enum class Kind { Finite, Muller, Conjunction };

    Kind kind = Kind::Finite;
    std::set<std::string> finite_states;              // Kind::Finite
    std::vector<std::set<std::string>> muller_sets;   // Kind::Muller
    std::vector<Acceptance> factors;                  // Kind::Conjunction

    static Acceptance finite(std::set<std::string> states);
    static Acceptance muller(std::vector<std::set<std::string>> sets);
    static Acceptance conjunction(std::vector<Acceptance> factors);

    bool has_muller() const;

    bool operator==(const Acceptance&) const = default;
};

struct Transition {
    std::string from;
    std::string to;
    SymbolVec input;
    SymbolVec output;

    auto operator<=>(const Transition&) const = default;
};

// Nondeterministic I/O automaton. States are interned strings; product
// states are tuples rendered "(s1|s2|...)".
struct NIOA {
    std::string name;
    std::vector<std::string> states;  // sorted, unique
    VectorAlphabet input;
    VectorAlphabet output;
    std::string initial;
    Acceptance acceptance;
    std::vector<Transition> transitions;  // sorted, unique

    void normalize();  // sort + dedupe states and transitions
    bool has_state(const std::string& s) const;

    bool operator==(const NIOA&) const = default;
};

std::string show_transition(const NIOA& a, const Transition& t);

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Reports every invariant violation: dangling state ids, mistyped symbols,
// empty state set, acceptance referencing unknown states.
ValidationReport validate(const NIOA& a);

// No transition uses an eps input component and at most one transition per
// (state, input vector). Output components are unconstrained.
bool is_deterministic(const NIOA& a);

// From every reachable state: at most one transition per non-eps input
// vector, and at most a single spontaneous (all-eps input) transition.
bool is_quasi_deterministic(const NIOA& a);

// Least fixed point of the one-step successor relation from the initial
// state. Inputs do not gate reachability.
std::set<std::string> reachable_states(const NIOA& a);

// --- product state tuples ---

// "(a|b|c)" -> {"a","b","c"}; respects nested parentheses; a plain state
// id yields the singleton list.
std::vector<std::string> split_tuple(const std::string& state);
std::string join_tuple(const std::vector<std::string>& parts);

// --- acceptance evaluation ---

// May an execution stop in `state` and count as accepted? Muller
// components never accept a halt.
bool halt_accepts(const Acceptance& acc, const std::string& state);

// Acceptance of an infinite run via its set of infinitely often visited
// states. A Finite component on an infinite run is read as "an accepting
// state occurs infinitely often"; a Muller component requires membership
// of the (projected) set in its family.
bool inf_accepts(const Acceptance& acc, const std::set<std::string>& inf_set);

// transitions grouped by source state (pointers into a.transitions)
std::map<std::string, std::vector<const Transition*>> outgoing_index(const NIOA& a);

}  // namespace ioa
