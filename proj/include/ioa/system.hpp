#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ioa/nioa.hpp"

namespace ioa {

enum class Clocking { Clocked, Unclocked };

// A deterministic discrete system: internal/external transition functions
// over a scalar input/output alphabet. Unclocked systems react only to an
// applied input; clocked systems may also map the empty input.
//
// The step function is either table-backed (finite, enumerable) or
// rule-backed (a callable, for systems over natural-number carriers).
class SystemSpec {
public:
    using Key = std::pair<std::string, std::string>;        // (state, input or eps)
    using Val = std::pair<std::string, std::string>;        // (next state, output or eps)
    using Table = std::map<Key, Val>;
    using Rule = std::function<std::optional<Val>(const std::string&, const std::string&)>;

    std::string name;
    Clocking clocking = Clocking::Unclocked;
    Alphabet input;   // possibly empty
    Alphabet output;  // possibly empty
    std::vector<std::string> states;  // sorted unique; ignored when unbounded_states
    bool unbounded_states = false;    // natural-number state carrier
    std::string initial;

    // Throws when the table is not total on states x input (eps rows must
    // cover either no state or all states, and only for clocked systems).
    static SystemSpec from_table(std::string name, Clocking clocking, Alphabet input,
                                 Alphabet output, std::vector<std::string> states,
                                 std::string initial, Table table);
    static SystemSpec from_rule(std::string name, Clocking clocking, Alphabet input,
                                Alphabet output, std::vector<std::string> states,
                                bool unbounded_states, std::string initial, Rule rule);

    bool finite() const;          // enumerable states, input and table
    bool table_backed() const { return table_.has_value(); }
    const Table& table() const;   // throws when rule-backed
    bool stateless() const { return !unbounded_states && states.size() <= 1; }

    bool in_domain(const std::string& q, const std::string& i) const;
    Val apply(const std::string& q, const std::string& i) const;  // throws outside domain

private:
    std::optional<Table> table_;
    Rule rule_;
};

struct StepOut {
    std::string state;
    std::string output;  // may be eps
};

// One system step. Throws on eps input to an unclocked system ("no
// spontaneous activity") and on inputs outside the declared domain.
StepOut step(const SystemSpec& s, const std::string& q, const std::string& i);

// The corresponding deterministic I/O automaton: one transition per table
// row, single "in"/"out" ports (omitted when the respective alphabet is
// empty), every state admissible as a halt. Requires a finite system.
// Clocked eps rows become spontaneous transitions.
NIOA to_diofa(const SystemSpec& s);

}  // namespace ioa
