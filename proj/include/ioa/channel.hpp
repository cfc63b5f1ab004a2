#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ioa/nioa.hpp"

namespace ioa {

// Identification of one output component of an automaton with one of its
// input components: a character emitted on `out_component` must be consumed
// at `in_component` in the next step.
struct ShannonChannel {
    size_t out_component = 0;
    size_t in_component = 0;
    std::string name;  // used in reports and pending renderings

    bool operator==(const ShannonChannel&) const = default;
};

struct CbrState {
    std::string base;                  // state of the underlying automaton
    std::vector<std::string> pending;  // per channel; eps = nothing in flight
};

struct CbrEdge {
    size_t from = 0;
    size_t to = 0;
    Transition via;  // the underlying transition
};

struct CbrOptions {
    size_t state_cap = 100'000;
    // Explore all interleavings of forced receives when several characters
    // are in flight. Off by default: a transition that would leave two
    // characters pending at once is rejected at construction time.
    bool tree = false;
};

// The channel based restricted automaton: all (state, pending) pairs
// reachable under the channel execution rules, with only the executable
// transitions.
struct CbrAutomaton {
    NIOA base;
    std::vector<ShannonChannel> channels;
    std::vector<CbrState> states;  // BFS order; [0] is initial
    std::vector<CbrEdge> edges;    // sorted by (from, via)
    bool capped = false;
    bool tree_mode = false;

    std::string render_state(size_t idx) const;  // "base" or "base!ch=sym[,ch=sym]"
    std::vector<std::vector<int>> successor_index() const;
    std::vector<std::vector<const CbrEdge*>> edge_index() const;

    // Lifted view for export: rendered CBR states, halt-acceptance
    // materialized as a Finite set. The checkers and the runner work on the
    // structured form, not on this view.
    NIOA as_nioa() const;
};

struct NonLinearError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds the CBR automaton. Throws on a type-incompatible channel
// (O_k must be a subset of I_l) and, without tree mode, on transitions
// that would put two characters in flight at once.
CbrAutomaton attach_channels(const NIOA& base, std::vector<ShannonChannel> channels,
                             const CbrOptions& opts = {});

// Every input and output vector has at most one non-eps component.
bool is_linear_executable(const NIOA& a);
bool is_linear_executable(const CbrAutomaton& a);

}  // namespace ioa
