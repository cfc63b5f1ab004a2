#pragma once

#include <string>
#include <vector>

#include "ioa/channel.hpp"
#include "ioa/product.hpp"

namespace ioa {

struct Witness {
    std::string kind;  // "unreceived-send" | "deadlock" | "livelock" | ...
    std::vector<std::string> path_states;  // rendered states from the initial one
    std::vector<std::string> path_labels;  // rendered transitions along the path
    std::vector<std::string> cycle_states; // the cycle, for livelock witnesses
};

struct CheckReport {
    enum class Verdict { Pass, Fail, Unknown };

    Verdict verdict = Verdict::Pass;
    std::string check;   // "well-formed" | "consistent" | "coordinated"
    std::string target;
    std::vector<Witness> witnesses;
    size_t explored = 0;
    bool capped = false;
    std::vector<std::string> notes;

    bool passed() const { return verdict == Verdict::Pass; }
    std::string to_text() const;  // stable line-oriented form
    std::string to_json() const;  // report_version 1
};

// Channel endpoint spec at role/port granularity; resolved to product
// vector components when the protocol is built.
struct ChannelSpec {
    std::string name;
    std::string from_role, from_port;
    std::string to_role, to_port;
};

// A closed CBR product automaton over its roles.
struct Protocol {
    std::string name;
    std::vector<NIOA> roles;
    std::vector<ShannonChannel> channels;
    ProductResult product;  // the unrestricted weakly synchronized product
    CbrAutomaton cbr;
    std::vector<ProjectionMap> role_projections;
    bool linear = true;
    std::vector<std::string> warnings;
};

struct OpenCouplingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Builds the product, resolves and attaches the channels, and verifies
// closedness (every I/O component connected; the offending "role.port" is
// named otherwise). Self-connected roles are accepted with a warning. A
// non-linear role set is refused unless opts.tree is set.
Protocol build_protocol(std::string name, std::vector<NIOA> roles,
                        const std::vector<ChannelSpec>& channels,
                        const CbrOptions& opts = {});

// Safety: fails with a shortest witness path when some reachable CBR state
// holds a pending character nobody can receive. Capped exploration yields
// verdict Unknown, never a silent pass.
CheckReport check_well_formed(const Protocol& p);

// Liveness: from every reachable CBR state the acceptance condition must
// remain satisfiable. Reports deadlock states (no continuation) and
// livelock cycles; a livelock cycle made of forced receives only is
// labelled as a nonterminating interaction chain.
CheckReport check_consistent(const Protocol& p);

}  // namespace ioa
