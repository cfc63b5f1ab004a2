#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ioa/channel.hpp"
#include "ioa/coordination.hpp"
#include "ioa/nioa.hpp"

namespace ioa {

enum class Policy { Arbitrary, WeakFair, StrongFair };

std::string show_policy(Policy p);
std::optional<Policy> parse_policy(const std::string& s);

struct SchedulerConfig {
    uint64_t seed = 0;
    Policy policy = Policy::Arbitrary;
    uint64_t max_steps = 100;      // >= 1
    size_t fairness_window = 100;  // window of the finite-trace fairness surrogate
};

struct TraceStep {
    uint64_t index = 0;
    std::string state_before;
    std::string state_after;
    std::string input;    // rendered ("eps" for spontaneous)
    std::string output;
    std::string pending;  // snapshot after the step; "-" when nothing in flight
    Transition via;
};

enum class TraceVerdict { Accepted, Rejected, Undetermined };

std::string show_verdict(TraceVerdict v);

struct ExecutionTrace {
    std::string target;
    uint64_t seed = 0;
    Policy policy = Policy::Arbitrary;
    std::vector<TraceStep> steps;
    TraceVerdict verdict = TraceVerdict::Undetermined;
    std::string final_state;
    std::string halt_reason;  // "quiescent" | "horizon" | "lasso" | "script exhausted"

    // Line-oriented form, "index|state|in|out|pending" per step, bit-stable
    // across runs. Product state names keep their inner pipes inside
    // parentheses, so fields still split unambiguously.
    std::string to_text() const;
    std::string to_json() const;
};

struct ScriptRejected : std::runtime_error {
    size_t at_step;
    ScriptRejected(size_t step, const std::string& what)
        : std::runtime_error(what), at_step(step) {}
};

// Runs an automaton for at most cfg.max_steps steps. The choice among the
// enabled transitions is a pure function of (seed, step index, sorted
// enabled set); identical configurations replay byte-identically. A script
// is a list of rendered inputs ("port=sym" or "eps"); a scripted input with
// no enabled transition throws ScriptRejected.
ExecutionTrace run(const NIOA& target, const SchedulerConfig& cfg,
                   const std::vector<std::string>* script = nullptr);
ExecutionTrace run(const CbrAutomaton& target, const SchedulerConfig& cfg,
                   const std::vector<std::string>* script = nullptr);
// Refuses a target that is not quasi-deterministic.
ExecutionTrace run(const CoordinatedAutomaton& target, const SchedulerConfig& cfg,
                   const std::vector<std::string>* script = nullptr);

struct FairnessResult {
    bool fair = true;
    std::optional<size_t> violation_at;  // trace position of the first violation
    std::string character;               // the starved input character
};

// Windowed fairness surrogate on a finite trace: an input character
// enabled for `window` consecutive steps (weak) or at `window` steps since
// it was last chosen (strong) without being chosen is a violation. The
// enabled sets are recomputed from the target; a trace that does not replay
// on the target is rejected.
FairnessResult check_fairness(const ExecutionTrace& t, const NIOA& target, Policy policy,
                              size_t window);
FairnessResult check_fairness(const ExecutionTrace& t, const CbrAutomaton& target,
                              Policy policy, size_t window);

// Post-hoc validator of the channel rules: recomputes the pending
// characters along the trace from the transitions alone and confirms every
// step consumes exactly what the rules dictate. Independent of the CBR
// construction. Returns false and fills *err on the first violation.
bool validate_cbr_trace(const ExecutionTrace& t, const NIOA& base,
                        const std::vector<ShannonChannel>& channels, std::string* err);

}  // namespace ioa
