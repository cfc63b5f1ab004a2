#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ioa/system.hpp"

namespace ioa {

// --- checked naturals ---
// Carriers for the recursion operators are machine naturals with an
// explicit overflow error at 2^63-1.
inline constexpr uint64_t nat_max = (uint64_t{1} << 63) - 1;

struct OverflowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

uint64_t checked_add(uint64_t a, uint64_t b);
uint64_t checked_mul(uint64_t a, uint64_t b);

using NatFn1 = std::function<uint64_t(uint64_t)>;
using NatFn2 = std::function<uint64_t(uint64_t, uint64_t)>;
using NatFn3 = std::function<uint64_t(uint64_t, uint64_t, uint64_t)>;

// --- sequential / parallel / U composition ---

// s1 feeds s2 within one composed step: state (q1, last internal character,
// q2), input of s1, output of s2. Requires O1 subset of I2. When the
// internal character is eps and s2 is unclocked, s2 stays put for that step.
SystemSpec compose_sequential(const SystemSpec& s1, const SystemSpec& s2);

// Shared input, paired output "(o1,o2)". Requires I1 == I2.
SystemSpec compose_parallel(const SystemSpec& s1, const SystemSpec& s2);

struct UComposition {
    SystemSpec system;  // s3 . s2 . s1
    std::string note;   // records that the outer pair alone is not a system
};
UComposition compose_u(const SystemSpec& s1, const SystemSpec& s2, const SystemSpec& s3);

// --- recursion operators ---

// Counter system: clocked, no input, (q', out') = (q+1, q).
SystemSpec make_counter(std::string name);
// For-loop body: state {a}, input pairs "b,c", output h(a,b,c).
SystemSpec make_loop_body(std::string name, NatFn3 h, uint64_t a);
// While body (zero finder): state {a}, input "b", output g(a,b).
SystemSpec make_zero_finder(std::string name, NatFn2 g, uint64_t a);

// Coupling of a counter and a loop body for n steps, with `preload` = g(a)
// sitting on the feedback channel. The result is a finite clocked system
// with no input; stepping it n times leaves f(a,n) on the feedback channel
// (read with run_loop). Termination after n steps is the caller's duty: the
// final state loops, echoing f(a,n).
SystemSpec compose_loop(const SystemSpec& iter, const SystemSpec& body,
                        uint64_t preload, uint64_t n);

// Output value after stepping `loop_system` n times from its initial state
// (n = 0 reads the preloaded feedback).
uint64_t run_loop(const SystemSpec& loop_system, uint64_t n);

struct WhileResult {
    bool found = false;     // false = budget exhausted (a result, not an error)
    uint64_t delta = 0;     // smallest b with g(a,b) == 0 when found
    uint64_t steps_used = 0;
};

// Mu operator by coupling a counter with a zero finder: returns the
// smallest delta with g(a, delta) == 0 if reached within `budget` steps.
WhileResult compose_while(const SystemSpec& iter, const SystemSpec& zero_finder,
                          uint64_t budget);

// --- functional equivalence ---

struct EquivalenceWitness {
    std::map<std::string, std::string> state_bijection;   // reachable states of s1 -> s2
    std::map<std::string, std::string> input_bijection;   // eps -> eps implicit
    std::map<std::string, std::string> output_bijection;  // over outputs in use
    int64_t time_shift = 0;                               // psi(t) = t + shift
    bool verified = false;
};

struct EquivalenceResult {
    bool equivalent = false;
    std::optional<EquivalenceWitness> witness;
    // Shortest distinguishing input sequence under the identity renaming,
    // when the alphabets coincide; illustrative only (inequivalence is
    // established by exhausting the witness search).
    std::vector<std::string> counterexample;
    std::string note;
    bool capped = false;
};

// Brute-force search for component-wise bijections (states, inputs,
// outputs) commuting with the extended step functions, over the reachable
// parts of both systems; `horizon` bounds the reachability exploration.
EquivalenceResult functionally_equivalent(const SystemSpec& s1, const SystemSpec& s2,
                                          size_t horizon);

// --- compositionality checks ---

enum class CompositionOp { Sequential, Parallel, Loop, While, U };

struct CompositionalityReport {
    CompositionOp op;
    bool compositional = false;  // derivable from the factor functions plus wiring alone
    std::string detail;
};

// Rebuild the composed function from the factor tables plus wiring metadata
// alone and compare against the composition operator's own result.
CompositionalityReport check_compositionality_sequential(const SystemSpec& s1,
                                                         const SystemSpec& s2);
CompositionalityReport check_compositionality_parallel(const SystemSpec& s1,
                                                       const SystemSpec& s2);
CompositionalityReport check_compositionality_loop(const SystemSpec& iter,
                                                   const SystemSpec& body,
                                                   uint64_t preload, uint64_t n);
// Exhibits two zero finders with identical tables below b=5 whose smallest
// zeros differ (5 vs 7): the while time step is not derivable from bounded
// factor tables.
CompositionalityReport check_compositionality_while();

}  // namespace ioa
