#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ioa/nioa.hpp"

namespace ioa {

// Component ranges a factor occupies in the product I/O vectors.
struct FactorSlice {
    size_t in_begin = 0, in_end = 0;
    size_t out_begin = 0, out_end = 0;
};

struct ProductOptions {
    // Prefix each factor's port names with "<factor name>.". When off, the
    // original names are kept and a collision raises an error.
    bool prefix_port_names = true;
    size_t state_cap = 1'000'000;
};

struct ProductResult {
    NIOA product;
    std::vector<FactorSlice> slices;
    std::vector<std::string> factor_names;
    bool capped = false;
};

// Weakly synchronized product: reachable state tuples only, one factor
// moves per transition (eps padding elsewhere), acceptance kept as the
// conjunction of the factor components.
ProductResult weakly_synchronized_product(const std::vector<NIOA>& factors,
                                          const ProductOptions& opts = {});

// A projection: total state map plus keep-masks and optional symbol maps
// per I/O component. Symbol maps preserve eps implicitly.
struct ProjectionMap {
    std::map<std::string, std::string> state_map;  // total on the source states
    std::vector<size_t> input_keep;                // kept input components, ascending
    std::vector<size_t> output_keep;
    std::map<std::string, std::string> input_symbol_map;
    std::map<std::string, std::string> output_symbol_map;
    std::vector<std::string> input_port_names;   // names for kept ports; empty = keep source names
    std::vector<std::string> output_port_names;
    std::optional<size_t> factor;  // set when projecting a product onto that factor

    static ProjectionMap identity(const NIOA& a);
};

// Image automaton: mapped states, initial, acceptance and transitions,
// deduplicated to the smallest set. Stationary images (from==to with all-eps
// I/O) are dropped unless the source transition was itself such a self-loop.
// Throws on a non-total or non-idempotent map.
NIOA project(const NIOA& a, const ProjectionMap& p);

// Projection of a product onto factor k (state component extraction plus
// that factor's I/O slice, port names restored).
ProjectionMap factor_projection(const ProductResult& pr, size_t k,
                                const std::vector<NIOA>& factors);

// --- transition partitioning (extended automata) ---

struct NamedCondition {
    std::string name;
    // decision table over (rest component of the source state, input
    // parameter value); "*" matches anything
    std::set<std::pair<std::string, std::string>> true_rows;

    bool eval(const std::string& rest, const std::string& param) const;
};

struct TransitionPartition {
    std::map<std::string, std::string> doc_class_of;  // symbol -> document class
    std::map<std::string, std::string> param_of;      // symbol -> parameter value
    std::map<std::string, std::pair<std::string, std::string>> mode_of;  // state -> (mode, rest)
    std::vector<NamedCondition> conditions;
};

// Class signature of a transition under tp, rendered
// "docI,docO,pmode,qmode[,cond=val...]". The source rest component and the
// output parameters do not enter the signature.
std::string class_signature(const NIOA& a, const Transition& t, const TransitionPartition& tp);

// Partition of the transition set into equivalence classes keyed by the
// class signature. Throws when a symbol lacks a document class or a state
// lacks a mode assignment.
std::map<std::string, std::vector<Transition>> partition_transitions(
    const NIOA& a, const TransitionPartition& tp);

}  // namespace ioa
