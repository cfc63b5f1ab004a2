#pragma once

#include <string>
#include <vector>

#include "ioa/nioa.hpp"

namespace ioa {

// Acceptance analysis over an explicit graph. Nodes carry the state label
// the acceptance component is evaluated on (for CBR graphs that is the
// underlying product state, so several nodes may share a label).
struct AcceptanceAnalysis {
    std::vector<bool> halt_ok;        // per node: halt-accepting
    std::vector<bool> on_good_cycle;  // node lies in a realizable accepting set
    std::vector<bool> satisfiable;    // acceptance reachable from node
    bool capped = false;              // an SCC exceeded the subset-enumeration limit
};

// Computes, per node, whether the acceptance condition can still be met:
// either a halt-accepting node is reachable, or a cycle whose label set
// satisfies inf_accepts is reachable. Cycle candidates are enumerated as
// subsets of nontrivial SCCs (needed only when `acc` has a Muller part);
// SCCs larger than `scc_subset_limit` set the capped flag instead of
// guessing.
AcceptanceAnalysis analyze_acceptance(const std::vector<std::string>& node_labels,
                                      const std::vector<std::vector<int>>& succ,
                                      const Acceptance& acc,
                                      size_t scc_subset_limit = 12);

// Tarjan SCCs, iterative. Returns one vector of node indices per SCC.
std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& succ);

// BFS parents from node 0 (or `from`); -1 marks unreached/root.
std::vector<int> bfs_parents(const std::vector<std::vector<int>>& succ, int from = 0);

// Path of node indices from `from` to `to` following BFS parents.
std::vector<int> path_to(const std::vector<int>& parents, int from, int to);

}  // namespace ioa
