#include "ioa/analysis.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace ioa {

std::vector<std::vector<int>> strongly_connected_components(
    const std::vector<std::vector<int>>& succ) {
    const int n = static_cast<int>(succ.size());
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int next = 0;

    // iterative Tarjan
    struct Frame {
        int v;
        size_t child;
    };
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < succ[f.v].size()) {
                int w = succ[f.v][f.child++];
                if (index[w] == -1) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    sccs.push_back(std::move(comp));
                }
            }
        }
    }
    std::sort(sccs.begin(), sccs.end());
    return sccs;
}

std::vector<int> bfs_parents(const std::vector<std::vector<int>>& succ, int from) {
    std::vector<int> parent(succ.size(), -2);  // -2 unreached, -1 root
    if (from < 0 || from >= static_cast<int>(succ.size())) return parent;
    parent[from] = -1;
    std::deque<int> work{from};
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (int w : succ[v])
            if (parent[w] == -2) {
                parent[w] = v;
                work.push_back(w);
            }
    }
    return parent;
}

std::vector<int> path_to(const std::vector<int>& parents, int from, int to) {
    std::vector<int> path;
    if (to < 0 || to >= static_cast<int>(parents.size()) || parents[to] == -2) return path;
    for (int v = to; v != -1; v = parents[v]) {
        path.push_back(v);
        if (v == from) break;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

namespace {

// strong connectivity of the subgraph induced on `nodes`, requiring at
// least one edge (so a singleton needs a self-loop)
bool induced_strongly_connected(const std::vector<std::vector<int>>& succ,
                                const std::vector<int>& nodes) {
    std::set<int> in(nodes.begin(), nodes.end());
    bool any_edge = false;
    for (int v : nodes)
        for (int w : succ[v])
            if (in.count(w)) any_edge = true;
    if (!any_edge) return false;
    // forward reach within the set from nodes[0]
    auto reach_within = [&](auto neighbors) {
        std::set<int> seen{nodes[0]};
        std::deque<int> work{nodes[0]};
        while (!work.empty()) {
            int v = work.front();
            work.pop_front();
            for (int w : neighbors(v))
                if (in.count(w) && seen.insert(w).second) work.push_back(w);
        }
        return seen.size() == in.size();
    };
    if (!reach_within([&](int v) -> const std::vector<int>& { return succ[v]; })) return false;
    // backward: build reverse adjacency restricted to the set
    std::map<int, std::vector<int>> rev;
    for (int v : nodes)
        for (int w : succ[v])
            if (in.count(w)) rev[w].push_back(v);
    return reach_within([&](int v) -> const std::vector<int>& {
        static const std::vector<int> none;
        auto it = rev.find(v);
        return it == rev.end() ? none : it->second;
    });
}

}  // namespace

AcceptanceAnalysis analyze_acceptance(const std::vector<std::string>& node_labels,
                                      const std::vector<std::vector<int>>& succ,
                                      const Acceptance& acc, size_t scc_subset_limit) {
    const size_t n = node_labels.size();
    AcceptanceAnalysis out;
    out.halt_ok.assign(n, false);
    out.on_good_cycle.assign(n, false);
    out.satisfiable.assign(n, false);

    for (size_t i = 0; i < n; ++i) out.halt_ok[i] = halt_accepts(acc, node_labels[i]);

    if (acc.has_muller()) {
        for (const auto& scc : strongly_connected_components(succ)) {
            bool nontrivial = scc.size() > 1;
            if (!nontrivial)
                for (int w : succ[scc[0]])
                    if (w == scc[0]) nontrivial = true;
            if (!nontrivial) continue;
            if (scc.size() > scc_subset_limit) {
                out.capped = true;
                continue;
            }
            const size_t m = scc.size();
            for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
                std::vector<int> subset;
                for (size_t b = 0; b < m; ++b)
                    if (mask & (uint64_t{1} << b)) subset.push_back(scc[b]);
                if (!induced_strongly_connected(succ, subset)) continue;
                std::set<std::string> labels;
                for (int v : subset) labels.insert(node_labels[v]);
                if (inf_accepts(acc, labels))
                    for (int v : subset) out.on_good_cycle[v] = true;
            }
        }
    }

    // backward closure from the halt-accepting and good-cycle nodes
    std::vector<std::vector<int>> pred(n);
    for (size_t v = 0; v < n; ++v)
        for (int w : succ[v]) pred[static_cast<size_t>(w)].push_back(static_cast<int>(v));
    std::deque<int> work;
    for (size_t i = 0; i < n; ++i)
        if (out.halt_ok[i] || out.on_good_cycle[i]) {
            out.satisfiable[i] = true;
            work.push_back(static_cast<int>(i));
        }
    while (!work.empty()) {
        int v = work.front();
        work.pop_front();
        for (int p : pred[static_cast<size_t>(v)])
            if (!out.satisfiable[static_cast<size_t>(p)]) {
                out.satisfiable[static_cast<size_t>(p)] = true;
                work.push_back(p);
            }
    }
    return out;
}

}  // namespace ioa
