#include "ioa/protocol.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "ioa/analysis.hpp"
#include "json.hpp"

namespace ioa {

std::string CheckReport::to_text() const {
    std::ostringstream out;
    const char* v = verdict == Verdict::Pass ? "pass"
                    : verdict == Verdict::Fail ? "fail"
                                               : "unknown";
    out << "check " << check << " " << target << ": " << v << "\n";
    out << "explored " << explored << (capped ? " (capped)" : "") << "\n";
    for (const auto& n : notes) out << "note " << n << "\n";
    for (const auto& w : witnesses) {
        out << "witness " << w.kind << "\n";
        for (size_t i = 0; i < w.path_states.size(); ++i) {
            out << "  " << w.path_states[i] << "\n";
            if (i < w.path_labels.size()) out << "    " << w.path_labels[i] << "\n";
        }
        if (!w.cycle_states.empty()) {
            out << "  cycle:\n";
            for (const auto& s : w.cycle_states) out << "    " << s << "\n";
        }
    }
    return out.str();
}

std::string CheckReport::to_json() const {
    nlohmann::json j;
    j["report_version"] = 1;
    j["check"] = check;
    j["target"] = target;
    j["verdict"] = verdict == Verdict::Pass ? "pass" : verdict == Verdict::Fail ? "fail" : "unknown";
    j["explored"] = explored;
    j["capped"] = capped;
    j["notes"] = notes;
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : witnesses) {
        nlohmann::json jw;
        jw["kind"] = w.kind;
        jw["path_states"] = w.path_states;
        jw["path_labels"] = w.path_labels;
        jw["cycle_states"] = w.cycle_states;
        j["witnesses"].push_back(jw);
    }
    return j.dump(2);
}

Protocol build_protocol(std::string name, std::vector<NIOA> roles,
                        const std::vector<ChannelSpec>& channels, const CbrOptions& opts) {
    if (roles.empty()) throw std::invalid_argument("protocol '" + name + "': no roles");
    for (const auto& r : roles) {
        auto v = validate(r);
        if (!v.ok())
            throw std::invalid_argument("protocol '" + name + "': role '" + r.name +
                                        "' invalid: " + v.violations.front());
    }

    Protocol p;
    p.name = std::move(name);
    p.roles = std::move(roles);
    p.product = weakly_synchronized_product(p.roles);

    // roles provide at most one character per I/O vector <=> the protocol
    // is linear-executable
    p.linear = true;
    for (const auto& r : p.roles)
        if (!is_linear_executable(r)) p.linear = false;
    if (!p.linear) {
        p.warnings.push_back("not linear-executable: execution depends on the strategy");
        if (!opts.tree)
            throw NonLinearError("protocol '" + p.name +
                                 "' is not linear-executable; tree mode is required");
    }

    auto role_index = [&](const std::string& rname) -> int {
        for (size_t i = 0; i < p.roles.size(); ++i)
            if (p.roles[i].name == rname) return static_cast<int>(i);
        return -1;
    };

    std::vector<bool> in_covered(p.product.product.input.size(), false);
    std::vector<bool> out_covered(p.product.product.output.size(), false);
    std::vector<bool> role_touched(p.roles.size(), false);

    for (const auto& cs : channels) {
        int from = role_index(cs.from_role);
        int to = role_index(cs.to_role);
        if (from < 0 || to < 0)
            throw std::invalid_argument("channel '" + cs.name + "' names an unknown role");
        int op = p.roles[from].output.index_of(cs.from_port);
        int ip = p.roles[to].input.index_of(cs.to_port);
        if (op < 0)
            throw std::invalid_argument("channel '" + cs.name + "': role '" + cs.from_role +
                                        "' has no output port '" + cs.from_port + "'");
        if (ip < 0)
            throw std::invalid_argument("channel '" + cs.name + "': role '" + cs.to_role +
                                        "' has no input port '" + cs.to_port + "'");
        ShannonChannel ch;
        ch.name = cs.name;
        ch.out_component = p.product.slices[from].out_begin + static_cast<size_t>(op);
        ch.in_component = p.product.slices[to].in_begin + static_cast<size_t>(ip);
        out_covered[ch.out_component] = true;
        in_covered[ch.in_component] = true;
        role_touched[static_cast<size_t>(from)] = true;
        role_touched[static_cast<size_t>(to)] = true;
        if (from == to)
            p.warnings.push_back("channel '" + cs.name + "' couples role '" + cs.from_role +
                                 "' to itself");
        p.channels.push_back(ch);
    }
    if (p.roles.size() == 1 && !p.channels.empty())
        p.warnings.push_back("degenerate: single-party protocol");

    for (size_t i = 0; i < in_covered.size(); ++i)
        if (!in_covered[i])
            throw OpenCouplingError("protocol '" + p.name + "' is open: input component '" +
                                    p.product.product.input.ports[i].name + "' is unconnected");
    for (size_t i = 0; i < out_covered.size(); ++i)
        if (!out_covered[i])
            throw OpenCouplingError("protocol '" + p.name + "' is open: output component '" +
                                    p.product.product.output.ports[i].name + "' is unconnected");
    for (size_t i = 0; i < role_touched.size(); ++i)
        if (!role_touched[i])
            throw OpenCouplingError("protocol '" + p.name + "': role '" + p.roles[i].name +
                                    "' contributes no channel endpoint");

    p.cbr = attach_channels(p.product.product, p.channels, opts);
    for (size_t k = 0; k < p.roles.size(); ++k)
        p.role_projections.push_back(factor_projection(p.product, k, p.roles));
    return p;
}

namespace {

// path witness from the BFS tree of the CBR graph
Witness make_path_witness(const Protocol& p, const std::vector<int>& parents,
                          const std::vector<std::vector<const CbrEdge*>>& edges, int target,
                          std::string kind) {
    Witness w;
    w.kind = std::move(kind);
    auto nodes = path_to(parents, 0, target);
    for (size_t i = 0; i < nodes.size(); ++i) {
        w.path_states.push_back(p.cbr.render_state(static_cast<size_t>(nodes[i])));
        if (i + 1 < nodes.size()) {
            for (const CbrEdge* e : edges[static_cast<size_t>(nodes[i])])
                if (static_cast<int>(e->to) == nodes[i + 1]) {
                    w.path_labels.push_back(show_transition(p.cbr.base, e->via));
                    break;
                }
        }
    }
    return w;
}

}  // namespace

CheckReport check_well_formed(const Protocol& p) {
    CheckReport r;
    r.check = "well-formed";
    r.target = p.name;
    r.explored = p.cbr.states.size();
    r.capped = p.cbr.capped;
    for (const auto& wmsg : p.warnings) r.notes.push_back(wmsg);

    auto succ = p.cbr.successor_index();
    auto edges = p.cbr.edge_index();
    auto parents = bfs_parents(succ);

    for (size_t i = 0; i < p.cbr.states.size(); ++i) {
        bool has_pending = std::any_of(p.cbr.states[i].pending.begin(),
                                       p.cbr.states[i].pending.end(),
                                       [](const std::string& s) { return !s.empty(); });
        if (!has_pending) continue;
        // under the channel rules every enabled transition here is a
        // receiving one; none means the sent character is unprocessable
        if (succ[i].empty()) {
            r.verdict = CheckReport::Verdict::Fail;
            r.witnesses.push_back(
                make_path_witness(p, parents, edges, static_cast<int>(i), "unreceived-send"));
        }
    }
    if (r.verdict == CheckReport::Verdict::Pass && r.capped)
        r.verdict = CheckReport::Verdict::Unknown;
    return r;
}

CheckReport check_consistent(const Protocol& p) {
    CheckReport r;
    r.check = "consistent";
    r.target = p.name;
    r.explored = p.cbr.states.size();
    r.capped = p.cbr.capped;

    auto wf = check_well_formed(p);
    if (wf.verdict == CheckReport::Verdict::Fail) {
        r.verdict = CheckReport::Verdict::Fail;
        r.notes.push_back("not well-formed");
        r.witnesses = wf.witnesses;
        return r;
    }

    auto succ = p.cbr.successor_index();
    auto edges = p.cbr.edge_index();
    auto parents = bfs_parents(succ);

    std::vector<std::string> labels(p.cbr.states.size());
    for (size_t i = 0; i < labels.size(); ++i) labels[i] = p.cbr.states[i].base;
    auto analysis = analyze_acceptance(labels, succ, p.cbr.base.acceptance);
    if (analysis.capped) {
        r.capped = true;
        r.notes.push_back("acceptance analysis capped");
    }

    bool have_deadlock = false, have_livelock = false;
    for (size_t i = 0; i < p.cbr.states.size() && (!have_deadlock || !have_livelock); ++i) {
        if (analysis.satisfiable[i]) continue;
        r.verdict = CheckReport::Verdict::Fail;
        if (succ[i].empty()) {
            if (have_deadlock) continue;
            have_deadlock = true;
            r.witnesses.push_back(
                make_path_witness(p, parents, edges, static_cast<int>(i), "deadlock"));
        } else {
            if (have_livelock) continue;
            // every continuation stays unsatisfiable; walk until a state
            // repeats to exhibit the cycle
            std::vector<int> walk{static_cast<int>(i)};
            std::map<int, size_t> seen{{static_cast<int>(i), 0}};
            std::vector<int> cycle;
            int cur = static_cast<int>(i);
            while (true) {
                if (succ[cur].empty()) break;  // runs into a deadlock instead
                int nxt = succ[cur].front();
                auto it = seen.find(nxt);
                if (it != seen.end()) {
                    cycle.assign(walk.begin() + static_cast<long>(it->second), walk.end());
                    break;
                }
                seen[nxt] = walk.size();
                walk.push_back(nxt);
                cur = nxt;
            }
            if (cycle.empty()) continue;
            have_livelock = true;
            // a cycle of forced receives only never lets the interaction
            // chain terminate
            bool all_forced = true;
            for (size_t k = 0; k < cycle.size(); ++k) {
                size_t from = static_cast<size_t>(cycle[k]);
                const auto& pend = p.cbr.states[from].pending;
                if (std::all_of(pend.begin(), pend.end(),
                                [](const std::string& s) { return s.empty(); }))
                    all_forced = false;
            }
            Witness w = make_path_witness(p, parents, edges, cycle.front(),
                                          all_forced ? "livelock (nonterminating interaction chain)"
                                                     : "livelock");
            for (int c : cycle) w.cycle_states.push_back(p.cbr.render_state(static_cast<size_t>(c)));
            w.cycle_states.push_back(p.cbr.render_state(static_cast<size_t>(cycle.front())));
            r.witnesses.push_back(std::move(w));
        }
    }

    if (r.verdict == CheckReport::Verdict::Pass && r.capped)
        r.verdict = CheckReport::Verdict::Unknown;
    return r;
}

}  // namespace ioa
