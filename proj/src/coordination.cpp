#include "ioa/coordination.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

#include "ioa/analysis.hpp"

namespace ioa {

namespace {

// role-level view of a product transition for one factor
struct FactorView {
    size_t factor;
    std::string from, to;
    std::string input, output;  // rendered ("eps" when empty)
};

// The factors a product transition can be attributed to. Normally exactly
// one (the moving one); an all-eps self-loop is ambiguous and yields every
// factor with a matching self-loop shape.
std::vector<FactorView> factor_views(const ProductResult& pr, const std::vector<NIOA>& roles,
                                     const Transition& t) {
    std::vector<FactorView> views;
    auto from = split_tuple(t.from);
    auto to = split_tuple(t.to);
    if (from.size() != roles.size() || to.size() != roles.size()) return views;
    for (size_t k = 0; k < roles.size(); ++k) {
        const FactorSlice& sl = pr.slices[k];
        bool others_eps = true;
        for (size_t i = 0; i < t.input.size(); ++i)
            if (!t.input[i].empty() && (i < sl.in_begin || i >= sl.in_end)) others_eps = false;
        for (size_t i = 0; i < t.output.size(); ++i)
            if (!t.output[i].empty() && (i < sl.out_begin || i >= sl.out_end)) others_eps = false;
        bool others_still = true;
        for (size_t j = 0; j < roles.size(); ++j)
            if (j != k && from[j] != to[j]) others_still = false;
        if (!others_eps || !others_still) continue;
        SymbolVec in(t.input.begin() + static_cast<long>(sl.in_begin),
                     t.input.begin() + static_cast<long>(sl.in_end));
        SymbolVec out(t.output.begin() + static_cast<long>(sl.out_begin),
                      t.output.begin() + static_cast<long>(sl.out_end));
        FactorView v;
        v.factor = k;
        v.from = from[k];
        v.to = to[k];
        v.input = show_vec(in, roles[k].input);
        v.output = show_vec(out, roles[k].output);
        views.push_back(std::move(v));
    }
    return views;
}

bool wild_eq(const std::string& pat, const std::string& val) { return pat == "*" || pat == val; }

bool ref_matches_view(const TransitionClassRef& ref, const std::string& role_name,
                      const FactorView& v) {
    return ref.role == role_name && wild_eq(ref.from, v.from) && wild_eq(ref.to, v.to) &&
           wild_eq(ref.input, v.input) && wild_eq(ref.output, v.output);
}

bool ref_matches_role_transition(const TransitionClassRef& ref, const NIOA& role,
                                 const Transition& t) {
    return ref.role == role.name && wild_eq(ref.from, t.from) && wild_eq(ref.to, t.to) &&
           wild_eq(ref.input, show_vec(t.input, role.input)) &&
           wild_eq(ref.output, show_vec(t.output, role.output));
}

// first quasi-determinism violation among the reachable states
std::optional<std::string> quasi_determinism_witness(const NIOA& a) {
    auto reach = reachable_states(a);
    std::map<std::string, std::map<SymbolVec, std::vector<const Transition*>>> per_state;
    for (const auto& t : a.transitions)
        if (reach.count(t.from)) per_state[t.from][t.input].push_back(&t);
    for (const auto& [state, by_input] : per_state)
        for (const auto& [input, ts] : by_input)
            if (ts.size() > 1)
                return "state " + state + " has " + std::to_string(ts.size()) +
                       " transitions on input " + show_vec(input, a.input);
    return std::nullopt;
}

// restriction of `a` to its reachable part (transitions follow)
NIOA reachable_part(const NIOA& a) {
    NIOA out = a;
    auto reach = reachable_states(a);
    out.states.assign(reach.begin(), reach.end());
    out.transitions.clear();
    for (const auto& t : a.transitions)
        if (reach.count(t.from)) out.transitions.push_back(t);
    out.normalize();
    return out;
}

std::optional<std::string> acceptance_witness(const NIOA& a) {
    NIOA r = reachable_part(a);
    std::vector<std::string> labels = r.states;
    std::map<std::string, int> id;
    for (size_t i = 0; i < labels.size(); ++i) id[labels[i]] = static_cast<int>(i);
    std::vector<std::vector<int>> succ(labels.size());
    for (const auto& t : r.transitions) succ[static_cast<size_t>(id[t.from])].push_back(id[t.to]);
    auto analysis = analyze_acceptance(labels, succ, a.acceptance);
    for (size_t i = 0; i < labels.size(); ++i)
        if (!analysis.satisfiable[i])
            return "acceptance unreachable from state " + labels[i];
    return std::nullopt;
}

std::optional<std::string> projection_witness(const ProductResult& base,
                                              const std::vector<NIOA>& roles,
                                              const NIOA& restricted,
                                              std::vector<ProjectionMap>* projections_out) {
    NIOA r = reachable_part(restricted);
    for (size_t k = 0; k < roles.size(); ++k) {
        ProjectionMap pm = factor_projection(base, k, roles);
        // narrow the total map to the reachable part
        ProjectionMap narrowed = pm;
        narrowed.state_map.clear();
        for (const auto& s : r.states) narrowed.state_map[s] = pm.state_map.at(s);
        NIOA image = project(r, narrowed);
        if (image.initial != roles[k].initial)
            return "role '" + roles[k].name + "': initial state not recovered";
        std::vector<Transition> want = roles[k].transitions;
        std::sort(want.begin(), want.end());
        if (image.transitions != want) {
            for (const auto& t : want)
                if (!std::binary_search(image.transitions.begin(), image.transitions.end(), t))
                    return "role '" + roles[k].name + "': transition " +
                           show_transition(roles[k], t) + " lost by the restriction";
            for (const auto& t : image.transitions)
                if (!std::binary_search(want.begin(), want.end(), t))
                    return "role '" + roles[k].name + "': extra transition " +
                           show_transition(roles[k], t) + " in the projection";
            return "role '" + roles[k].name + "': projection mismatch";
        }
        if (projections_out) projections_out->push_back(std::move(pm));
    }
    return std::nullopt;
}

}  // namespace

ApplyOutcome apply_rules(const ProductResult& base, const std::vector<NIOA>& roles,
                         const std::vector<CoordinationRule>& rules, std::string name) {
    ApplyOutcome outcome;

    // every forbid entry must name a class that exists on its role
    for (const auto& rule : rules) {
        for (const auto& [rname, state] : rule.when_modes) {
            bool known = std::any_of(roles.begin(), roles.end(),
                                     [&](const NIOA& r) { return r.name == rname; });
            if (!known)
                throw std::invalid_argument("rule '" + rule.name + "' guards unknown role '" +
                                            rname + "'");
            (void)state;
        }
        for (const auto& ref : rule.forbid) {
            bool any = false;
            for (const auto& role : roles) {
                if (role.name != ref.role) continue;
                for (const auto& t : role.transitions)
                    if (ref_matches_role_transition(ref, role, t)) any = true;
            }
            if (!any)
                throw std::invalid_argument("rule '" + rule.name +
                                            "' references an unknown transition class of role '" +
                                            ref.role + "'");
        }
    }

    std::map<std::string, size_t> role_pos;
    for (size_t k = 0; k < roles.size(); ++k) role_pos[roles[k].name] = k;

    auto guard_fires = [&](const CoordinationRule& rule, const std::vector<std::string>& comps) {
        for (const auto& [rname, state] : rule.when_modes) {
            auto it = role_pos.find(rname);
            if (it == role_pos.end() || comps[it->second] != state) return false;
        }
        return true;
    };

    NIOA result = base.product;
    result.name = name.empty() ? base.product.name + "~coordinated" : name;
    std::vector<Transition> kept;
    for (const auto& t : result.transitions) {
        auto comps = split_tuple(t.from);
        auto views = factor_views(base, roles, t);
        bool removed = false;
        for (const auto& rule : rules) {
            if (!guard_fires(rule, comps)) continue;
            for (const auto& v : views) {
                if (rule.on_input && *rule.on_input != v.input) continue;
                for (const auto& ref : rule.forbid)
                    if (ref_matches_view(ref, roles[v.factor].name, v)) removed = true;
            }
            if (removed) break;
        }
        if (!removed) kept.push_back(t);
    }
    result.transitions = std::move(kept);
    result.normalize();

    if (auto w = quasi_determinism_witness(result)) {
        outcome.violation = CoordinationViolation{"quasi-determinism", *w};
        return outcome;
    }
    if (auto w = acceptance_witness(result)) {
        outcome.violation = CoordinationViolation{"acceptance-retention", *w};
        return outcome;
    }
    std::vector<ProjectionMap> projections;
    if (auto w = projection_witness(base, roles, result, &projections)) {
        outcome.violation = CoordinationViolation{"projection-retention", *w};
        return outcome;
    }

    CoordinatedAutomaton c;
    c.name = result.name;
    c.base = base;
    c.roles = roles;
    c.rules = rules;
    c.result = std::move(result);
    c.role_projections = std::move(projections);
    outcome.automaton = std::move(c);
    return outcome;
}

CheckReport check_coordinated(const CoordinatedAutomaton& c) {
    CheckReport r;
    r.check = "coordinated";
    r.target = c.name;
    r.explored = c.result.states.size();

    // the restriction may only remove transitions
    std::set<Transition> base_set(c.base.product.transitions.begin(),
                                  c.base.product.transitions.end());
    for (const auto& t : c.result.transitions)
        if (!base_set.count(t)) {
            r.verdict = CheckReport::Verdict::Fail;
            Witness w;
            w.kind = "restriction-monotonicity";
            w.path_labels.push_back(show_transition(c.result, t));
            r.witnesses.push_back(std::move(w));
        }

    if (auto w = quasi_determinism_witness(c.result)) {
        r.verdict = CheckReport::Verdict::Fail;
        Witness wit;
        wit.kind = "quasi-determinism";
        wit.path_labels.push_back(*w);
        r.witnesses.push_back(std::move(wit));
    }
    if (auto w = acceptance_witness(c.result)) {
        r.verdict = CheckReport::Verdict::Fail;
        Witness wit;
        wit.kind = "acceptance-retention";
        wit.path_labels.push_back(*w);
        r.witnesses.push_back(std::move(wit));
    }
    if (auto w = projection_witness(c.base, c.roles, c.result, nullptr)) {
        r.verdict = CheckReport::Verdict::Fail;
        Witness wit;
        wit.kind = "projection-retention";
        wit.path_labels.push_back(*w);
        r.witnesses.push_back(std::move(wit));
    }
    return r;
}

SynthesisResult synthesize_rules(const ProductResult& base, const std::vector<NIOA>& roles,
                                 size_t budget) {
    SynthesisResult res;
    const auto& all = base.product.transitions;  // sorted
    const size_t m = all.size();

    // a subset that erases every lift of some role transition can never
    // retain the projections
    std::map<std::string, size_t> role_pos;
    for (size_t k = 0; k < roles.size(); ++k) role_pos[roles[k].name] = k;
    std::vector<std::vector<size_t>> lift_groups;  // per role transition, product indices
    {
        std::map<std::pair<size_t, Transition>, std::vector<size_t>> groups;
        for (size_t i = 0; i < m; ++i) {
            auto views = factor_views(base, roles, all[i]);
            for (const auto& v : views) {
                Transition rt;
                rt.from = v.from;
                rt.to = v.to;
                groups[{v.factor, rt}].push_back(i);  // keyed by endpoint shape per factor
            }
        }
        for (auto& [key, idxs] : groups) lift_groups.push_back(idxs);
    }

    auto erases_group = [&](const std::vector<size_t>& removed) {
        std::set<size_t> rem(removed.begin(), removed.end());
        for (const auto& g : lift_groups) {
            bool all_gone = !g.empty() && std::all_of(g.begin(), g.end(), [&](size_t i) {
                return rem.count(i) > 0;
            });
            if (all_gone) return true;
        }
        return false;
    };

    auto try_candidate = [&](const std::vector<size_t>& removed) -> bool {
        ++res.candidates_tried;
        if (erases_group(removed)) return false;
        std::vector<CoordinationRule> rules;
        std::set<size_t> rem(removed.begin(), removed.end());
        for (size_t i : removed) {
            auto views = factor_views(base, roles, all[i]);
            if (views.empty()) return false;
            const FactorView& v = views.front();
            CoordinationRule rule;
            rule.name = "syn" + std::to_string(rules.size());
            auto comps = split_tuple(all[i].from);
            for (size_t k = 0; k < roles.size(); ++k) rule.when_modes[roles[k].name] = comps[k];
            rule.on_input = v.input;
            rule.forbid.push_back({roles[v.factor].name, v.from, v.to, v.input, v.output});
            rules.push_back(std::move(rule));
        }
        auto outcome = apply_rules(base, roles, rules);
        if (!outcome.ok()) return false;
        // the rules must cut exactly the chosen subset
        if (outcome.automaton->result.transitions.size() != m - removed.size()) return false;
        res.found = true;
        res.rules = std::move(rules);
        return true;
    };

    // smallest restrictions first, deterministic by transition order
    for (size_t k = 0; k <= m && res.candidates_tried < budget; ++k) {
        std::vector<size_t> comb(k);
        for (size_t i = 0; i < k; ++i) comb[i] = i;
        while (res.candidates_tried < budget) {
            if (try_candidate(comb)) return res;
            // next k-combination of {0..m-1}
            size_t i = k;
            while (i > 0 && comb[i - 1] == m - k + i - 1) --i;
            if (i == 0) break;
            ++comb[i - 1];
            for (size_t j = i; j < k; ++j) comb[j] = comb[j - 1] + 1;
        }
        if (k == 0 && m == 0) break;
    }
    return res;
}

namespace {

// role-level endpoints of a protocol channel, recovered from the slices
struct ChannelEndpoints {
    std::string from_role, from_port, to_role, to_port;
};

ChannelEndpoints channel_endpoints(const Protocol& via, const ShannonChannel& ch) {
    ChannelEndpoints e;
    for (size_t k = 0; k < via.roles.size(); ++k) {
        const FactorSlice& sl = via.product.slices[k];
        if (ch.out_component >= sl.out_begin && ch.out_component < sl.out_end) {
            e.from_role = via.roles[k].name;
            e.from_port = via.roles[k].output.ports[ch.out_component - sl.out_begin].name;
        }
        if (ch.in_component >= sl.in_begin && ch.in_component < sl.in_end) {
            e.to_role = via.roles[k].name;
            e.to_port = via.roles[k].input.ports[ch.in_component - sl.in_begin].name;
        }
    }
    return e;
}

}  // namespace

ProcessCompositionResult compose_processes(const ProcessSpec& p1, const ProcessSpec& p2,
                                           const Protocol& via, std::string name) {
    ProcessCompositionResult res;
    auto reject = [&](std::string reason) {
        res.rejection = ProcessCompositionError{std::move(reason)};
        return res;
    };

    if (via.roles.size() != 2) return reject("connecting protocol must have exactly two roles");
    if (!check_consistent(via).passed()) return reject("connecting protocol is not consistent");

    auto has_role = [](const ProcessSpec& p, const std::string& rname) {
        return std::any_of(p.coordinated.roles.begin(), p.coordinated.roles.end(),
                           [&](const NIOA& r) { return r.name == rname; });
    };
    std::string link1, link2;
    for (const auto& r : via.roles) {
        if (has_role(p1, r.name)) link1 = r.name;
        if (has_role(p2, r.name)) link2 = r.name;
    }
    if (link1.empty() || link2.empty() || link1 == link2)
        return reject("connecting protocol must couple one role of each process");

    for (const ProcessSpec* p : {&p1, &p2})
        if (!is_linear_executable(p->coordinated.result))
            return reject("process '" + p->name + "' is not linear-executable");

    // remaining external interactions
    std::map<std::string, std::string> rem1, rem2;
    for (const auto& [role, counterparty] : p1.external_bindings)
        if (role != link1) rem1[role] = counterparty;
    for (const auto& [role, counterparty] : p2.external_bindings)
        if (role != link2) rem2[role] = counterparty;
    if (rem1.empty()) return reject("process '" + p1.name + "' would lose its last interaction");
    if (rem2.empty()) return reject("process '" + p2.name + "' would lose its last interaction");

    bool distinct = false;
    for (const auto& [r1, c1] : rem1)
        for (const auto& [r2, c2] : rem2)
            if (c1 != c2) distinct = true;
    if (!distinct)
        return reject("closed chain: the remaining interactions all face '" +
                      rem1.begin()->second + "'");

    // product of the two coordinated systems, protocol channels attached
    std::vector<NIOA> systems{p1.coordinated.result, p2.coordinated.result};
    systems[0].name = p1.name;
    systems[1].name = p2.name;
    ProductResult merged = weakly_synchronized_product(systems);

    std::vector<ShannonChannel> channels;
    for (const auto& ch : via.channels) {
        ChannelEndpoints e = channel_endpoints(via, ch);
        const std::string& owner_out = e.from_role == link1 ? p1.name : p2.name;
        const std::string& owner_in = e.to_role == link1 ? p1.name : p2.name;
        int oc = merged.product.output.index_of(owner_out + "." + e.from_role + "." + e.from_port);
        int ic = merged.product.input.index_of(owner_in + "." + e.to_role + "." + e.to_port);
        if (oc < 0 || ic < 0)
            return reject("channel '" + ch.name + "' does not match the coupled processes");
        channels.push_back(
            {static_cast<size_t>(oc), static_cast<size_t>(ic), ch.name});
    }
    CbrAutomaton cbr = attach_channels(merged.product, channels, {});

    // hide the internal protocol components
    std::set<size_t> hide_in, hide_out;
    for (const auto& ch : channels) {
        hide_out.insert(ch.out_component);
        hide_in.insert(ch.in_component);
    }
    if (merged.product.acceptance.has_muller() ||
        std::any_of(systems.begin(), systems.end(),
                    [](const NIOA& s) { return s.acceptance.has_muller(); }))
        return reject("Muller acceptance is not supported in process composition");

    NIOA hidden;
    hidden.name = name.empty() ? p1.name + "+" + p2.name : name;
    for (size_t i = 0; i < merged.product.input.size(); ++i)
        if (!hide_in.count(i)) hidden.input.ports.push_back(merged.product.input.ports[i]);
    for (size_t i = 0; i < merged.product.output.size(); ++i)
        if (!hide_out.count(i)) hidden.output.ports.push_back(merged.product.output.ports[i]);

    std::set<std::string> accepting;
    std::map<std::string, std::string> base_of;  // hidden state -> merged base tuple
    for (size_t i = 0; i < cbr.states.size(); ++i) {
        std::string s = cbr.render_state(i);
        hidden.states.push_back(s);
        base_of[s] = cbr.states[i].base;
        if (halt_accepts(merged.product.acceptance, cbr.states[i].base)) accepting.insert(s);
    }
    hidden.initial = cbr.render_state(0);
    hidden.acceptance = Acceptance::finite(std::move(accepting));
    for (const auto& e : cbr.edges) {
        Transition t;
        t.from = cbr.render_state(e.from);
        t.to = cbr.render_state(e.to);
        for (size_t i = 0; i < e.via.input.size(); ++i)
            if (!hide_in.count(i)) t.input.push_back(e.via.input[i]);
        for (size_t i = 0; i < e.via.output.size(); ++i)
            if (!hide_out.count(i)) t.output.push_back(e.via.output[i]);
        hidden.transitions.push_back(std::move(t));
    }
    hidden.normalize();

    // surviving roles with projections out of the hidden automaton
    ProcessSpec out;
    out.name = hidden.name;
    CoordinatedAutomaton& c = out.coordinated;
    c.name = hidden.name;
    c.base = merged;
    c.result = hidden;
    c.rules = p1.coordinated.rules;
    c.rules.insert(c.rules.end(), p2.coordinated.rules.begin(), p2.coordinated.rules.end());

    auto add_roles = [&](const ProcessSpec& p, size_t which, const std::string& link) {
        for (size_t k = 0; k < p.coordinated.roles.size(); ++k) {
            const NIOA& role = p.coordinated.roles[k];
            if (role.name == link) continue;
            c.roles.push_back(role);
            ProjectionMap pm;
            pm.factor = std::nullopt;
            for (const auto& [hstate, mbase] : base_of) {
                auto outer = split_tuple(mbase);                   // (sys1|sys2)
                auto inner = split_tuple(outer[which]);            // that system's role tuple
                pm.state_map[hstate] = inner[k];
            }
            for (const auto& port : role.input.ports) {
                int idx = c.result.input.index_of(p.name + "." + role.name + "." + port.name);
                if (idx >= 0) {
                    pm.input_keep.push_back(static_cast<size_t>(idx));
                    pm.input_port_names.push_back(port.name);
                }
            }
            for (const auto& port : role.output.ports) {
                int idx = c.result.output.index_of(p.name + "." + role.name + "." + port.name);
                if (idx >= 0) {
                    pm.output_keep.push_back(static_cast<size_t>(idx));
                    pm.output_port_names.push_back(port.name);
                }
            }
            c.role_projections.push_back(std::move(pm));
        }
    };
    add_roles(p1, 0, link1);
    add_roles(p2, 1, link2);

    for (const auto& [role, counterparty] : rem1) out.external_bindings[role] = counterparty;
    for (const auto& [role, counterparty] : rem2) out.external_bindings[role] = counterparty;

    res.process = std::move(out);
    return res;
}

}  // namespace ioa
