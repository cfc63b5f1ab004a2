#include "ioa/product.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace ioa {

ProductResult weakly_synchronized_product(const std::vector<NIOA>& factors,
                                          const ProductOptions& opts) {
    if (factors.empty()) throw std::invalid_argument("product of zero automata");

    ProductResult pr;
    NIOA& b = pr.product;
    std::string pname;
    for (const auto& f : factors) {
        if (!pname.empty()) pname += "*";
        pname += f.name;
        pr.factor_names.push_back(f.name);
    }
    b.name = pname;

    // flattened I/O layout, one slice per factor
    for (const auto& f : factors) {
        FactorSlice s;
        s.in_begin = b.input.size();
        s.out_begin = b.output.size();
        for (const auto& p : f.input.ports) {
            std::string n = opts.prefix_port_names ? f.name + "." + p.name : p.name;
            if (b.input.index_of(n) >= 0)
                throw std::invalid_argument("alphabet collision on input port '" + n + "'");
            b.input.ports.push_back({n, p.alphabet});
        }
        for (const auto& p : f.output.ports) {
            std::string n = opts.prefix_port_names ? f.name + "." + p.name : p.name;
            if (b.output.index_of(n) >= 0)
                throw std::invalid_argument("alphabet collision on output port '" + n + "'");
            b.output.ports.push_back({n, p.alphabet});
        }
        s.in_end = b.input.size();
        s.out_end = b.output.size();
        pr.slices.push_back(s);
    }

    std::vector<std::string> init(factors.size());
    for (size_t k = 0; k < factors.size(); ++k) init[k] = factors[k].initial;
    b.initial = join_tuple(init);

    std::vector<Acceptance> acc;
    for (const auto& f : factors) acc.push_back(f.acceptance);
    b.acceptance = Acceptance::conjunction(std::move(acc));

    std::vector<std::map<std::string, std::vector<const Transition*>>> out_idx;
    for (const auto& f : factors) out_idx.push_back(outgoing_index(f));

    // reachable tuples only, breadth first from the initial vector
    std::set<std::vector<std::string>> seen{init};
    std::deque<std::vector<std::string>> work{init};
    while (!work.empty()) {
        auto tup = work.front();
        work.pop_front();
        std::string from = join_tuple(tup);
        for (size_t k = 0; k < factors.size(); ++k) {
            auto it = out_idx[k].find(tup[k]);
            if (it == out_idx[k].end()) continue;
            for (const Transition* ft : it->second) {
                auto next = tup;
                next[k] = ft->to;
                if (!seen.count(next)) {
                    if (seen.size() >= opts.state_cap) {
                        pr.capped = true;
                        continue;
                    }
                    seen.insert(next);
                    work.push_back(next);
                }
                Transition t;
                t.from = from;
                t.to = join_tuple(next);
                t.input.assign(b.input.size(), eps);
                t.output.assign(b.output.size(), eps);
                const FactorSlice& sl = pr.slices[k];
                for (size_t i = 0; i < ft->input.size(); ++i)
                    t.input[sl.in_begin + i] = ft->input[i];
                for (size_t i = 0; i < ft->output.size(); ++i)
                    t.output[sl.out_begin + i] = ft->output[i];
                b.transitions.push_back(std::move(t));
            }
        }
    }

    for (const auto& tup : seen) b.states.push_back(join_tuple(tup));
    b.normalize();
    return pr;
}

ProjectionMap ProjectionMap::identity(const NIOA& a) {
    ProjectionMap p;
    for (const auto& s : a.states) p.state_map[s] = s;
    for (size_t i = 0; i < a.input.size(); ++i) p.input_keep.push_back(i);
    for (size_t i = 0; i < a.output.size(); ++i) p.output_keep.push_back(i);
    return p;
}

namespace {

std::string map_state(const ProjectionMap& p, const std::string& s) {
    auto it = p.state_map.find(s);
    if (it == p.state_map.end())
        throw std::invalid_argument("projection not total: no image for state '" + s + "'");
    return it->second;
}

std::string map_symbol(const std::map<std::string, std::string>& m, const std::string& sym) {
    if (sym.empty()) return sym;  // eps is preserved
    auto it = m.find(sym);
    return it == m.end() ? sym : it->second;
}

SymbolVec project_vec(const SymbolVec& v, const std::vector<size_t>& keep,
                      const std::map<std::string, std::string>& symmap) {
    SymbolVec out;
    out.reserve(keep.size());
    for (size_t i : keep) {
        if (i >= v.size()) throw std::invalid_argument("projection keeps unknown component");
        out.push_back(map_symbol(symmap, v[i]));
    }
    return out;
}

Acceptance project_acceptance(const NIOA& a, const ProjectionMap& p) {
    const Acceptance& acc = a.acceptance;
    if (acc.kind == Acceptance::Kind::Conjunction) {
        if (p.factor && *p.factor < acc.factors.size()) return acc.factors[*p.factor];
        // a conjunction of Finite components admits a halt set on the
        // product states, which maps cleanly
        bool all_finite = std::none_of(acc.factors.begin(), acc.factors.end(),
                                       [](const Acceptance& f) { return f.has_muller(); });
        if (!all_finite)
            throw std::invalid_argument(
                "projection of a mixed acceptance conjunction needs a factor index");
        std::set<std::string> image;
        for (const auto& s : a.states)
            if (halt_accepts(acc, s)) image.insert(map_state(p, s));
        return Acceptance::finite(std::move(image));
    }
    if (acc.kind == Acceptance::Kind::Finite) {
        std::set<std::string> image;
        for (const auto& s : acc.finite_states) image.insert(map_state(p, s));
        return Acceptance::finite(std::move(image));
    }
    std::vector<std::set<std::string>> sets;
    for (const auto& set : acc.muller_sets) {
        std::set<std::string> image;
        for (const auto& s : set) image.insert(map_state(p, s));
        sets.push_back(std::move(image));
    }
    return Acceptance::muller(std::move(sets));
}

}  // namespace

NIOA project(const NIOA& a, const ProjectionMap& p) {
    // totality and idempotence (pi = pi o pi on the covered part)
    for (const auto& s : a.states) {
        const std::string& img = map_state(p, s);
        if (img.empty()) throw std::invalid_argument("projection maps '" + s + "' to eps");
        auto again = p.state_map.find(img);
        if (again != p.state_map.end() && again->second != img)
            throw std::invalid_argument("projection not idempotent at '" + s + "'");
    }

    NIOA out;
    out.name = a.name + "~proj";
    for (size_t j = 0; j < p.input_keep.size(); ++j) {
        size_t i = p.input_keep[j];
        if (i >= a.input.size()) throw std::invalid_argument("projection keeps unknown input");
        Port port = a.input.ports[i];
        if (j < p.input_port_names.size() && !p.input_port_names[j].empty())
            port.name = p.input_port_names[j];
        if (!p.input_symbol_map.empty()) {
            std::vector<std::string> syms;
            for (const auto& s : port.alphabet.symbols)
                syms.push_back(map_symbol(p.input_symbol_map, s));
            port.alphabet = Alphabet::of(std::move(syms));
        }
        out.input.ports.push_back(std::move(port));
    }
    for (size_t j = 0; j < p.output_keep.size(); ++j) {
        size_t i = p.output_keep[j];
        if (i >= a.output.size()) throw std::invalid_argument("projection keeps unknown output");
        Port port = a.output.ports[i];
        if (j < p.output_port_names.size() && !p.output_port_names[j].empty())
            port.name = p.output_port_names[j];
        if (!p.output_symbol_map.empty()) {
            std::vector<std::string> syms;
            for (const auto& s : port.alphabet.symbols)
                syms.push_back(map_symbol(p.output_symbol_map, s));
            port.alphabet = Alphabet::of(std::move(syms));
        }
        out.output.ports.push_back(std::move(port));
    }

    for (const auto& s : a.states) out.states.push_back(map_state(p, s));
    out.initial = map_state(p, a.initial);
    out.acceptance = project_acceptance(a, p);

    for (const auto& t : a.transitions) {
        Transition img;
        img.from = map_state(p, t.from);
        img.to = map_state(p, t.to);
        img.input = project_vec(t.input, p.input_keep, p.input_symbol_map);
        img.output = project_vec(t.output, p.output_keep, p.output_symbol_map);
        // stationary images of moving transitions are artifacts of the
        // projection and are dropped; genuine eps self-loops survive
        bool img_still = img.from == img.to && all_eps(img.input) && all_eps(img.output);
        bool src_still = t.from == t.to && all_eps(t.input) && all_eps(t.output);
        if (img_still && !src_still) continue;
        out.transitions.push_back(std::move(img));
    }
    out.normalize();
    return out;
}

ProjectionMap factor_projection(const ProductResult& pr, size_t k,
                                const std::vector<NIOA>& factors) {
    if (k >= pr.slices.size() || factors.size() != pr.slices.size())
        throw std::invalid_argument("factor index out of range");
    ProjectionMap p;
    p.factor = k;
    for (const auto& s : pr.product.states) {
        auto parts = split_tuple(s);
        if (parts.size() != pr.slices.size())
            throw std::invalid_argument("state '" + s + "' is not a product tuple");
        p.state_map[s] = parts[k];
    }
    const FactorSlice& sl = pr.slices[k];
    for (size_t i = sl.in_begin; i < sl.in_end; ++i) {
        p.input_keep.push_back(i);
        p.input_port_names.push_back(factors[k].input.ports[i - sl.in_begin].name);
    }
    for (size_t i = sl.out_begin; i < sl.out_end; ++i) {
        p.output_keep.push_back(i);
        p.output_port_names.push_back(factors[k].output.ports[i - sl.out_begin].name);
    }
    return p;
}

bool NamedCondition::eval(const std::string& rest, const std::string& param) const {
    for (const auto& [r, p] : true_rows)
        if ((r == "*" || r == rest) && (p == "*" || p == param)) return true;
    return false;
}

namespace {

std::string doc_of_vec(const SymbolVec& v, const TransitionPartition& tp,
                       const std::string& ctx) {
    std::string doc;
    for (const auto& sym : v) {
        if (sym.empty()) continue;
        auto it = tp.doc_class_of.find(sym);
        if (it == tp.doc_class_of.end())
            throw std::invalid_argument("no document class for symbol '" + sym + "' (" + ctx +
                                        ")");
        if (!doc.empty()) doc += "+";
        doc += it->second;
    }
    return doc.empty() ? "eps" : doc;
}

std::string param_of_vec(const SymbolVec& v, const TransitionPartition& tp) {
    for (const auto& sym : v) {
        if (sym.empty()) continue;
        auto it = tp.param_of.find(sym);
        if (it != tp.param_of.end()) return it->second;
    }
    return "";
}

const std::pair<std::string, std::string>& mode_of(const TransitionPartition& tp,
                                                   const std::string& state) {
    auto it = tp.mode_of.find(state);
    if (it == tp.mode_of.end())
        throw std::invalid_argument("no mode assignment for state '" + state + "'");
    return it->second;
}

}  // namespace

std::string class_signature(const NIOA& a, const Transition& t, const TransitionPartition& tp) {
    (void)a;
    const auto& [p_mode, p_rest] = mode_of(tp, t.from);
    const auto& [q_mode, q_rest] = mode_of(tp, t.to);
    (void)q_rest;
    std::string doc_i = doc_of_vec(t.input, tp, "input");
    std::string doc_o = doc_of_vec(t.output, tp, "output");
    std::string param_i = param_of_vec(t.input, tp);
    std::string sig = doc_i + "," + doc_o + "," + p_mode + "," + q_mode;
    for (const auto& c : tp.conditions)
        sig += "," + c.name + "=" + (c.eval(p_rest, param_i) ? "true" : "false");
    return sig;
}

std::map<std::string, std::vector<Transition>> partition_transitions(
    const NIOA& a, const TransitionPartition& tp) {
    std::map<std::string, std::vector<Transition>> classes;
    for (const auto& t : a.transitions) classes[class_signature(a, t, tp)].push_back(t);
    for (auto& [sig, ts] : classes) std::sort(ts.begin(), ts.end());
    return classes;
}

}  // namespace ioa
