#include "ioa/channel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace ioa {

std::string CbrAutomaton::render_state(size_t idx) const {
    const CbrState& s = states.at(idx);
    std::string out = s.base;
    std::string pend;
    for (size_t c = 0; c < s.pending.size(); ++c) {
        if (s.pending[c].empty()) continue;
        if (!pend.empty()) pend += ',';
        pend += channels[c].name + '=' + s.pending[c];
    }
    if (!pend.empty()) out += '!' + pend;
    return out;
}

std::vector<std::vector<int>> CbrAutomaton::successor_index() const {
    std::vector<std::vector<int>> succ(states.size());
    for (const auto& e : edges) succ[e.from].push_back(static_cast<int>(e.to));
    for (auto& v : succ) {
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
    }
    return succ;
}

std::vector<std::vector<const CbrEdge*>> CbrAutomaton::edge_index() const {
    std::vector<std::vector<const CbrEdge*>> idx(states.size());
    for (const auto& e : edges) idx[e.from].push_back(&e);
    return idx;
}

NIOA CbrAutomaton::as_nioa() const {
    NIOA a;
    a.name = base.name + "~cbr";
    a.input = base.input;
    a.output = base.output;
    std::set<std::string> accepting;
    for (size_t i = 0; i < states.size(); ++i) {
        a.states.push_back(render_state(i));
        if (halt_accepts(base.acceptance, states[i].base)) accepting.insert(render_state(i));
    }
    a.initial = render_state(0);
    a.acceptance = Acceptance::finite(std::move(accepting));
    for (const auto& e : edges) {
        Transition t = e.via;
        t.from = render_state(e.from);
        t.to = render_state(e.to);
        a.transitions.push_back(std::move(t));
    }
    a.normalize();
    return a;
}

namespace {

struct PendingKey {
    std::string base;
    std::vector<std::string> pending;
    auto operator<=>(const PendingKey&) const = default;
};

}  // namespace

CbrAutomaton attach_channels(const NIOA& base, std::vector<ShannonChannel> channels,
                             const CbrOptions& opts) {
    CbrAutomaton cbr;
    cbr.base = base;
    cbr.tree_mode = opts.tree;

    for (size_t c = 0; c < channels.size(); ++c) {
        ShannonChannel& ch = channels[c];
        if (ch.out_component >= base.output.size() || ch.in_component >= base.input.size())
            throw std::invalid_argument("channel '" + ch.name + "' names unknown components");
        const Alphabet& o = base.output.ports[ch.out_component].alphabet;
        const Alphabet& i = base.input.ports[ch.in_component].alphabet;
        if (!subset_of(o, i))
            throw std::invalid_argument("channel '" + ch.name + "' is type-incompatible: " +
                                        base.output.ports[ch.out_component].name +
                                        " is no subset of " +
                                        base.input.ports[ch.in_component].name);
        if (ch.name.empty()) ch.name = "c" + std::to_string(c);
    }
    cbr.channels = channels;

    auto out_idx = outgoing_index(base);

    std::map<PendingKey, size_t> index;
    auto intern = [&](const std::string& b, const std::vector<std::string>& pend) {
        PendingKey key{b, pend};
        auto it = index.find(key);
        if (it != index.end()) return std::pair<size_t, bool>{it->second, false};
        size_t id = cbr.states.size();
        index.emplace(std::move(key), id);
        cbr.states.push_back({b, pend});
        return std::pair<size_t, bool>{id, true};
    };

    std::vector<std::string> none(channels.size(), eps);
    intern(base.initial, none);
    std::deque<size_t> work{0};
    while (!work.empty()) {
        size_t cur = work.front();
        work.pop_front();
        // copy: intern() may grow the state vector
        const CbrState state = cbr.states[cur];
        auto it = out_idx.find(state.base);
        if (it == out_idx.end()) continue;
        size_t pend_count = 0;
        for (const auto& p : state.pending)
            if (!p.empty()) ++pend_count;
        for (const Transition* t : it->second) {
            bool enabled = true;
            bool consumes = false;
            for (size_t c = 0; c < channels.size(); ++c) {
                const std::string& in_c = t->input[channels[c].in_component];
                const std::string& pend_c = state.pending[c];
                if (pend_c.empty()) {
                    // nothing in flight: the channel input must stay empty
                    if (!in_c.empty()) {
                        enabled = false;
                        break;
                    }
                } else if (in_c == pend_c) {
                    consumes = true;
                } else if (in_c.empty()) {
                    // leaving a pending character alone is only admissible
                    // while another one is being consumed (tree mode)
                } else {
                    enabled = false;
                    break;
                }
            }
            if (!enabled) continue;
            if (pend_count > 0 && !consumes) continue;  // forced receive

            std::vector<std::string> next_pend(channels.size(), eps);
            bool overflow = false;
            for (size_t c = 0; c < channels.size(); ++c) {
                const std::string& in_c = t->input[channels[c].in_component];
                const std::string& out_c = t->output[channels[c].out_component];
                std::string carry =
                    (!state.pending[c].empty() && in_c != state.pending[c]) ? state.pending[c]
                                                                            : eps;
                if (!out_c.empty() && !carry.empty()) {
                    overflow = true;  // capacity one character per channel
                    break;
                }
                next_pend[c] = !out_c.empty() ? out_c : carry;
            }
            if (overflow) continue;
            size_t live = 0;
            for (const auto& p : next_pend)
                if (!p.empty()) ++live;
            if (live > 1 && !opts.tree)
                throw NonLinearError(
                    "transition " + show_transition(base, *t) +
                    " leaves several characters in flight; tree mode is required");

            if (cbr.states.size() >= opts.state_cap && !index.count({t->to, next_pend})) {
                cbr.capped = true;
                continue;
            }
            auto [to, fresh] = intern(t->to, next_pend);
            cbr.edges.push_back({cur, to, *t});
            if (fresh) work.push_back(to);
        }
    }
    std::sort(cbr.edges.begin(), cbr.edges.end(), [](const CbrEdge& a, const CbrEdge& b) {
        return std::tie(a.from, a.via, a.to) < std::tie(b.from, b.via, b.to);
    });
    return cbr;
}

bool is_linear_executable(const NIOA& a) {
    for (const auto& t : a.transitions)
        if (arity(t.input) > 1 || arity(t.output) > 1) return false;
    return true;
}

bool is_linear_executable(const CbrAutomaton& a) {
    for (const auto& e : a.edges)
        if (arity(e.via.input) > 1 || arity(e.via.output) > 1) return false;
    return true;
}

}  // namespace ioa
