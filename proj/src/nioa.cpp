#include "ioa/nioa.hpp"

#include <algorithm>
#include <deque>

namespace ioa {

Acceptance Acceptance::finite(std::set<std::string> states) {
    Acceptance a;
    a.kind = Kind::Finite;
    a.finite_states = std::move(states);
    return a;
}

Acceptance Acceptance::muller(std::vector<std::set<std::string>> sets) {
    Acceptance a;
    a.kind = Kind::Muller;
    a.muller_sets = std::move(sets);
    std::sort(a.muller_sets.begin(), a.muller_sets.end());
    a.muller_sets.erase(std::unique(a.muller_sets.begin(), a.muller_sets.end()),
                        a.muller_sets.end());
    return a;
}

Acceptance Acceptance::conjunction(std::vector<Acceptance> factors) {
    Acceptance a;
    a.kind = Kind::Conjunction;
    a.factors = std::move(factors);
    return a;
}

bool Acceptance::has_muller() const {
    switch (kind) {
        case Kind::Finite: return false;
        case Kind::Muller: return true;
        case Kind::Conjunction:
            return std::any_of(factors.begin(), factors.end(),
                               [](const Acceptance& f) { return f.has_muller(); });
    }
    return false;
}

void NIOA::normalize() {
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

bool NIOA::has_state(const std::string& s) const {
    return std::binary_search(states.begin(), states.end(), s);
}

std::string show_transition(const NIOA& a, const Transition& t) {
    return t.from + " -[" + show_vec(t.input, a.input) + " / " + show_vec(t.output, a.output) +
           "]-> " + t.to;
}

ValidationReport validate(const NIOA& a) {
    ValidationReport r;
    auto bad = [&](std::string msg) { r.violations.push_back(std::move(msg)); };

    if (a.states.empty()) bad("empty state set");
    {
        auto sorted = a.states;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            bad("duplicate state ids");
    }
    for (const auto& s : a.states)
        if (s.empty()) bad("empty state id");
    if (!a.has_state(a.initial)) bad("initial not in states: '" + a.initial + "'");

    switch (a.acceptance.kind) {
        case Acceptance::Kind::Finite:
            for (const auto& s : a.acceptance.finite_states)
                if (!a.has_state(s)) bad("acceptance references unknown state: " + s);
            break;
        case Acceptance::Kind::Muller:
            for (const auto& set : a.acceptance.muller_sets) {
                if (set.empty()) bad("empty Muller acceptance set");
                for (const auto& s : set)
                    if (!a.has_state(s)) bad("acceptance references unknown state: " + s);
            }
            break;
        case Acceptance::Kind::Conjunction:
            // factor components name factor-local states, present only as
            // tuple components of the product states; checked structurally
            for (const auto& f : a.acceptance.factors)
                if (f.kind == Acceptance::Kind::Muller)
                    for (const auto& set : f.muller_sets)
                        if (set.empty()) bad("empty Muller acceptance set");
            break;
    }

    for (const auto& p : a.input.ports)
        for (const auto& s : p.alphabet.symbols)
            if (s.empty()) bad("empty symbol in input port " + p.name);
    for (const auto& p : a.output.ports)
        for (const auto& s : p.alphabet.symbols)
            if (s.empty()) bad("empty symbol in output port " + p.name);

    for (const auto& t : a.transitions) {
        if (!a.has_state(t.from)) bad("transition from unknown state: " + t.from);
        if (!a.has_state(t.to)) bad("transition to unknown state: " + t.to);
        if (t.input.size() != a.input.size())
            bad("input vector arity mismatch at " + t.from + " -> " + t.to);
        else if (!typed(t.input, a.input))
            bad("untyped input at " + show_transition(a, t));
        if (t.output.size() != a.output.size())
            bad("output vector arity mismatch at " + t.from + " -> " + t.to);
        else if (!typed(t.output, a.output))
            bad("untyped output at " + show_transition(a, t));
    }
    return r;
}

bool is_deterministic(const NIOA& a) {
    std::set<std::pair<std::string, SymbolVec>> seen;
    for (const auto& t : a.transitions) {
        // any eps input component disqualifies: a deterministic automaton
        // uses no empty characters on the input side
        for (const auto& c : t.input)
            if (c.empty()) return false;
        if (t.input.empty()) return false;  // no input ports: every transition is spontaneous
        if (!seen.insert({t.from, t.input}).second) return false;
    }
    return true;
}

bool is_quasi_deterministic(const NIOA& a) {
    auto reach = reachable_states(a);
    std::map<std::string, std::map<SymbolVec, int>> per_state;
    for (const auto& t : a.transitions) {
        if (!reach.count(t.from)) continue;
        if (++per_state[t.from][t.input] > 1) return false;
    }
    return true;
}

std::set<std::string> reachable_states(const NIOA& a) {
    std::set<std::string> reach;
    if (!a.has_state(a.initial)) return reach;
    auto idx = outgoing_index(a);
    std::deque<std::string> work{a.initial};
    reach.insert(a.initial);
    while (!work.empty()) {
        auto s = work.front();
        work.pop_front();
        auto it = idx.find(s);
        if (it == idx.end()) continue;
        for (const Transition* t : it->second)
            if (reach.insert(t->to).second) work.push_back(t->to);
    }
    return reach;
}

std::vector<std::string> split_tuple(const std::string& state) {
    if (state.size() < 2 || state.front() != '(' || state.back() != ')') return {state};
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (size_t i = 1; i + 1 < state.size(); ++i) {
        char c = state[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '|' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string join_tuple(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) s += '|';
        s += parts[i];
    }
    return s + ")";
}

bool halt_accepts(const Acceptance& acc, const std::string& state) {
    switch (acc.kind) {
        case Acceptance::Kind::Finite: return acc.finite_states.count(state) > 0;
        case Acceptance::Kind::Muller: return false;
        case Acceptance::Kind::Conjunction: {
            auto parts = split_tuple(state);
            if (parts.size() != acc.factors.size()) return false;
            for (size_t k = 0; k < parts.size(); ++k)
                if (!halt_accepts(acc.factors[k], parts[k])) return false;
            return true;
        }
    }
    return false;
}

bool inf_accepts(const Acceptance& acc, const std::set<std::string>& inf_set) {
    switch (acc.kind) {
        case Acceptance::Kind::Finite:
            // read on an infinite run: an admissible halt state recurs
            return std::any_of(inf_set.begin(), inf_set.end(), [&](const std::string& s) {
                return acc.finite_states.count(s) > 0;
            });
        case Acceptance::Kind::Muller:
            return std::find(acc.muller_sets.begin(), acc.muller_sets.end(), inf_set) !=
                   acc.muller_sets.end();
        case Acceptance::Kind::Conjunction: {
            if (acc.factors.empty()) return false;
            std::vector<std::set<std::string>> projected(acc.factors.size());
            for (const auto& s : inf_set) {
                auto parts = split_tuple(s);
                if (parts.size() != acc.factors.size()) return false;
                for (size_t k = 0; k < parts.size(); ++k) projected[k].insert(parts[k]);
            }
            for (size_t k = 0; k < acc.factors.size(); ++k)
                if (!inf_accepts(acc.factors[k], projected[k])) return false;
            return true;
        }
    }
    return false;
}

std::map<std::string, std::vector<const Transition*>> outgoing_index(const NIOA& a) {
    std::map<std::string, std::vector<const Transition*>> idx;
    for (const auto& t : a.transitions) idx[t.from].push_back(&t);
    return idx;
}

}  // namespace ioa
