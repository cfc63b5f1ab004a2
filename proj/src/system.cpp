#include "ioa/system.hpp"

#include <algorithm>
#include <stdexcept>

namespace ioa {

SystemSpec SystemSpec::from_table(std::string name, Clocking clocking, Alphabet input,
                                  Alphabet output, std::vector<std::string> states,
                                  std::string initial, Table table) {
    SystemSpec s;
    s.name = std::move(name);
    s.clocking = clocking;
    s.input = std::move(input);
    s.output = std::move(output);
    s.states = std::move(states);
    std::sort(s.states.begin(), s.states.end());
    s.states.erase(std::unique(s.states.begin(), s.states.end()), s.states.end());
    s.initial = std::move(initial);
    if (s.states.empty()) throw std::invalid_argument("system '" + s.name + "': no states");
    if (!std::binary_search(s.states.begin(), s.states.end(), s.initial))
        throw std::invalid_argument("system '" + s.name + "': initial not in states");
    if (s.input.naturals || s.output.naturals)
        throw std::invalid_argument("system '" + s.name + "': table over naturals");

    // totality: every (state, input); eps rows all-or-none, clocked only
    size_t eps_rows = 0;
    for (const auto& [key, val] : table) {
        const auto& [q, i] = key;
        if (!std::binary_search(s.states.begin(), s.states.end(), q))
            throw std::invalid_argument("system '" + s.name + "': row at unknown state " + q);
        if (i.empty()) {
            if (clocking == Clocking::Unclocked)
                throw std::invalid_argument("system '" + s.name +
                                            "': eps row in an unclocked system");
            ++eps_rows;
        } else if (!s.input.contains(i)) {
            throw std::invalid_argument("system '" + s.name + "': row with unknown input " + i);
        }
        if (!std::binary_search(s.states.begin(), s.states.end(), val.first))
            throw std::invalid_argument("system '" + s.name + "': row to unknown state " +
                                        val.first);
        if (!val.second.empty() && !s.output.contains(val.second))
            throw std::invalid_argument("system '" + s.name + "': row with unknown output " +
                                        val.second);
    }
    for (const auto& q : s.states)
        for (const auto& i : s.input.symbols)
            if (!table.count({q, i}))
                throw std::invalid_argument("system '" + s.name + "': not total at (" + q + "," +
                                            i + ")");
    if (eps_rows != 0 && eps_rows != s.states.size())
        throw std::invalid_argument("system '" + s.name + "': eps rows must cover all states");
    s.table_ = std::move(table);
    return s;
}

SystemSpec SystemSpec::from_rule(std::string name, Clocking clocking, Alphabet input,
                                 Alphabet output, std::vector<std::string> states,
                                 bool unbounded_states, std::string initial, Rule rule) {
    SystemSpec s;
    s.name = std::move(name);
    s.clocking = clocking;
    s.input = std::move(input);
    s.output = std::move(output);
    s.states = std::move(states);
    std::sort(s.states.begin(), s.states.end());
    s.unbounded_states = unbounded_states;
    s.initial = std::move(initial);
    s.rule_ = std::move(rule);
    return s;
}

bool SystemSpec::finite() const {
    return table_.has_value() && !unbounded_states && input.enumerable() && output.enumerable();
}

const SystemSpec::Table& SystemSpec::table() const {
    if (!table_) throw std::logic_error("system '" + name + "' is not table-backed");
    return *table_;
}

bool SystemSpec::in_domain(const std::string& q, const std::string& i) const {
    if (i.empty() && clocking == Clocking::Unclocked) return false;
    if (table_) return table_->count({q, i}) > 0;
    return rule_ && rule_(q, i).has_value();
}

SystemSpec::Val SystemSpec::apply(const std::string& q, const std::string& i) const {
    if (table_) {
        auto it = table_->find({q, i});
        if (it == table_->end())
            throw std::out_of_range("system '" + name + "': (" + q + "," + show_symbol(i) +
                                    ") outside the domain");
        return it->second;
    }
    if (!rule_) throw std::logic_error("system '" + name + "' has no step function");
    auto v = rule_(q, i);
    if (!v)
        throw std::out_of_range("system '" + name + "': (" + q + "," + show_symbol(i) +
                                ") outside the domain");
    return *v;
}

StepOut step(const SystemSpec& s, const std::string& q, const std::string& i) {
    if (i.empty() && s.clocking == Clocking::Unclocked)
        throw std::invalid_argument("system '" + s.name +
                                    "': no spontaneous activity (unclocked, eps input)");
    auto [q2, o] = s.apply(q, i);
    return {q2, o};
}

NIOA to_diofa(const SystemSpec& s) {
    if (!s.finite())
        throw std::invalid_argument("system '" + s.name + "' is not finite");
    NIOA a;
    a.name = s.name;
    a.states = s.states;
    if (!s.input.empty()) a.input.ports.push_back({"in", s.input});
    if (!s.output.empty()) a.output.ports.push_back({"out", s.output});
    a.initial = s.initial;
    a.acceptance =
        Acceptance::finite(std::set<std::string>(s.states.begin(), s.states.end()));
    for (const auto& [key, val] : s.table()) {
        Transition t;
        t.from = key.first;
        t.to = val.first;
        if (!s.input.empty()) t.input.push_back(key.second);
        if (!s.output.empty()) t.output.push_back(val.second);
        a.transitions.push_back(std::move(t));
    }
    a.normalize();
    return a;
}

}  // namespace ioa
