#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ioa/coordination.hpp"
#include "ioa/nioa.hpp"
#include "ioa/product.hpp"
#include "ioa/protocol.hpp"
#include "ioa/system.hpp"

namespace ioa::dsl {

struct SourceSpan {
    size_t line = 1, col = 1;
    size_t byte = 0, end_byte = 0;
};

struct ParseError {
    SourceSpan span;
    std::string message;
};

// --- declaration surface (as parsed; resolution happens separately) ---

struct PortDecl {
    bool is_input = true;
    std::string name;
    std::vector<std::string> symbols;
    SourceSpan span;
    bool operator==(const PortDecl& o) const {
        return is_input == o.is_input && name == o.name && symbols == o.symbols;
    }
};

struct IoRef {        // "port.sym" on one side of a transition
    std::string port;
    std::string sym;
    bool operator==(const IoRef&) const = default;
};

struct TransitionDecl {
    std::string from, to;
    std::vector<IoRef> inputs;   // empty = eps
    std::vector<IoRef> outputs;
    SourceSpan span;
    bool operator==(const TransitionDecl& o) const {
        return from == o.from && to == o.to && inputs == o.inputs && outputs == o.outputs;
    }
};

struct AcceptDecl {
    bool muller = false;
    std::vector<std::string> finite_states;
    std::vector<std::vector<std::string>> muller_sets;
    bool operator==(const AcceptDecl&) const = default;
};

struct DocClassDecl {
    std::string name;
    std::vector<std::string> symbols;
    bool operator==(const DocClassDecl&) const = default;
};

struct ParamDecl {
    std::string symbol, value;
    bool operator==(const ParamDecl&) const = default;
};

struct ModeDecl {
    std::string state, mode, rest;
    bool operator==(const ModeDecl&) const = default;
};

struct ConditionDecl {
    std::string name;
    std::vector<std::pair<std::string, std::string>> true_rows;  // (rest, param), "*" wildcard
    bool operator==(const ConditionDecl&) const = default;
};

// Extended-automaton sugar: a declared transition class
// "mode -[DocCls when cond / DocCls']-> mode'".
struct ClassDecl {
    std::string from_mode, to_mode;
    std::string doc_in, doc_out;      // "eps" admissible
    std::string condition;            // empty = unconditional
    SourceSpan span;
    bool operator==(const ClassDecl& o) const {
        return from_mode == o.from_mode && to_mode == o.to_mode && doc_in == o.doc_in &&
               doc_out == o.doc_out && condition == o.condition;
    }
};

struct AutomatonDecl {
    std::string name;
    std::vector<std::string> states;
    std::string initial;
    AcceptDecl accept;
    std::vector<PortDecl> ports;        // declaration order fixes the vector layout
    std::vector<TransitionDecl> transitions;
    std::vector<DocClassDecl> doc_classes;
    std::vector<ParamDecl> params;
    std::vector<ModeDecl> modes;
    std::vector<ConditionDecl> conditions;
    std::vector<ClassDecl> classes;
    SourceSpan span;
    bool operator==(const AutomatonDecl& o) const {
        return name == o.name && states == o.states && initial == o.initial &&
               accept == o.accept && ports == o.ports && transitions == o.transitions &&
               doc_classes == o.doc_classes && params == o.params && modes == o.modes &&
               conditions == o.conditions && classes == o.classes;
    }
};

struct SystemRowDecl {
    std::string from, input, output, to;  // "eps" spelled out in input/output
    SourceSpan span;
    bool operator==(const SystemRowDecl& o) const {
        return from == o.from && input == o.input && output == o.output && to == o.to;
    }
};

struct SystemDecl {
    std::string name;
    bool clocked = false;
    std::vector<std::string> states;
    std::string initial;
    std::vector<std::string> input_symbols;
    std::vector<std::string> output_symbols;
    std::vector<SystemRowDecl> rows;
    SourceSpan span;
    bool operator==(const SystemDecl& o) const {
        return name == o.name && clocked == o.clocked && states == o.states &&
               initial == o.initial && input_symbols == o.input_symbols &&
               output_symbols == o.output_symbols && rows == o.rows;
    }
};

struct ChannelDecl {
    std::string name;
    std::string from_automaton, from_port;
    std::string to_automaton, to_port;
    SourceSpan span;
    bool operator==(const ChannelDecl& o) const {
        return name == o.name && from_automaton == o.from_automaton &&
               from_port == o.from_port && to_automaton == o.to_automaton &&
               to_port == o.to_port;
    }
};

struct ProtocolDecl {
    std::string name;
    std::vector<std::string> roles;
    std::vector<std::string> channels;
    SourceSpan span;
    bool operator==(const ProtocolDecl& o) const {
        return name == o.name && roles == o.roles && channels == o.channels;
    }
};

struct ForbidDecl {
    std::string role;
    std::string from = "*", to = "*", input = "*", output = "*";
    SourceSpan span;
    bool operator==(const ForbidDecl& o) const {
        return role == o.role && from == o.from && to == o.to && input == o.input &&
               output == o.output;
    }
};

struct RuleDecl {
    std::string name;
    std::vector<std::pair<std::string, std::string>> when_modes;  // (role, state)
    std::optional<std::string> on_input;                          // "eps" admissible
    std::vector<ForbidDecl> forbids;
    SourceSpan span;
    bool operator==(const RuleDecl& o) const {
        return name == o.name && when_modes == o.when_modes && on_input == o.on_input &&
               forbids == o.forbids;
    }
};

struct ProcessDecl {
    std::string name;
    std::vector<std::string> roles;
    std::vector<std::string> rules;
    std::vector<std::pair<std::string, std::string>> bindings;  // (role, counterparty)
    SourceSpan span;
    bool operator==(const ProcessDecl& o) const {
        return name == o.name && roles == o.roles && rules == o.rules &&
               bindings == o.bindings;
    }
};

using DeclBody = std::variant<AutomatonDecl, SystemDecl, ChannelDecl, ProtocolDecl,
                              RuleDecl, ProcessDecl>;

struct Declaration {
    DeclBody body;
    const std::string& name() const;
    std::string kind() const;
    bool operator==(const Declaration&) const = default;
};

struct Document {
    std::vector<Declaration> decls;
    bool operator==(const Document&) const = default;
};

struct ParseResult {
    Document doc;  // declarations parsed successfully (recovery skips to the next one)
    std::vector<ParseError> errors;
    bool ok() const { return errors.empty(); }
};

// Parses the declarative format. Never throws: every lexical, syntactic and
// well-formedness problem becomes a spanned error, and parsing resumes at
// the next top-level declaration.
ParseResult parse(std::string_view text);

// Canonical text; parse(serialize(d)) equals d structurally, and serialize
// is idempotent on its own output.
std::string serialize(const Document& d);

// --- resolution: declarations to core objects ---

struct ResolvedProcess {
    ProcessDecl decl;
    CoordinatedAutomaton coordinated;  // built by applying the named rules
    std::map<std::string, std::string> bindings;
};

struct Workspace {
    Document doc;
    std::map<std::string, NIOA> automata;
    std::map<std::string, SystemSpec> systems;
    std::map<std::string, TransitionPartition> partitions;  // per automaton with partition decls
    std::map<std::string, ChannelDecl> channel_decls;
    std::map<std::string, Protocol> protocols;
    std::map<std::string, CoordinationRule> rules;
    std::map<std::string, ProcessDecl> process_decls;  // coordination happens on demand
};

struct ResolveResult {
    Workspace workspace;
    std::vector<ParseError> errors;  // resolution errors carry the declaration spans
    bool ok() const { return errors.empty(); }
};

// Resolves cross references (ports, channels, roles, rule targets) and
// builds the semantic objects. CBR construction obeys `opts`.
ResolveResult resolve(const Document& doc, const CbrOptions& opts = {});

// Renders core objects back into declarations (used by compose/coordinate
// outputs).
SystemDecl to_decl(const SystemSpec& s);
AutomatonDecl to_decl(const NIOA& a);

}  // namespace ioa::dsl
