#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace ioa {

// The empty character. Alphabet symbols are never empty strings, so the
// empty string is free to act as epsilon everywhere.
inline const std::string eps{};

inline bool is_eps(const std::string& sym) { return sym.empty(); }

// "eps" for the empty character, the symbol itself otherwise.
std::string show_symbol(const std::string& sym);

// A finite ordered symbol set. `naturals` marks the alphabet of decimal
// naturals (used by the counter/loop machinery); such an alphabet admits
// every decimal literal and cannot be enumerated.
struct Alphabet {
    std::vector<std::string> symbols;  // sorted, unique, no empty strings
    bool naturals = false;

    bool contains(const std::string& sym) const;
    bool empty() const { return !naturals && symbols.empty(); }
    bool enumerable() const { return !naturals; }

    static Alphabet of(std::initializer_list<std::string> syms);
    static Alphabet of(std::vector<std::string> syms);
    static Alphabet nat();

    bool operator==(const Alphabet&) const = default;
};

// a subset of b (symbol sets; the naturals alphabet contains every decimal)
bool subset_of(const Alphabet& a, const Alphabet& b);

// One named component of an I/O vector.
struct Port {
    std::string name;
    Alphabet alphabet;

    bool operator==(const Port&) const = default;
};

struct VectorAlphabet {
    std::vector<Port> ports;

    size_t size() const { return ports.size(); }
    // -1 when absent
    int index_of(const std::string& port_name) const;

    bool operator==(const VectorAlphabet&) const = default;
};

// A value of a vector alphabet: one symbol (or eps) per port.
using SymbolVec = std::vector<std::string>;

bool all_eps(const SymbolVec& v);
size_t arity(const SymbolVec& v);  // number of non-eps components
// component-wise membership (or eps) check against va; sizes must match
bool typed(const SymbolVec& v, const VectorAlphabet& va);
// "port=sym,port=sym" over the non-eps components, "eps" when none
std::string show_vec(const SymbolVec& v, const VectorAlphabet& va);
// a vector that is eps everywhere except `sym` at position k
SymbolVec unit_vec(size_t size, size_t k, const std::string& sym);

// Decimal rendering for natural-number symbols.
std::string nat_symbol(uint64_t v);
bool parse_nat(const std::string& sym, uint64_t* out);

}  // namespace ioa
