#include "ioa/alphabet.hpp"

#include <algorithm>
#include <cstdint>

namespace ioa {

std::string show_symbol(const std::string& sym) { return sym.empty() ? "eps" : sym; }

bool Alphabet::contains(const std::string& sym) const {
    if (sym.empty()) return false;
    if (naturals) {
        uint64_t v;
        return parse_nat(sym, &v);
    }
    return std::binary_search(symbols.begin(), symbols.end(), sym);
}

Alphabet Alphabet::of(std::initializer_list<std::string> syms) {
    return of(std::vector<std::string>(syms));
}

Alphabet Alphabet::of(std::vector<std::string> syms) {
    Alphabet a;
    a.symbols = std::move(syms);
    std::sort(a.symbols.begin(), a.symbols.end());
    a.symbols.erase(std::unique(a.symbols.begin(), a.symbols.end()), a.symbols.end());
    return a;
}

Alphabet Alphabet::nat() {
    Alphabet a;
    a.naturals = true;
    return a;
}

bool subset_of(const Alphabet& a, const Alphabet& b) {
    if (b.naturals) {
        if (a.naturals) return true;
        return std::all_of(a.symbols.begin(), a.symbols.end(), [&](const std::string& s) {
            uint64_t v;
            return parse_nat(s, &v);
        });
    }
    if (a.naturals) return false;
    return std::all_of(a.symbols.begin(), a.symbols.end(),
                       [&](const std::string& s) { return b.contains(s); });
}

int VectorAlphabet::index_of(const std::string& port_name) const {
    for (size_t i = 0; i < ports.size(); ++i)
        if (ports[i].name == port_name) return static_cast<int>(i);
    return -1;
}

bool all_eps(const SymbolVec& v) {
    return std::all_of(v.begin(), v.end(), [](const std::string& s) { return s.empty(); });
}

size_t arity(const SymbolVec& v) {
    return static_cast<size_t>(
        std::count_if(v.begin(), v.end(), [](const std::string& s) { return !s.empty(); }));
}

bool typed(const SymbolVec& v, const VectorAlphabet& va) {
    if (v.size() != va.ports.size()) return false;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].empty() && !va.ports[i].alphabet.contains(v[i])) return false;
    return true;
}

std::string show_vec(const SymbolVec& v, const VectorAlphabet& va) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i].empty()) continue;
        if (!out.empty()) out += ',';
        if (i < va.ports.size() && !va.ports[i].name.empty())
            out += va.ports[i].name + '=' + v[i];
        else
            out += v[i];
    }
    return out.empty() ? "eps" : out;
}

SymbolVec unit_vec(size_t size, size_t k, const std::string& sym) {
    SymbolVec v(size);
    if (k < size) v[k] = sym;
    return v;
}

std::string nat_symbol(uint64_t v) { return std::to_string(v); }

bool parse_nat(const std::string& sym, uint64_t* out) {
    if (sym.empty() || sym.size() > 20) return false;
    uint64_t v = 0;
    for (char c : sym) {
        if (c < '0' || c > '9') return false;
        uint64_t d = static_cast<uint64_t>(c - '0');
        if (v > (UINT64_MAX - d) / 10) return false;
        v = v * 10 + d;
    }
    if (sym.size() > 1 && sym[0] == '0') return false;  // canonical decimals only
    if (out) *out = v;
    return true;
}

}  // namespace ioa
