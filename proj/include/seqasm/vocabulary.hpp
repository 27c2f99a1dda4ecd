#ifndef SEQASM_VOCABULARY_HPP
#define SEQASM_VOCABULARY_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqasm {

enum class SymbolKind { Static, Dynamic };
enum class Totality { Total, UndefReturning, StrictlyPartial };

inline std::string to_string(SymbolKind k) {
    return k == SymbolKind::Static ? "static" : "dynamic";
}
inline std::string to_string(Totality t) {
    switch (t) {
        case Totality::Total: return "total";
        case Totality::UndefReturning: return "undef_returning";
        case Totality::StrictlyPartial: return "strictly_partial";
    }
    return "?";
}

struct Symbol {
    std::string name;
    unsigned arity = 0;
    SymbolKind kind = SymbolKind::Static;
    Totality totality = Totality::Total;
};

// Symbols with fixed logical meaning, present in every vocabulary.
// true/false/undef are recognized by the parser as literals; the
// connectives and (dis)equality get their standard interpretation
// directly in term evaluation.
inline const std::vector<Symbol>& reserved_symbols() {
    static const std::vector<Symbol> r = {
        {"true", 0, SymbolKind::Static, Totality::Total},
        {"false", 0, SymbolKind::Static, Totality::Total},
        {"undef", 0, SymbolKind::Static, Totality::Total},
        {"not", 1, SymbolKind::Static, Totality::Total},
        {"and", 2, SymbolKind::Static, Totality::Total},
        {"or", 2, SymbolKind::Static, Totality::Total},
        {"=", 2, SymbolKind::Static, Totality::Total},
        {"!=", 2, SymbolKind::Static, Totality::Total},
    };
    return r;
}

inline bool is_reserved_symbol(const std::string& name) {
    for (const auto& s : reserved_symbols())
        if (s.name == name) return true;
    return false;
}

/// Finite set of function symbols; always contains the reserved ones.
class Vocabulary {
public:
    Vocabulary() {
        for (const auto& s : reserved_symbols()) symbols_[s.name] = s;
    }

    void declare(Symbol sym) {
        if (is_reserved_symbol(sym.name))
            throw std::invalid_argument("cannot redeclare reserved symbol " + sym.name);
        if (symbols_.count(sym.name))
            throw std::invalid_argument("duplicate symbol " + sym.name);
        symbols_[sym.name] = std::move(sym);
    }

    bool contains(const std::string& name) const { return symbols_.count(name) != 0; }

    const Symbol& at(const std::string& name) const {
        auto it = symbols_.find(name);
        if (it == symbols_.end()) throw std::out_of_range("unknown symbol " + name);
        return it->second;
    }

    const std::map<std::string, Symbol>& symbols() const { return symbols_; }

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        if (a.symbols_.size() != b.symbols_.size()) return false;
        for (const auto& [name, sym] : a.symbols_) {
            auto it = b.symbols_.find(name);
            if (it == b.symbols_.end()) return false;
            const Symbol& o = it->second;
            if (sym.arity != o.arity || sym.kind != o.kind || sym.totality != o.totality)
                return false;
        }
        return true;
    }

private:
    std::map<std::string, Symbol> symbols_;
};

}  // namespace seqasm

#endif
