#ifndef SEQASM_STATE_HPP
#define SEQASM_STATE_HPP

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqasm/term.hpp"
#include "seqasm/value.hpp"
#include "seqasm/vocabulary.hpp"

namespace seqasm {

// ---------------------------------------------------------------------------
// Domains

enum class DomainKind { Integers, Rationals, Strings, Constructed };

struct DomainDescriptor {
    DomainKind kind = DomainKind::Integers;
    std::vector<std::string> constructors;  // Constructed only

    friend bool operator==(const DomainDescriptor& a, const DomainDescriptor& b) {
        return a.kind == b.kind && a.constructors == b.constructors;
    }

    std::string str() const {
        switch (kind) {
            case DomainKind::Integers: return "integers";
            case DomainKind::Rationals: return "rationals";
            case DomainKind::Strings: return "strings";
            case DomainKind::Constructed: {
                std::string out = "constructed";
                for (const auto& c : constructors) out += " " + c;
                return out;
            }
        }
        return "?";
    }
};

// ---------------------------------------------------------------------------
// Built-in operations
//
// Built-ins return nullopt at points outside their domain of definition;
// the caller turns that into undef or a hang depending on the symbol's
// totality marking.

inline std::optional<Value> apply_builtin(const std::string& name, const std::vector<Value>& args) {
    auto num = [](const Value& v) { return v.is_num(); };
    if (name == "add" && args.size() == 2 && num(args[0]) && num(args[1]))
        return Value::number(args[0].as_num() + args[1].as_num());
    if (name == "sub" && args.size() == 2 && num(args[0]) && num(args[1]))
        return Value::number(args[0].as_num() - args[1].as_num());
    if (name == "mul" && args.size() == 2 && num(args[0]) && num(args[1]))
        return Value::number(args[0].as_num() * args[1].as_num());
    if (name == "div" && args.size() == 2 && num(args[0]) && num(args[1])) {
        if (args[1].as_num().sign() == 0) return std::nullopt;
        Rational b = args[1].as_num();
        return Value::number(args[0].as_num() * Rational{b.den, b.num});
    }
    if (name == "neg" && args.size() == 1 && num(args[0]))
        return Value::number(Rational{0} - args[0].as_num());
    if (name == "abs" && args.size() == 1 && num(args[0]))
        return Value::number(args[0].as_num().abs());
    if (name == "sgn" && args.size() == 1 && num(args[0]))
        return Value::integer(args[0].as_num().sign());
    if (name == "gt" && args.size() == 2 && num(args[0]) && num(args[1]))
        return Value::boolean(args[1].as_num() < args[0].as_num());
    if (name == "lt" && args.size() == 2 && num(args[0]) && num(args[1]))
        return Value::boolean(args[0].as_num() < args[1].as_num());
    // Zig-zag enumeration of the integers: 0 -> -1 -> 1 -> -2 -> 2 -> ...
    // Defined on integers only.
    if (name == "zigzag" && args.size() == 1 && num(args[0]) && args[0].as_num().is_integer()) {
        long long n = args[0].as_num().num;
        return Value::integer(n >= 0 ? -n - 1 : -n);
    }
    if (name == "append0" && args.size() == 1 && args[0].kind() == Value::Kind::Str)
        return Value::atom(args[0].as_atom() + "0");
    if (name == "append1" && args.size() == 1 && args[0].kind() == Value::Kind::Str)
        return Value::atom(args[0].as_atom() + "1");
    return std::nullopt;
}

inline bool is_known_builtin(const std::string& name) {
    static const std::set<std::string> names = {"add", "sub", "mul", "div", "neg", "abs",
                                               "sgn", "gt", "lt", "zigzag", "append0", "append1"};
    return names.count(name) != 0;
}

// ---------------------------------------------------------------------------
// Interpretations

/// Interpretation of one function symbol: a finite table with a default
/// value, a named built-in, or a polynomial with rational coefficients
/// (ascending powers). Built-ins and polynomials may carry a relabeling
/// layer installed by apply_isomorphism.
struct Interpretation {
    enum class Kind { Table, Builtin, Polynomial };

    Kind kind = Kind::Table;
    std::map<std::vector<Value>, Value> entries;
    Value default_value;  // Table only
    std::string builtin;  // Builtin only
    std::vector<Rational> coefficients;  // Polynomial only
    std::map<Value, Value> relabel;  // forward map; empty = no relabeling

    static Interpretation table(Value dflt) {
        Interpretation i;
        i.kind = Kind::Table;
        i.default_value = std::move(dflt);
        return i;
    }
    static Interpretation constant(Value v) { return table(std::move(v)); }
    static Interpretation builtin_op(std::string name) {
        Interpretation i;
        i.kind = Kind::Builtin;
        i.builtin = std::move(name);
        return i;
    }
    static Interpretation polynomial(std::vector<Rational> coeffs) {
        Interpretation i;
        i.kind = Kind::Polynomial;
        i.coefficients = std::move(coeffs);
        return i;
    }

    friend bool operator==(const Interpretation& a, const Interpretation& b) {
        if (a.kind != b.kind || a.relabel != b.relabel) return false;
        switch (a.kind) {
            case Kind::Table: return a.entries == b.entries && a.default_value == b.default_value;
            case Kind::Builtin: return a.builtin == b.builtin;
            case Kind::Polynomial: return a.coefficients == b.coefficients;
        }
        return false;
    }
};

// ---------------------------------------------------------------------------
// Locations and updates

struct Location {
    std::string symbol;
    std::vector<Value> arguments;

    friend bool operator==(const Location& a, const Location& b) {
        return a.symbol == b.symbol && a.arguments == b.arguments;
    }
    friend bool operator<(const Location& a, const Location& b) {
        if (a.symbol != b.symbol) return a.symbol < b.symbol;
        return a.arguments < b.arguments;
    }

    std::string str() const {
        if (arguments.empty()) return symbol;
        std::string out = symbol + "(";
        for (size_t i = 0; i < arguments.size(); ++i) {
            if (i) out += ", ";
            out += arguments[i].str();
        }
        return out + ")";
    }
};

struct Update {
    Location location;
    Value value;

    friend bool operator==(const Update& a, const Update& b) {
        return a.location == b.location && a.value == b.value;
    }
    friend bool operator<(const Update& a, const Update& b) {
        if (!(a.location == b.location)) return a.location < b.location;
        return a.value < b.value;
    }

    std::string str() const { return location.str() + " <- " + value.str(); }
};

using UpdateSet = std::set<Update>;

/// Delta-plus, derived delta, or the bottom marker for terminal states.
struct UpdateSetResult {
    enum class Kind { Proposed, Delta, Terminal };
    Kind kind = Kind::Terminal;
    UpdateSet updates;

    static UpdateSetResult proposed(UpdateSet u) { return {Kind::Proposed, std::move(u)}; }
    static UpdateSetResult delta(UpdateSet u) { return {Kind::Delta, std::move(u)}; }
    static UpdateSetResult terminal() { return {Kind::Terminal, {}}; }

    bool is_terminal() const { return kind == Kind::Terminal; }

    friend bool operator==(const UpdateSetResult& a, const UpdateSetResult& b) {
        return a.kind == b.kind && a.updates == b.updates;
    }
};

// ---------------------------------------------------------------------------
// State

/// A first-order structure: domain descriptor plus an interpretation of
/// every vocabulary symbol. Value semantics throughout; operations that
/// "change" a state return a new one.
struct State {
    Vocabulary vocabulary;
    DomainDescriptor domain;
    std::map<std::string, Interpretation> interpretations;

    const Interpretation& interp(const std::string& symbol) const {
        auto it = interpretations.find(symbol);
        if (it == interpretations.end())
            throw std::out_of_range("no interpretation for symbol " + symbol);
        return it->second;
    }

    friend bool operator==(const State& a, const State& b) {
        return a.vocabulary == b.vocabulary && a.domain == b.domain &&
               a.interpretations == b.interpretations;
    }
    friend bool operator!=(const State& a, const State& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Evaluation

/// Result of evaluating a term: a value, or a hang at the innermost term
/// that applied a strictly-partial operation outside its domain.
struct EvalResult {
    Value value;
    bool hang = false;
    Term hang_term;

    static EvalResult ok(Value v) { return {std::move(v), false, {}}; }
    static EvalResult hung(Term t) { return {{}, true, std::move(t)}; }
};

inline Value lookup_raw(const Interpretation& in, const std::string& symbol,
                        const std::vector<Value>& args, bool& outside) {
    outside = false;
    switch (in.kind) {
        case Interpretation::Kind::Table: {
            auto it = in.entries.find(args);
            if (it != in.entries.end()) return it->second;
            return in.default_value;
        }
        case Interpretation::Kind::Builtin: {
            auto r = apply_builtin(in.builtin, args);
            if (!r) { outside = true; return Value::undef(); }
            return *r;
        }
        case Interpretation::Kind::Polynomial: {
            if (args.size() != 1 || !args[0].is_num()) { outside = true; return Value::undef(); }
            Rational x = args[0].as_num();
            Rational acc{0};
            for (auto it = in.coefficients.rbegin(); it != in.coefficients.rend(); ++it)
                acc = acc * x + *it;
            return Value::number(acc);
        }
    }
    throw std::logic_error("bad interpretation kind for " + symbol);
}

/// Table lookup / built-in application with the relabeling layer applied.
/// `outside` reports a point outside the operation's domain of definition.
inline Value lookup(const State& state, const std::string& symbol,
                    const std::vector<Value>& args, bool& outside) {
    const Interpretation& in = state.interp(symbol);
    if (in.relabel.empty() || in.kind == Interpretation::Kind::Table) {
        // A strictly-partial table is defined exactly on its explicit entries.
        if (in.kind == Interpretation::Kind::Table &&
            state.vocabulary.contains(symbol) &&
            state.vocabulary.at(symbol).totality == Totality::StrictlyPartial &&
            in.entries.find(args) == in.entries.end()) {
            outside = true;
            return Value::undef();
        }
        return lookup_raw(in, symbol, args, outside);
    }
    // Relabeled built-in: pull arguments back, apply, push result forward.
    std::map<Value, Value> inverse;
    for (const auto& [k, v] : in.relabel) inverse[v] = k;
    std::vector<Value> pulled;
    pulled.reserve(args.size());
    for (const auto& a : args) {
        auto it = inverse.find(a);
        pulled.push_back(it == inverse.end() ? a : it->second);
    }
    Value r = lookup_raw(in, symbol, pulled, outside);
    auto it = in.relabel.find(r);
    return it == in.relabel.end() ? r : it->second;
}

/// Inside-out term evaluation. Equality and disequality are total on all
/// values including undef; every other symbol is strict in undef; a hang
/// (strictly-partial operation outside its domain) propagates through
/// everything, equality included.
inline EvalResult eval_term(const State& state, const Term& term) {
    if (term.is_literal()) return EvalResult::ok(term.value());

    const std::string& f = term.symbol();
    std::vector<Value> args;
    args.reserve(term.args().size());
    for (const auto& a : term.args()) {
        EvalResult r = eval_term(state, a);
        if (r.hang) return r;
        args.push_back(std::move(r.value));
    }

    // Applications of the reserved constants (the parser emits literals,
    // but enumerated constructor terms use applications).
    if (args.empty()) {
        if (f == "true") return EvalResult::ok(Value::boolean(true));
        if (f == "false") return EvalResult::ok(Value::boolean(false));
        if (f == "undef") return EvalResult::ok(Value::undef());
    }
    if (f == "=" && args.size() == 2) return EvalResult::ok(Value::boolean(args[0] == args[1]));
    if (f == "!=" && args.size() == 2) return EvalResult::ok(Value::boolean(args[0] != args[1]));
    if (f == "not" || f == "and" || f == "or") {
        for (const auto& a : args)
            if (!a.is_bool()) return EvalResult::ok(Value::undef());
        if (f == "not") return EvalResult::ok(Value::boolean(!args[0].as_bool()));
        if (f == "and") return EvalResult::ok(Value::boolean(args[0].as_bool() && args[1].as_bool()));
        return EvalResult::ok(Value::boolean(args[0].as_bool() || args[1].as_bool()));
    }

    const Symbol& sym = state.vocabulary.at(f);
    // Strictness in undef for all non-logical symbols.
    for (const auto& a : args)
        if (a.is_undef()) return EvalResult::ok(Value::undef());

    bool outside = false;
    Value v = lookup(state, f, args, outside);
    if (outside) {
        if (sym.totality == Totality::StrictlyPartial) return EvalResult::hung(term);
        return EvalResult::ok(Value::undef());
    }
    return EvalResult::ok(v);
}

// ---------------------------------------------------------------------------
// State mutation and comparison

/// Applies a consistent set of non-conflicting updates, returning the new
/// state. Table entries equal to the default are kept implicit, so states
/// compare observationally.
inline State apply_updates(const State& state, const UpdateSet& delta) {
    {
        std::map<Location, Value> seen;
        for (const auto& u : delta) {
            auto [it, inserted] = seen.emplace(u.location, u.value);
            if (!inserted && !(it->second == u.value))
                throw std::logic_error("internal clash at " + u.location.str() +
                                       " reached apply_updates");
        }
    }
    State next = state;
    for (const auto& u : delta) {
        Interpretation& in = next.interpretations.at(u.location.symbol);
        if (in.kind != Interpretation::Kind::Table)
            throw std::logic_error("update to non-table symbol " + u.location.symbol);
        if (u.value == in.default_value)
            in.entries.erase(u.location.arguments);
        else
            in.entries[u.location.arguments] = u.value;
    }
    return next;
}

/// Delta from delta-plus: drop trivial updates; empty delta-plus means a
/// terminal state (bottom).
inline UpdateSetResult derive_delta(const State& state, const UpdateSet& proposed) {
    if (proposed.empty()) return UpdateSetResult::terminal();
    UpdateSet nontrivial;
    for (const auto& u : proposed) {
        bool outside = false;
        Value current = lookup(state, u.location.symbol, u.location.arguments, outside);
        if (outside || !(current == u.value)) nontrivial.insert(u);
    }
    return UpdateSetResult::delta(std::move(nontrivial));
}

/// True iff the two states give the same value to every term in the set.
/// A hang agrees only with a hang at the same point.
inline bool states_agree_on(const State& x, const State& y, const TermSet& terms) {
    for (const auto& t : terms) {
        EvalResult a = eval_term(x, t);
        EvalResult b = eval_term(y, t);
        if (a.hang != b.hang) return false;
        if (!a.hang && !(a.value == b.value)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Isomorphisms

/// Finite bijection on domain elements, identity off its support.
/// Booleans and undef are logical constants and must not be moved.
class Bijection {
public:
    Bijection() = default;
    explicit Bijection(std::map<Value, Value> forward) : forward_(std::move(forward)) {
        for (const auto& [k, v] : forward_) {
            if (k.is_bool() || k.is_undef() || v.is_bool() || v.is_undef())
                throw std::invalid_argument("bijection must fix booleans and undef");
            if (!inverse_.emplace(v, k).second)
                throw std::invalid_argument("map is not injective at " + v.str());
        }
    }

    Value apply(const Value& v) const {
        auto it = forward_.find(v);
        return it == forward_.end() ? v : it->second;
    }
    Value invert(const Value& v) const {
        auto it = inverse_.find(v);
        return it == inverse_.end() ? v : it->second;
    }
    const std::map<Value, Value>& forward() const { return forward_; }

    Location apply(const Location& loc) const {
        Location out{loc.symbol, {}};
        out.arguments.reserve(loc.arguments.size());
        for (const auto& a : loc.arguments) out.arguments.push_back(apply(a));
        return out;
    }
    Update apply(const Update& u) const { return {apply(u.location), apply(u.value)}; }
    UpdateSet apply(const UpdateSet& s) const {
        UpdateSet out;
        for (const auto& u : s) out.insert(apply(u));
        return out;
    }

private:
    std::map<Value, Value> forward_;
    std::map<Value, Value> inverse_;
};

/// Transports a state along a bijection: tables are relabeled entry-wise,
/// built-ins are wrapped with the bijection and its inverse.
inline State apply_isomorphism(const State& state, const Bijection& zeta) {
    State out = state;
    for (auto& [name, in] : out.interpretations) {
        (void)name;
        if (in.kind == Interpretation::Kind::Table) {
            std::map<std::vector<Value>, Value> moved;
            for (const auto& [args, v] : in.entries) {
                std::vector<Value> margs;
                margs.reserve(args.size());
                for (const auto& a : args) margs.push_back(zeta.apply(a));
                moved[margs] = zeta.apply(v);
            }
            in.entries = std::move(moved);
            in.default_value = zeta.apply(in.default_value);
        } else {
            // Compose with any existing relabeling layer.
            std::map<Value, Value> composed;
            std::set<Value> keys;
            for (const auto& [k, v] : in.relabel) { (void)v; keys.insert(k); }
            for (const auto& [k, v] : zeta.forward()) { (void)v; keys.insert(k); }
            for (const auto& k : keys) {
                auto it = in.relabel.find(k);
                Value mid = it == in.relabel.end() ? k : it->second;
                Value img = zeta.apply(mid);
                if (!(img == k)) composed[k] = img;
            }
            in.relabel = std::move(composed);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization (canonical, byte-deterministic)

namespace detail {
inline std::string entry_key(const std::string& symbol, const std::vector<Value>& args) {
    if (args.empty()) return symbol;
    std::string out = symbol + "(";
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += args[i].str();
    }
    return out + ")";
}
}  // namespace detail

inline std::string serialize_state(const State& state) {
    std::ostringstream out;
    out << "domain " << state.domain.str() << "\n";
    for (const auto& [name, sym] : state.vocabulary.symbols()) {
        if (is_reserved_symbol(name)) continue;
        out << "symbol " << name << " " << sym.arity << " " << to_string(sym.kind) << " "
            << to_string(sym.totality) << "\n";
        const Interpretation& in = state.interp(name);
        switch (in.kind) {
            case Interpretation::Kind::Table:
                out << "  default " << in.default_value.str() << "\n";
                for (const auto& [args, v] : in.entries)
                    out << "  " << detail::entry_key(name, args) << " = " << v.str() << "\n";
                break;
            case Interpretation::Kind::Builtin:
                if (!in.relabel.empty())
                    throw std::logic_error("cannot serialize a relabeled built-in");
                out << "  builtin " << in.builtin << "\n";
                break;
            case Interpretation::Kind::Polynomial: {
                if (!in.relabel.empty())
                    throw std::logic_error("cannot serialize a relabeled built-in");
                out << "  polynomial";
                for (const auto& c : in.coefficients) out << " " << c.str();
                out << "\n";
                break;
            }
        }
    }
    return out.str();
}

}  // namespace seqasm

#endif
