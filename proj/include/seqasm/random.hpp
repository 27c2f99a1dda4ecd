#ifndef SEQASM_RANDOM_HPP
#define SEQASM_RANDOM_HPP

#include <optional>
#include <random>
#include <vector>

#include "seqasm/state.hpp"

namespace seqasm {

/// Seeded RNG wrapper. All randomized suites draw through this so a seed
/// fully determines their behavior.
class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }
    size_t below(size_t n) { return n == 0 ? 0 : static_cast<size_t>(next() % n); }
    long long int_in(long long lo, long long hi) {  // inclusive
        return lo + static_cast<long long>(below(static_cast<size_t>(hi - lo + 1)));
    }
    bool flip() { return (next() & 1) != 0; }

    template <class T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 eng_;
};

/// Domain elements appearing in the state's finite tables (booleans and
/// undef excluded), plus small integers for numeric domains. Used as the
/// candidate pool for mutations and bijections.
inline std::vector<Value> value_pool(const State& state, bool include_small_ints = true) {
    std::set<Value> pool;
    auto add = [&](const Value& v) {
        if (!v.is_bool() && !v.is_undef()) pool.insert(v);
    };
    for (const auto& [name, in] : state.interpretations) {
        (void)name;
        if (in.kind != Interpretation::Kind::Table) continue;
        add(in.default_value);
        for (const auto& [args, v] : in.entries) {
            for (const auto& a : args) add(a);
            add(v);
        }
    }
    if (include_small_ints &&
        (state.domain.kind == DomainKind::Integers || state.domain.kind == DomainKind::Rationals))
        for (long long k = 0; k <= 9; ++k) pool.insert(Value::integer(k));
    return {pool.begin(), pool.end()};
}

/// One random update to a dynamic finite-table symbol. Returns nullopt if
/// the state has no mutable symbol.
inline std::optional<Update> random_mutation(const State& state, Rng& rng) {
    std::vector<std::string> dynamics;
    for (const auto& [name, sym] : state.vocabulary.symbols())
        if (sym.kind == SymbolKind::Dynamic &&
            state.interp(name).kind == Interpretation::Kind::Table)
            dynamics.push_back(name);
    if (dynamics.empty()) return std::nullopt;
    std::vector<Value> pool = value_pool(state);
    if (pool.empty()) pool.push_back(Value::integer(0));
    const std::string& name = dynamics[rng.below(dynamics.size())];
    const Symbol& sym = state.vocabulary.at(name);
    Location loc{name, {}};
    for (unsigned i = 0; i < sym.arity; ++i) loc.arguments.push_back(pool[rng.below(pool.size())]);
    Value v = rng.below(8) == 0 ? Value::undef() : pool[rng.below(pool.size())];
    return Update{std::move(loc), std::move(v)};
}

/// Applies k random mutations.
inline State perturb(const State& state, Rng& rng, size_t k) {
    State out = state;
    for (size_t i = 0; i < k; ++i) {
        auto m = random_mutation(out, rng);
        if (!m) return out;
        out = apply_updates(out, {*m});
    }
    return out;
}

/// A copy of the state differing somewhere but agreeing on all the given
/// terms, found by mutate-and-filter. Returns the unchanged state when no
/// agreeing mutation is found within the attempt budget.
inline State mutate_preserving(const State& state, const TermSet& terms, Rng& rng,
                               size_t attempts = 64) {
    for (size_t i = 0; i < attempts; ++i) {
        auto m = random_mutation(state, rng);
        if (!m) break;
        State candidate = apply_updates(state, {*m});
        if (states_agree_on(state, candidate, terms)) return candidate;
    }
    return state;
}

/// Random bijection: a permutation of a sampled subset of the pool.
inline Bijection random_bijection(const std::vector<Value>& pool, Rng& rng) {
    std::vector<Value> support;
    for (const auto& v : pool)
        if (rng.below(4) != 0) support.push_back(v);  // ~3/4 of the pool
    std::vector<Value> image = support;
    for (size_t i = image.size(); i > 1; --i) std::swap(image[i - 1], image[rng.below(i)]);
    std::map<Value, Value> fwd;
    for (size_t i = 0; i < support.size(); ++i)
        if (!(support[i] == image[i])) fwd[support[i]] = image[i];
    return Bijection(std::move(fwd));
}

}  // namespace seqasm

#endif
