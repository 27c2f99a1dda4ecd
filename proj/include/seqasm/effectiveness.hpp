#ifndef SEQASM_EFFECTIVENESS_HPP
#define SEQASM_EFFECTIVENESS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seqasm/semantics.hpp"

namespace seqasm {

// ---------------------------------------------------------------------------
// Constructor vocabularies and free construction

/// Symbols designated as constructing the domain. All must be static
/// symbols of the state's vocabulary.
struct ConstructorVocabulary {
    std::vector<std::string> symbols;
};

/// All terms over the constructors of depth <= depth, ordered depth-major
/// then lexicographically. A constant has depth 0.
inline std::vector<Term> enumerate_constructor_terms(const Vocabulary& vocab,
                                                     const ConstructorVocabulary& c,
                                                     unsigned depth) {
    std::vector<std::string> names = c.symbols;
    std::sort(names.begin(), names.end());
    // by_depth[d] = terms of depth exactly d, sorted by text.
    std::vector<std::vector<Term>> by_depth(depth + 1);
    for (const auto& name : names)
        if (vocab.at(name).arity == 0) by_depth[0].push_back(Term::app(name));
    std::sort(by_depth[0].begin(), by_depth[0].end(),
              [](const Term& a, const Term& b) { return a.str() < b.str(); });
    for (unsigned d = 1; d <= depth; ++d) {
        std::vector<Term> shallower;  // depth <= d-1
        for (unsigned k = 0; k < d; ++k)
            shallower.insert(shallower.end(), by_depth[k].begin(), by_depth[k].end());
        for (const auto& name : names) {
            unsigned arity = vocab.at(name).arity;
            if (arity == 0) continue;
            // Argument tuples where at least one argument has depth d-1.
            std::vector<Term> tuple(arity);
            std::function<void(unsigned, bool)> build = [&](unsigned pos, bool has_deep) {
                if (pos == arity) {
                    if (has_deep) by_depth[d].push_back(Term::app(name, tuple));
                    return;
                }
                for (const auto& t : shallower) {
                    bool deep = std::find(by_depth[d - 1].begin(), by_depth[d - 1].end(), t) !=
                                by_depth[d - 1].end();
                    tuple[pos] = t;
                    build(pos + 1, has_deep || deep);
                }
            };
            build(0, false);
        }
        std::sort(by_depth[d].begin(), by_depth[d].end(),
                  [](const Term& a, const Term& b) { return a.str() < b.str(); });
    }
    std::vector<Term> out;
    for (const auto& level : by_depth) out.insert(out.end(), level.begin(), level.end());
    return out;
}

struct FreenessReport {
    unsigned depth_bound = 0;
    size_t terms_checked = 0;
    size_t junk_terms = 0;  // terms that hang or hit an undefined point
    // value -> the distinct constructor terms naming it (only multiply
    // named values are listed).
    std::vector<std::pair<Value, std::vector<Term>>> duplicate_names;

    bool free_up_to_bound() const { return duplicate_names.empty(); }

    std::string str() const {
        std::ostringstream out;
        out << "freeness bound " << depth_bound << "\n"
            << "terms " << terms_checked << "\n"
            << "junk " << junk_terms << "\n"
            << (free_up_to_bound() ? "free" : "not-free") << "\n";
        for (const auto& [v, ts] : duplicate_names) {
            out << "duplicate " << v.str() << " named-by";
            for (const auto& t : ts) out << " " << t.str();
            out << "\n";
        }
        return out.str();
    }
};

/// Evaluates every constructor term up to the depth bound and reports any
/// value named by two distinct terms. Terms that hang (partial
/// constructors applied outside their domain) are junk, not names.
inline FreenessReport check_free_construction(const State& state, const ConstructorVocabulary& c,
                                              unsigned depth_bound) {
    FreenessReport report;
    report.depth_bound = depth_bound;
    std::map<Value, std::vector<Term>> names;
    for (const auto& t : enumerate_constructor_terms(state.vocabulary, c, depth_bound)) {
        ++report.terms_checked;
        EvalResult r = eval_term(state, t);
        // A constructor term evaluating to undef names the value undef
        // only when it is the constant undef itself; anything else that
        // collapses to undef is a strictness artifact, counted as junk.
        bool junk = r.hang || (r.value.is_undef() && !(t == Term::app("undef")));
        if (junk) {
            ++report.junk_terms;
            continue;
        }
        names[r.value].push_back(t);
    }
    for (const auto& [v, ts] : names)
        if (ts.size() > 1) report.duplicate_names.emplace_back(v, ts);
    return report;
}

// ---------------------------------------------------------------------------
// Function computation

/// How to run a program as a partial-function computer: input locations,
/// a designated output term, and the shared template state.
struct FunctionComputationSpec {
    std::vector<Term> inputs;  // k terms naming the input locations
    Term output;
    State template_state;
    size_t step_budget = 10000;
};

/// The template with the input-term locations set to the tuple, untouched
/// elsewhere.
inline State make_input_state(const FunctionComputationSpec& spec,
                              const std::vector<Value>& tuple) {
    if (tuple.size() != spec.inputs.size())
        throw std::invalid_argument("input tuple arity mismatch: expected " +
                                    std::to_string(spec.inputs.size()) + ", got " +
                                    std::to_string(tuple.size()));
    UpdateSet updates;
    for (size_t i = 0; i < tuple.size(); ++i) {
        const Term& t = spec.inputs[i];
        if (t.is_literal()) throw std::invalid_argument("input term must be a symbol application");
        Location loc{t.symbol(), {}};
        for (const auto& a : t.args()) {
            EvalResult r = eval_term(spec.template_state, a);
            if (r.hang) throw std::invalid_argument("input term argument hangs");
            loc.arguments.push_back(std::move(r.value));
        }
        updates.insert({std::move(loc), tuple[i]});
    }
    return apply_updates(spec.template_state, updates);
}

struct ComputationResult {
    enum class Kind { Value, Divergent, Clash, Hang };
    Kind kind = Kind::Divergent;
    Value value;           // Kind::Value
    size_t budget = 0;     // Kind::Divergent: the exhausted budget
    ClashReport clash;     // Kind::Clash
    Term hang_term;        // Kind::Hang

    std::string str() const {
        switch (kind) {
            case Kind::Value: return value.str();
            case Kind::Divergent: return "divergent (budget " + std::to_string(budget) + ")";
            case Kind::Clash: return "clash " + clash.str();
            case Kind::Hang: return "hang at " + hang_term.str();
        }
        return "?";
    }
};

/// Runs the program from the input state for the tuple; a terminal run
/// yields the output term's final value. Stutter counts as divergence;
/// clash and hang are surfaced distinctly.
inline ComputationResult compute_function(const Program& program,
                                          const FunctionComputationSpec& spec,
                                          const std::vector<Value>& tuple) {
    State start = make_input_state(spec, tuple);
    Trace trace = run(program, start, spec.step_budget);
    ComputationResult out;
    switch (trace.outcome) {
        case RunOutcome::Terminal: {
            EvalResult r = eval_term(trace.final_state(), spec.output);
            if (r.hang) {
                out.kind = ComputationResult::Kind::Hang;
                out.hang_term = r.hang_term;
            } else {
                out.kind = ComputationResult::Kind::Value;
                out.value = r.value;
            }
            break;
        }
        case RunOutcome::Stutter:
        case RunOutcome::StepLimit:
            out.kind = ComputationResult::Kind::Divergent;
            out.budget = spec.step_budget;
            break;
        case RunOutcome::Clash:
            out.kind = ComputationResult::Kind::Clash;
            out.clash = trace.clash;
            break;
        case RunOutcome::Hang:
            out.kind = ComputationResult::Kind::Hang;
            out.hang_term = trace.hang_term;
            break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Effective states

/// A registered bootstrap witness: a program that computes a static
/// operation over the constructors alone.
struct BootstrapWitness {
    Program program;
    FunctionComputationSpec spec;
};

using WitnessRegistry = std::map<std::string, BootstrapWitness>;

struct EffectivenessReport {
    FreenessReport freeness;
    bool pass = false;
    // symbol -> reason it blocks effectiveness
    std::vector<std::pair<std::string, std::string>> offending;
    size_t witness_points = 0;  // sampled points across all validated witnesses

    std::string str() const {
        std::ostringstream out;
        out << (pass ? "effective" : "not-effective") << "\n";
        out << "witness-points " << witness_points << "\n";
        for (const auto& [sym, why] : offending) out << "offending " << sym << " : " << why << "\n";
        out << freeness.str();
        return out.str();
    }
};

/// A state is effective when its domain is freely constructed (up to the
/// inspected bound), every dynamic symbol is a finite table over a single
/// default, and every remaining static operation either is a finite
/// table or comes with a validated bootstrap witness.
inline EffectivenessReport check_effective_state(
    const State& state, const ConstructorVocabulary& ctors, unsigned depth_bound,
    const WitnessRegistry& witnesses = {},
    const std::map<std::string, std::vector<std::vector<Value>>>& witness_samples = {}) {
    EffectivenessReport report;
    report.freeness = check_free_construction(state, ctors, depth_bound);
    if (!report.freeness.free_up_to_bound())
        report.offending.emplace_back("<domain>", "constructors are not free up to the bound");

    std::set<std::string> ctor_set(ctors.symbols.begin(), ctors.symbols.end());
    for (const auto& [name, sym] : state.vocabulary.symbols()) {
        if (is_reserved_symbol(name) || ctor_set.count(name)) continue;
        const Interpretation& in = state.interp(name);
        if (sym.kind == SymbolKind::Dynamic) {
            if (in.kind != Interpretation::Kind::Table)
                report.offending.emplace_back(name, "dynamic symbol is not a finite table");
            continue;
        }
        if (in.kind == Interpretation::Kind::Table) continue;  // finitely presented
        auto wit = witnesses.find(name);
        if (wit == witnesses.end()) {
            report.offending.emplace_back(name, "non-constructor operation with no bootstrap witness");
            continue;
        }
        // Validate the witness on the sampled points against the state's
        // own interpretation.
        auto pts = witness_samples.find(name);
        if (pts == witness_samples.end() || pts->second.empty()) {
            report.offending.emplace_back(name, "bootstrap witness has no sample points");
            continue;
        }
        for (const auto& tuple : pts->second) {
            bool outside = false;
            Value expected = lookup(state, name, tuple, outside);
            ComputationResult got = compute_function(wit->second.program, wit->second.spec, tuple);
            bool agree;
            if (outside)
                agree = got.kind != ComputationResult::Kind::Value;
            else
                agree = got.kind == ComputationResult::Kind::Value && got.value == expected;
            if (!agree) {
                std::string point = "(";
                for (size_t i = 0; i < tuple.size(); ++i)
                    point += (i ? ", " : "") + tuple[i].str();
                report.offending.emplace_back(name, "witness disagrees at " + point + ")");
                break;
            }
            ++report.witness_points;
        }
    }
    report.pass = report.offending.empty();
    return report;
}

}  // namespace seqasm

#endif
