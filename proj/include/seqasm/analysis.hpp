#ifndef SEQASM_ANALYSIS_HPP
#define SEQASM_ANALYSIS_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqasm/semantics.hpp"

namespace seqasm {

// ---------------------------------------------------------------------------
// Critical terms

/// Critical terms of a program: every condition term, every assignment
/// right-hand side, and the proper subterms of assignment left-hand
/// sides, closed under subterms.
inline TermSet critical_terms(const Program& program) {
    TermSet out;
    std::function<void(const StmtPtr&)> walk = [&](const StmtPtr& s) {
        switch (s->kind()) {
            case Stmt::Kind::Assign:
                for (const auto& a : s->args()) a.collect_subterms(out);
                s->rhs().collect_subterms(out);
                break;
            case Stmt::Kind::If:
                s->condition().collect_subterms(out);
                walk(s->then_branch());
                if (s->else_branch()) walk(s->else_branch());
                break;
            case Stmt::Kind::Par:
                for (const auto& c : s->children()) walk(c);
                break;
        }
    };
    walk(program);
    return out;
}

// ---------------------------------------------------------------------------
// Guard profiles

/// Equivalence pattern of a term set in a state: which terms are equal to
/// each other, and which equal the constants true/false/undef. Hangs are
/// tracked as their own tag so profiles stay total.
struct GuardProfile {
    enum class Tag { None, True, False, Undef, Hang };
    std::vector<int> eq_class;  // first-occurrence class index per term
    std::vector<Tag> tags;

    friend bool operator==(const GuardProfile& a, const GuardProfile& b) {
        return a.eq_class == b.eq_class && a.tags == b.tags;
    }
    friend bool operator<(const GuardProfile& a, const GuardProfile& b) {
        if (a.eq_class != b.eq_class) return a.eq_class < b.eq_class;
        return a.tags < b.tags;
    }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < eq_class.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(eq_class[i]);
            switch (tags[i]) {
                case Tag::None: break;
                case Tag::True: out += "T"; break;
                case Tag::False: out += "F"; break;
                case Tag::Undef: out += "U"; break;
                case Tag::Hang: out += "H"; break;
            }
        }
        return out;
    }
};

/// Ordered view of a term set (size-then-text order, the fixed tie-break
/// order of the analysis module).
inline std::vector<Term> ordered_terms(const TermSet& terms) {
    return {terms.begin(), terms.end()};
}

inline GuardProfile guard_profile(const State& state, const std::vector<Term>& terms) {
    GuardProfile p;
    std::vector<EvalResult> results;
    results.reserve(terms.size());
    for (const auto& t : terms) results.push_back(eval_term(state, t));
    for (size_t i = 0; i < terms.size(); ++i) {
        int cls = static_cast<int>(i);
        for (size_t j = 0; j < i; ++j) {
            bool same = results[i].hang == results[j].hang &&
                        (results[i].hang || results[i].value == results[j].value);
            if (same) { cls = p.eq_class[j]; break; }
        }
        p.eq_class.push_back(cls);
        if (results[i].hang) p.tags.push_back(GuardProfile::Tag::Hang);
        else if (results[i].value == Value::boolean(true)) p.tags.push_back(GuardProfile::Tag::True);
        else if (results[i].value == Value::boolean(false)) p.tags.push_back(GuardProfile::Tag::False);
        else if (results[i].value.is_undef()) p.tags.push_back(GuardProfile::Tag::Undef);
        else p.tags.push_back(GuardProfile::Tag::None);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Property reports

struct PropertyReport {
    std::string property;
    size_t trials = 0;    // samples drawn
    size_t checked = 0;   // samples that met the property's precondition
    std::vector<std::string> counterexamples;

    bool passed() const { return counterexamples.empty(); }

    std::string str() const {
        std::ostringstream out;
        out << "property " << property << "\n"
            << "trials " << trials << "\n"
            << "checked " << checked << "\n"
            << (passed() ? "pass" : "fail") << "\n";
        for (const auto& c : counterexamples) out << "counterexample\n" << c;
        return out.str();
    }
};

// ---------------------------------------------------------------------------
// Bounded exploration (Effective Transitions)

using StatePairSampler = std::function<std::pair<State, State>(size_t trial)>;

/// For sampled state pairs that agree on all the given terms, checks that
/// the proposed update sets coincide. With the program's own critical
/// terms this should never find a counterexample.
inline PropertyReport check_bounded_exploration(const Program& program, const TermSet& terms,
                                                const StatePairSampler& sampler, size_t trials) {
    PropertyReport report;
    report.property = "bounded-exploration";
    report.trials = trials;
    for (size_t i = 0; i < trials; ++i) {
        auto [x, y] = sampler(i);
        if (!states_agree_on(x, y, terms)) continue;
        ++report.checked;
        ProposedResult px = proposed_updates(program, x);
        ProposedResult py = proposed_updates(program, y);
        bool same = px.hang == py.hang && (px.hang || px.updates == py.updates);
        if (!same) {
            std::ostringstream c;
            c << "state X\n" << serialize_state(x) << "state Y\n" << serialize_state(y);
            report.counterexamples.push_back(c.str());
            if (report.counterexamples.size() >= 5) break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Isomorphism respect (Abstract State)

using BijectionSampler = std::function<Bijection(size_t trial)>;
using StateTransport = std::function<State(const State&, const Bijection&)>;

namespace detail {

inline bool outcomes_match(const StepOutcome& transported_of_x, const StepOutcome& of_y,
                           const Bijection& zeta) {
    const StepOutcome& ox = transported_of_x;
    if (ox.kind != of_y.kind) return false;
    if (ox.kind != StepOutcome::Kind::Next) return true;  // Terminal/Clash/Hang: kinds agree
    if (!(zeta.apply(ox.proposed) == of_y.proposed)) return false;
    if (!(zeta.apply(ox.delta) == of_y.delta)) return false;
    return apply_isomorphism(ox.next, zeta) == of_y.next;
}

}  // namespace detail

/// Checks that stepping commutes with isomorphic relabeling of the state.
/// `transport` defaults to apply_isomorphism; tests may supply a broken
/// transport to exercise the negative direction.
inline PropertyReport check_isomorphism_respect(const Program& program, const State& state,
                                                const BijectionSampler& sampler, size_t trials,
                                                const StateTransport& transport = apply_isomorphism) {
    PropertyReport report;
    report.property = "isomorphism-respect";
    report.trials = trials;
    StepOutcome of_x = step(program, state);
    for (size_t i = 0; i < trials; ++i) {
        Bijection zeta = sampler(i);
        State y = transport(state, zeta);
        ++report.checked;
        StepOutcome of_y = step(program, y);
        if (!detail::outcomes_match(of_x, of_y, zeta)) {
            std::ostringstream c;
            c << "bijection\n";
            for (const auto& [k, v] : zeta.forward())
                c << "  " << k.str() << " -> " << v.str() << "\n";
            report.counterexamples.push_back(c.str());
            if (report.counterexamples.size() >= 5) break;
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// ASM synthesis from an update oracle

struct SynthesisError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// An observed update's location or value is not denoted by any critical
/// term in its profile: the term set is insufficient.
struct UnexpressibleUpdate : SynthesisError {
    using SynthesisError::SynthesisError;
};
/// Two samples with the same guard profile map to different symbolic
/// rules.
struct InconsistentSamples : SynthesisError {
    using SynthesisError::SynthesisError;
};

using UpdateOracle = std::function<UpdateSetResult(const State&)>;

namespace detail {

struct SymbolicAssign {
    std::string symbol;
    std::vector<Term> args;
    Term value;

    friend bool operator<(const SymbolicAssign& a, const SymbolicAssign& b) {
        if (a.symbol != b.symbol) return a.symbol < b.symbol;
        if (a.args != b.args) return a.args < b.args;
        return a.value < b.value;
    }
    friend bool operator==(const SymbolicAssign& a, const SymbolicAssign& b) {
        return a.symbol == b.symbol && a.args == b.args && a.value == b.value;
    }
};

/// Smallest term in the fixed order denoting the given value in `state`.
inline Term denoting_term(const std::vector<Term>& terms, const State& state, const Value& v) {
    for (const auto& t : terms) {
        EvalResult r = eval_term(state, t);
        if (!r.hang && r.value == v) return t;
    }
    throw UnexpressibleUpdate("no critical term denotes value " + v.str());
}

/// Conjunction of equalities and disequalities pinning down one profile.
inline Term profile_guard(const GuardProfile& p, const std::vector<Term>& terms) {
    std::vector<Term> conjuncts;
    // Pairwise comparisons matter only between untagged terms: for any
    // pair where either term equals one of the constants, the constant
    // conjuncts below already decide the comparison. (Untagged terms are
    // never boolean-connective applications, so they stay printable on
    // either side of = and !=.)
    for (size_t i = 0; i < terms.size(); ++i)
        for (size_t j = 0; j < i; ++j) {
            if (p.tags[i] != GuardProfile::Tag::None || p.tags[j] != GuardProfile::Tag::None)
                continue;
            bool equal = p.eq_class[i] == p.eq_class[j];
            conjuncts.push_back(Term::app(equal ? "=" : "!=", {terms[j], terms[i]}));
        }
    const Term kTrue = Term::literal(Value::boolean(true));
    const Term kFalse = Term::literal(Value::boolean(false));
    const Term kUndef = Term::literal(Value::undef());
    for (size_t i = 0; i < terms.size(); ++i) {
        switch (p.tags[i]) {
            case GuardProfile::Tag::True:
                conjuncts.push_back(Term::app("=", {terms[i], kTrue}));
                break;
            case GuardProfile::Tag::False:
                conjuncts.push_back(Term::app("=", {terms[i], kFalse}));
                break;
            case GuardProfile::Tag::Undef:
                conjuncts.push_back(Term::app("=", {terms[i], kUndef}));
                break;
            case GuardProfile::Tag::None:
                conjuncts.push_back(Term::app("!=", {terms[i], kTrue}));
                conjuncts.push_back(Term::app("!=", {terms[i], kFalse}));
                conjuncts.push_back(Term::app("!=", {terms[i], kUndef}));
                break;
            case GuardProfile::Tag::Hang:
                throw UnexpressibleUpdate("profile contains a hanging term");
        }
    }
    if (conjuncts.empty()) return Term::app("=", {kTrue, kTrue});  // unconditional rule
    Term guard = conjuncts.back();
    for (auto it = conjuncts.rbegin() + 1; it != conjuncts.rend(); ++it)
        guard = Term::app("and", {*it, guard});
    return guard;
}

}  // namespace detail

/// Builds an ASM from a black-box update oracle: one guarded parallel
/// rule per guard profile observed among the samples. On every sample the
/// resulting program's proposed updates equal the oracle's.
inline Program synthesize_asm(const UpdateOracle& oracle, const TermSet& terms,
                              const std::vector<State>& samples) {
    std::vector<Term> ordered = ordered_terms(terms);
    std::map<GuardProfile, std::optional<std::vector<detail::SymbolicAssign>>> rules;
    for (const auto& s : samples) {
        GuardProfile p = guard_profile(s, ordered);
        UpdateSetResult r = oracle(s);
        std::optional<std::vector<detail::SymbolicAssign>> rule;
        if (!r.is_terminal()) {
            std::vector<detail::SymbolicAssign> assigns;
            for (const auto& u : r.updates) {
                detail::SymbolicAssign a;
                a.symbol = u.location.symbol;
                for (const auto& arg : u.location.arguments)
                    a.args.push_back(detail::denoting_term(ordered, s, arg));
                a.value = detail::denoting_term(ordered, s, u.value);
                assigns.push_back(std::move(a));
            }
            std::sort(assigns.begin(), assigns.end());
            assigns.erase(std::unique(assigns.begin(), assigns.end()), assigns.end());
            rule = std::move(assigns);
        }
        auto it = rules.find(p);
        if (it == rules.end()) {
            rules.emplace(p, std::move(rule));
        } else if (!(it->second == rule)) {
            throw InconsistentSamples("guard profile " + p.str() +
                                      " maps to conflicting symbolic rules");
        }
    }

    std::vector<StmtPtr> guarded;
    for (const auto& [profile, rule] : rules) {
        if (!rule) continue;  // terminal profile: contributes no rule
        std::vector<StmtPtr> assigns;
        for (const auto& a : *rule) assigns.push_back(Stmt::assign(a.symbol, a.args, a.value));
        if (assigns.empty()) continue;
        StmtPtr body = assigns.size() == 1 ? assigns[0] : Stmt::par(std::move(assigns));
        guarded.push_back(Stmt::if_(detail::profile_guard(profile, ordered), body));
    }
    if (guarded.size() == 1) return guarded[0];
    return Stmt::par(std::move(guarded));
}

}  // namespace seqasm

#endif
