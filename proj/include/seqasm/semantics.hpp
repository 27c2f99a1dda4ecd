#ifndef SEQASM_SEMANTICS_HPP
#define SEQASM_SEMANTICS_HPP

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "seqasm/program.hpp"
#include "seqasm/state.hpp"

namespace seqasm {

// ---------------------------------------------------------------------------
// Proposed updates

/// Delta-plus of a program in a state, or a hang from a strictly-partial
/// operation applied outside its domain.
struct ProposedResult {
    UpdateSet updates;
    bool hang = false;
    Term hang_term;

    static ProposedResult ok(UpdateSet u) { return {std::move(u), false, {}}; }
    static ProposedResult hung(Term t) { return {{}, true, std::move(t)}; }
};

namespace detail {

inline bool collect_updates(const StmtPtr& s, const State& state, UpdateSet& out,
                            Term& hang_term) {
    switch (s->kind()) {
        case Stmt::Kind::Assign: {
            Location loc{s->symbol(), {}};
            loc.arguments.reserve(s->args().size());
            for (const auto& a : s->args()) {
                EvalResult r = eval_term(state, a);
                if (r.hang) { hang_term = r.hang_term; return false; }
                loc.arguments.push_back(std::move(r.value));
            }
            EvalResult r = eval_term(state, s->rhs());
            if (r.hang) { hang_term = r.hang_term; return false; }
            out.insert({std::move(loc), std::move(r.value)});
            return true;
        }
        case Stmt::Kind::If: {
            EvalResult c = eval_term(state, s->condition());
            if (c.hang) { hang_term = c.hang_term; return false; }
            // A condition holds only if it evaluates exactly to true;
            // undef or a non-boolean counts as not-true.
            if (c.value.is_true()) return collect_updates(s->then_branch(), state, out, hang_term);
            if (s->else_branch()) return collect_updates(s->else_branch(), state, out, hang_term);
            return true;
        }
        case Stmt::Kind::Par:
            for (const auto& c : s->children())
                if (!collect_updates(c, state, out, hang_term)) return false;
            return true;
    }
    return true;
}

}  // namespace detail

inline ProposedResult proposed_updates(const Program& program, const State& state) {
    UpdateSet out;
    Term hang_term;
    if (!detail::collect_updates(program, state, out, hang_term))
        return ProposedResult::hung(hang_term);
    return ProposedResult::ok(std::move(out));
}

// ---------------------------------------------------------------------------
// Clash detection

struct ClashReport {
    // Each clashing location with the distinct values proposed for it.
    std::vector<std::pair<Location, std::vector<Value>>> clashes;

    std::string str() const {
        std::string out;
        for (const auto& [loc, values] : clashes) {
            if (!out.empty()) out += "; ";
            out += loc.str() + " : {";
            for (size_t i = 0; i < values.size(); ++i) {
                if (i) out += ", ";
                out += values[i].str();
            }
            out += "}";
        }
        return out;
    }
};

inline std::optional<ClashReport> detect_clash(const UpdateSet& proposed) {
    std::map<Location, std::vector<Value>> by_location;
    for (const auto& u : proposed) by_location[u.location].push_back(u.value);
    ClashReport report;
    for (auto& [loc, values] : by_location)
        if (values.size() > 1) report.clashes.emplace_back(loc, std::move(values));
    if (report.clashes.empty()) return std::nullopt;
    return report;
}

// ---------------------------------------------------------------------------
// Step and run

struct StepOutcome {
    enum class Kind { Next, Terminal, Clash, Hang };
    Kind kind = Kind::Terminal;
    State next;           // Next
    UpdateSet proposed;   // Next
    UpdateSet delta;      // Next
    ClashReport clash;    // Clash
    Term hang_term;       // Hang

    static StepOutcome terminal() { return {}; }
};

inline StepOutcome step(const Program& program, const State& state) {
    ProposedResult p = proposed_updates(program, state);
    if (p.hang) {
        StepOutcome o;
        o.kind = StepOutcome::Kind::Hang;
        o.hang_term = p.hang_term;
        return o;
    }
    if (p.updates.empty()) return StepOutcome::terminal();
    if (auto clash = detect_clash(p.updates)) {
        StepOutcome o;
        o.kind = StepOutcome::Kind::Clash;
        o.clash = *clash;
        return o;
    }
    UpdateSetResult d = derive_delta(state, p.updates);
    StepOutcome o;
    o.kind = StepOutcome::Kind::Next;
    o.proposed = std::move(p.updates);
    o.delta = d.updates;
    o.next = apply_updates(state, d.updates);
    return o;
}

enum class RunOutcome { Terminal, Clash, Hang, Stutter, StepLimit };

inline std::string to_string(RunOutcome o) {
    switch (o) {
        case RunOutcome::Terminal: return "terminal";
        case RunOutcome::Clash: return "clash";
        case RunOutcome::Hang: return "hang";
        case RunOutcome::Stutter: return "stutter";
        case RunOutcome::StepLimit: return "step-limit";
    }
    return "?";
}

struct TraceStep {
    UpdateSet proposed;
    UpdateSet delta;
    State state;  // state after applying delta
    // Condition profile: each condition term of the program (pre-order)
    // with its value in the pre-step state.
    std::vector<std::pair<Term, std::string>> conditions;
};

struct Trace {
    State initial;
    std::vector<TraceStep> steps;
    RunOutcome outcome = RunOutcome::StepLimit;
    ClashReport clash;  // outcome == Clash
    Term hang_term;     // outcome == Hang

    const State& final_state() const { return steps.empty() ? initial : steps.back().state; }
};

namespace detail {

inline void collect_conditions(const StmtPtr& s, std::vector<Term>& out) {
    switch (s->kind()) {
        case Stmt::Kind::Assign: break;
        case Stmt::Kind::If:
            out.push_back(s->condition());
            collect_conditions(s->then_branch(), out);
            if (s->else_branch()) collect_conditions(s->else_branch(), out);
            break;
        case Stmt::Kind::Par:
            for (const auto& c : s->children()) collect_conditions(c, out);
            break;
    }
}

}  // namespace detail

/// All condition terms of a program in pre-order.
inline std::vector<Term> program_conditions(const Program& program) {
    std::vector<Term> out;
    detail::collect_conditions(program, out);
    return out;
}

/// Iterates the step function up to max_steps. A step whose delta-plus is
/// nonempty but entirely trivial repeats the state forever; it is reported
/// as a stutter immediately.
inline Trace run(const Program& program, const State& initial, size_t max_steps) {
    Trace trace;
    trace.initial = initial;
    std::vector<Term> conds = program_conditions(program);
    const State* current = &trace.initial;
    for (size_t i = 0; i < max_steps; ++i) {
        StepOutcome o = step(program, *current);
        switch (o.kind) {
            case StepOutcome::Kind::Terminal:
                trace.outcome = RunOutcome::Terminal;
                return trace;
            case StepOutcome::Kind::Clash:
                trace.outcome = RunOutcome::Clash;
                trace.clash = std::move(o.clash);
                return trace;
            case StepOutcome::Kind::Hang:
                trace.outcome = RunOutcome::Hang;
                trace.hang_term = std::move(o.hang_term);
                return trace;
            case StepOutcome::Kind::Next: {
                TraceStep ts;
                for (const auto& c : conds) {
                    EvalResult r = eval_term(*current, c);
                    ts.conditions.emplace_back(c, r.hang ? "hang" : r.value.str());
                }
                bool stutter = o.delta.empty();
                ts.proposed = std::move(o.proposed);
                ts.delta = std::move(o.delta);
                ts.state = std::move(o.next);
                trace.steps.push_back(std::move(ts));
                if (stutter) {
                    trace.outcome = RunOutcome::Stutter;
                    return trace;
                }
                current = &trace.steps.back().state;
                break;
            }
        }
    }
    trace.outcome = RunOutcome::StepLimit;
    return trace;
}

// ---------------------------------------------------------------------------
// Trace serialization (deterministic; locations sorted by the update-set
// ordering)

inline std::string serialize_trace(const Trace& trace) {
    std::ostringstream out;
    auto put_set = [&](const char* label, const UpdateSet& s) {
        out << "  " << label << " {";
        bool first = true;
        for (const auto& u : s) {
            out << (first ? " " : ", ") << u.str();
            first = false;
        }
        out << (first ? "}" : " }") << "\n";
    };
    for (size_t i = 0; i < trace.steps.size(); ++i) {
        const TraceStep& ts = trace.steps[i];
        out << "step " << (i + 1) << "\n";
        for (const auto& [cond, value] : ts.conditions)
            out << "  cond " << cond.str() << " -> " << value << "\n";
        put_set("delta+", ts.proposed);
        put_set("delta", ts.delta);
        out << "  changed {";
        bool first = true;
        for (const auto& u : ts.delta) {
            out << (first ? " " : ", ") << u.location.str();
            first = false;
        }
        out << (first ? "}" : " }") << "\n";
    }
    out << "outcome " << to_string(trace.outcome);
    if (trace.outcome == RunOutcome::Clash) out << " " << trace.clash.str();
    if (trace.outcome == RunOutcome::Hang) out << " at " << trace.hang_term.str();
    out << "\n";
    out << "final\n";
    std::istringstream fin(serialize_state(trace.final_state()));
    std::string line;
    while (std::getline(fin, line)) out << "  " << line << "\n";
    return out.str();
}

}  // namespace seqasm

#endif
