// Command-line front end: run/trace/validate programs, extract critical
// terms, property-check the postulates, synthesize from an oracle, check
// effectiveness, and compute functions from spec files.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "seqasm/analysis.hpp"
#include "seqasm/corpus.hpp"
#include "seqasm/effectiveness.hpp"
#include "seqasm/random.hpp"

using namespace seqasm;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kClash = 2;
constexpr int kDivergent = 3;
constexpr int kStepLimit = 4;
constexpr int kInvalid = 5;
constexpr int kCheckFailed = 6;

int outcome_exit(RunOutcome o) {
    switch (o) {
        case RunOutcome::Terminal: return kOk;
        case RunOutcome::Clash: return kClash;
        case RunOutcome::Stutter: return kDivergent;
        case RunOutcome::StepLimit: return kStepLimit;
        case RunOutcome::Hang: return kInvalid;
    }
    return kInvalid;
}

int validate_or_report(const Program& p, const State& st) {
    std::vector<Diagnostic> ds = validate(p, st.vocabulary);
    for (const auto& d : ds) std::cerr << d.str() << "\n";
    return ds.empty() ? kOk : kInvalid;
}

Value parse_value_text(const std::string& text) {
    detail::Parser p(detail::tokenize(text));
    Value v = detail::parse_value(p);
    p.expect_end();
    return v;
}

/// Pair sampler for the bounded-exploration suite: a perturbed base state
/// and a further mutation of it that preserves the given terms.
StatePairSampler make_pair_sampler(const State& base, const TermSet& terms,
                                   std::shared_ptr<Rng> rng) {
    return [base, terms, rng](size_t) {
        State x = perturb(base, *rng, rng->below(3));
        State y = mutate_preserving(x, terms, *rng);
        return std::make_pair(x, y);
    };
}

/// Bijection sampler over the state's value pool, fixing every value the
/// program names literally (literals denote rigidly).
BijectionSampler make_bijection_sampler(const Program& p, const State& st,
                                        std::shared_ptr<Rng> rng) {
    std::set<Value> fixed = program_literal_values(p);
    std::vector<Value> pool;
    for (const Value& v : value_pool(st))
        if (!fixed.count(v)) pool.push_back(v);
    return [pool, rng](size_t) { return random_bijection(pool, *rng); };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sequential abstract state machine toolkit"};
    app.require_subcommand(1);

    std::string prog_path, state_path, out_path, format = "plain", spec_path, corpus_root;
    size_t max_steps = 1000, trials = 500, iso_trials = 100, samples = 50;
    unsigned depth = 6;
    uint64_t seed = 20240601;
    std::vector<std::string> ctor_names, witness_args, value_args;
    long long grid_lo = -5, grid_hi = 5;

    auto* run_cmd = app.add_subcommand("run", "execute a program to quiescence");
    run_cmd->add_option("program", prog_path)->required();
    run_cmd->add_option("state", state_path)->required();
    run_cmd->add_option("--max-steps", max_steps);
    run_cmd->add_option("--format", format)->check(CLI::IsMember({"plain", "structured"}));

    auto* trace_cmd = app.add_subcommand("trace", "emit the full run trace");
    trace_cmd->add_option("program", prog_path)->required();
    trace_cmd->add_option("state", state_path)->required();
    trace_cmd->add_option("--max-steps", max_steps);
    trace_cmd->add_option("-o,--output", out_path);

    auto* validate_cmd = app.add_subcommand("validate", "check a program against a state's vocabulary");
    validate_cmd->add_option("program", prog_path)->required();
    validate_cmd->add_option("state", state_path)->required();

    auto* crit_cmd = app.add_subcommand("critical-terms", "print the critical terms, sorted");
    crit_cmd->add_option("program", prog_path)->required();

    auto* check_cmd = app.add_subcommand("check", "property-check suites");
    auto* post_cmd = check_cmd->add_subcommand("postulates",
                                               "bounded exploration + isomorphism respect");
    post_cmd->add_option("program", prog_path)->required();
    post_cmd->add_option("state", state_path)->required();
    post_cmd->add_option("--trials", trials);
    post_cmd->add_option("--iso-trials", iso_trials);
    post_cmd->add_option("--seed", seed);

    auto* synth_cmd = app.add_subcommand("synthesize",
                                         "rebuild an equivalent program from the update oracle");
    synth_cmd->add_option("program", prog_path)->required();
    synth_cmd->add_option("state", state_path)->required();
    synth_cmd->add_option("--samples", samples);
    synth_cmd->add_option("--max-steps", max_steps);

    auto* eff_cmd = app.add_subcommand("effective", "constructor freeness + effectiveness report");
    eff_cmd->add_option("state", state_path)->required();
    eff_cmd->add_option("--constructors", ctor_names)->required()->delimiter(',');
    eff_cmd->add_option("--depth", depth);
    eff_cmd->add_option("--witness", witness_args, "name=spec-file")->delimiter(',');
    eff_cmd->add_option("--grid-lo", grid_lo);
    eff_cmd->add_option("--grid-hi", grid_hi);

    auto* compute_cmd = app.add_subcommand("compute", "run a function-computation spec");
    compute_cmd->add_option("spec", spec_path)->required();
    compute_cmd->add_option("values", value_args, "input values, one per argument");

    auto* corpus_cmd = app.add_subcommand("corpus", "golden-file maintenance");
    auto* regen_cmd = corpus_cmd->add_subcommand("regen", "rewrite all goldens");
    regen_cmd->add_option("root", corpus_root)->required();
    auto* verify_cmd = corpus_cmd->add_subcommand("verify", "check all goldens byte-for-byte");
    verify_cmd->add_option("root", corpus_root)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run_cmd) {
            Program p = load_program(prog_path);
            State st = load_state(state_path);
            if (int rc = validate_or_report(p, st)) return rc;
            Trace t = run(p, st, max_steps);
            std::cout << "outcome " << to_string(t.outcome) << "\n";
            if (t.outcome == RunOutcome::Clash) std::cout << "clash " << t.clash.str() << "\n";
            if (t.outcome == RunOutcome::Hang) std::cout << "hang at " << t.hang_term.str() << "\n";
            std::cout << "steps " << t.steps.size() << "\n";
            if (format == "structured") std::cout << serialize_state(t.final_state());
            else std::cout << "final\n" << serialize_state(t.final_state());
            return outcome_exit(t.outcome);
        }
        if (*trace_cmd) {
            Program p = load_program(prog_path);
            State st = load_state(state_path);
            if (int rc = validate_or_report(p, st)) return rc;
            Trace t = run(p, st, max_steps);
            std::string text = serialize_trace(t);
            if (out_path.empty()) std::cout << text;
            else write_file(out_path, text);
            return outcome_exit(t.outcome);
        }
        if (*validate_cmd) {
            Program p = load_program(prog_path);
            State st = load_state(state_path);
            int rc = validate_or_report(p, st);
            if (rc == kOk) std::cout << "ok\n";
            return rc;
        }
        if (*crit_cmd) {
            Program p = load_program(prog_path);
            for (const Term& t : ordered_terms(critical_terms(p))) std::cout << t.str() << "\n";
            return kOk;
        }
        if (*post_cmd) {
            Program p = load_program(prog_path);
            State st = load_state(state_path);
            if (int rc = validate_or_report(p, st)) return rc;
            TermSet terms = critical_terms(p);
            auto rng = std::make_shared<Rng>(seed);
            PropertyReport bounded = check_bounded_exploration(
                p, terms, make_pair_sampler(st, terms, rng), trials);
            std::cout << bounded.str();
            PropertyReport iso = check_isomorphism_respect(
                p, st, make_bijection_sampler(p, st, rng), iso_trials);
            std::cout << iso.str();
            return bounded.passed() && iso.passed() ? kOk : kCheckFailed;
        }
        if (*synth_cmd) {
            Program p = load_program(prog_path);
            State st = load_state(state_path);
            if (int rc = validate_or_report(p, st)) return rc;
            // Samples: the states encountered along the run, which cover
            // exactly the profiles this start state reaches.
            std::vector<State> pool{st};
            Trace t = run(p, st, max_steps);
            for (const auto& ts : t.steps) pool.push_back(ts.state);
            if (pool.size() > samples) pool.resize(samples);
            UpdateOracle oracle = [&p](const State& s) {
                ProposedResult r = proposed_updates(p, s);
                if (r.hang) throw std::runtime_error("oracle hangs at " + r.hang_term.str());
                if (r.updates.empty()) return UpdateSetResult::terminal();
                return UpdateSetResult::proposed(r.updates);
            };
            Program synth = synthesize_asm(oracle, critical_terms(p), pool);
            std::cout << pretty_print(synth);
            return kOk;
        }
        if (*eff_cmd) {
            State st = load_state(state_path);
            ConstructorVocabulary ctors{ctor_names};
            WitnessRegistry reg;
            std::map<std::string, std::vector<std::vector<Value>>> points;
            std::vector<std::vector<Value>> grid;
            for (long long a = grid_lo; a <= grid_hi; ++a)
                for (long long b = grid_lo; b <= grid_hi; ++b)
                    grid.push_back({Value::integer(a), Value::integer(b)});
            for (const std::string& w : witness_args) {
                size_t eq = w.find('=');
                if (eq == std::string::npos) {
                    std::cerr << "witness must be name=spec-file: " << w << "\n";
                    return kUsage;
                }
                std::string name = w.substr(0, eq);
                auto [wp, ws] = load_computation_spec(w.substr(eq + 1));
                reg[name] = {wp, ws};
                points[name] = grid;
            }
            EffectivenessReport r = check_effective_state(st, ctors, depth, reg, points);
            std::cout << r.str();
            return r.pass ? kOk : kCheckFailed;
        }
        if (*compute_cmd) {
            auto [p, spec] = load_computation_spec(spec_path);
            std::vector<Value> tuple;
            for (const std::string& v : value_args) tuple.push_back(parse_value_text(v));
            ComputationResult r = compute_function(p, spec, tuple);
            std::cout << r.str() << "\n";
            switch (r.kind) {
                case ComputationResult::Kind::Value: return kOk;
                case ComputationResult::Kind::Divergent: return kDivergent;
                case ComputationResult::Kind::Clash: return kClash;
                case ComputationResult::Kind::Hang: return kInvalid;
            }
            return kInvalid;
        }
        if (*regen_cmd) {
            for (const auto& e : corpus_list(corpus_root)) {
                regenerate_goldens(e);
                std::cout << e.name << " " << e.cases.size() << "\n";
            }
            return kOk;
        }
        if (*verify_cmd) {
            bool ok = true;
            for (const auto& e : corpus_list(corpus_root)) {
                for (const std::string& m : verify_goldens(e)) {
                    std::cerr << e.name << "/" << m << ": golden mismatch\n";
                    ok = false;
                }
            }
            std::cout << (ok ? "ok" : "mismatch") << "\n";
            return ok ? kOk : kCheckFailed;
        }
    } catch (const SynthesisError& e) {
        std::cerr << "synthesis error: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return kUsage;
}
