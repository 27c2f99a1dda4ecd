#include "catch2/catch_amalgamated.hpp"

#include <algorithm>

#include "seqasm/analysis.hpp"
#include "seqasm/corpus.hpp"
#include "seqasm/effectiveness.hpp"

#include "helpers.hpp"

using namespace seqasm;
using testutil::parse_term_text;

namespace {

State effective_state() {
    return load_state(testutil::corpus_root() / "sort" / "effective.st");
}

ConstructorVocabulary zigzag_ctors() {
    return {{"zero", "true", "false", "undef", "c"}};
}

/// Registry with the addition and order witnesses, plus the sampled
/// points both get validated on.
std::pair<WitnessRegistry, std::map<std::string, std::vector<std::vector<Value>>>>
load_witnesses(long long lo = -5, long long hi = 5) {
    WitnessRegistry reg;
    auto [addp, adds] = load_computation_spec(testutil::corpus_root() / "bootstrap-add" / "add.spec");
    auto [gtp, gts] = load_computation_spec(testutil::corpus_root() / "bootstrap-gt" / "gt.spec");
    reg["add"] = {addp, adds};
    reg["gt"] = {gtp, gts};
    std::vector<std::vector<Value>> grid;
    for (long long a = lo; a <= hi; ++a)
        for (long long b = lo; b <= hi; ++b)
            grid.push_back({Value::integer(a), Value::integer(b)});
    return {std::move(reg), {{"add", grid}, {"gt", grid}}};
}

}  // namespace

TEST_CASE("constructor terms enumerate depth-major") {
    Vocabulary vocab;
    vocab.declare({"eps", 0, SymbolKind::Static, Totality::Total});
    vocab.declare({"s0", 1, SymbolKind::Static, Totality::Total});
    vocab.declare({"s1", 1, SymbolKind::Static, Totality::Total});
    ConstructorVocabulary c{{"eps", "s0", "s1"}};

    std::vector<Term> d2 = enumerate_constructor_terms(vocab, c, 2);
    std::vector<std::string> got;
    for (const auto& t : d2) got.push_back(t.str());
    std::vector<std::string> expect = {"eps",        "s0(eps)",     "s1(eps)",    "s0(s0(eps))",
                                       "s0(s1(eps))", "s1(s0(eps))", "s1(s1(eps))"};
    CHECK(got == expect);

    // Depth bound 0 keeps only the constants; the enumeration is a prefix
    // of every deeper one.
    std::vector<Term> d1 = enumerate_constructor_terms(vocab, c, 1);
    CHECK(d1.size() == 3);
    CHECK(std::equal(d1.begin(), d1.end(), d2.begin()));
}

TEST_CASE("the zig-zag constructor names each integer exactly once") {
    State st = effective_state();
    FreenessReport r = check_free_construction(st, zigzag_ctors(), 6);
    CHECK(r.free_up_to_bound());
    // 4 constants plus one unary constructor: 4 + 6 * 4 terms in all.
    CHECK(r.terms_checked == 28);
    // Only the chain over zero survives; c applied to a boolean or to
    // undef hangs, and hangs propagate upward.
    CHECK(r.junk_terms == 18);

    // The chain walks 0, -1, 1, -2, 2, -3, 3.
    std::vector<long long> expect = {0, -1, 1, -2, 2, -3, 3};
    Term t = Term::app("zero");
    for (size_t k = 0; k < expect.size(); ++k) {
        EvalResult e = eval_term(st, t);
        REQUIRE_FALSE(e.hang);
        CHECK(e.value == Value::integer(expect[k]));
        t = Term::app("c", {t});
    }
}

TEST_CASE("a collapsing constructor is reported as a duplicate name") {
    State st = effective_state();
    // Negation fixes 0, so c(zero) collides with zero.
    st.interpretations["c"] = Interpretation::builtin_op("neg");
    FreenessReport r = check_free_construction(st, zigzag_ctors(), 3);
    CHECK_FALSE(r.free_up_to_bound());
    REQUIRE_FALSE(r.duplicate_names.empty());
    CHECK(r.duplicate_names[0].first == Value::integer(0));
    const auto& ts = r.duplicate_names[0].second;
    CHECK(std::find(ts.begin(), ts.end(), Term::app("zero")) != ts.end());
    CHECK(std::find(ts.begin(), ts.end(), Term::app("c", {Term::app("zero")})) != ts.end());
}

TEST_CASE("make_input_state touches exactly the input locations") {
    auto [prog, spec] =
        load_computation_spec(testutil::corpus_root() / "bootstrap-add" / "add.spec");
    (void)prog;
    State st = make_input_state(spec, {Value::integer(2), Value::integer(-1)});
    bool outside = false;
    CHECK(lookup(st, "a", {}, outside) == Value::integer(2));
    CHECK(lookup(st, "b", {}, outside) == Value::integer(-1));
    // Everything else still reads as in the template.
    for (const auto& [name, sym] : st.vocabulary.symbols()) {
        if (name == "a" || name == "b" || sym.arity != 0 || is_reserved_symbol(name)) continue;
        CHECK(lookup(st, name, {}, outside) ==
              lookup(spec.template_state, name, {}, outside));
    }
    CHECK_THROWS_AS(make_input_state(spec, {Value::integer(1)}), std::invalid_argument);
}

TEST_CASE("compute_function runs a program as a partial function") {
    // The sort program as a two-argument minimum.
    FunctionComputationSpec spec;
    spec.template_state = testutil::sort_state_n2();
    spec.inputs = {parse_term_text("F(0)"), parse_term_text("F(1)")};
    spec.output = parse_term_text("F(0)");
    spec.step_budget = 100;
    Program sort = testutil::sort_program();
    for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b) {
            ComputationResult r =
                compute_function(sort, spec, {Value::integer(a), Value::integer(b)});
            REQUIRE(r.kind == ComputationResult::Kind::Value);
            CHECK(r.value == Value::integer(std::min(a, b)));
        }
}

TEST_CASE("divergence and clash are surfaced distinctly") {
    FunctionComputationSpec spec;
    spec.template_state = load_state(testutil::corpus_root() / "loop" / "x.st");
    spec.output = parse_term_text("x");
    spec.step_budget = 50;
    ComputationResult stut = compute_function(
        load_program(testutil::corpus_root() / "loop" / "loop.prog"), spec, {});
    CHECK(stut.kind == ComputationResult::Kind::Divergent);
    ComputationResult cl = compute_function(
        load_program(testutil::corpus_root() / "clash" / "clash.prog"), spec, {});
    CHECK(cl.kind == ComputationResult::Kind::Clash);
}

TEST_CASE("the witness machines compute addition and order from the constructors") {
    auto [reg, samples] = load_witnesses(-5, 5);
    // Spot-check directly against the arithmetic, independent of any
    // state's builtin tables.
    for (auto [a, b] : std::vector<std::pair<long long, long long>>{
             {0, 0}, {2, -1}, {-1, 3}, {-4, -5}, {5, 5}}) {
        ComputationResult sum = compute_function(reg["add"].program, reg["add"].spec,
                                                 {Value::integer(a), Value::integer(b)});
        REQUIRE(sum.kind == ComputationResult::Kind::Value);
        CHECK(sum.value == Value::integer(a + b));
        ComputationResult ord = compute_function(reg["gt"].program, reg["gt"].spec,
                                                 {Value::integer(a), Value::integer(b)});
        REQUIRE(ord.kind == ComputationResult::Kind::Value);
        CHECK(ord.value == Value::boolean(a > b));
    }
    // The witness programs only ever mention the constructors.
    for (const char* name : {"add", "gt"}) {
        TermSet terms = critical_terms(reg[name].program);
        for (const auto& t : terms)
            if (!t.is_literal()) CHECK(t.symbol() != std::string(name));
    }
}

TEST_CASE("the sort initial state is effective with bootstrapped add and gt") {
    auto [reg, samples] = load_witnesses();
    EffectivenessReport r =
        check_effective_state(effective_state(), zigzag_ctors(), 6, reg, samples);
    INFO(r.str());
    CHECK(r.pass);
    CHECK(r.witness_points == 2 * 11 * 11);
}

TEST_CASE("an unregistered oracle symbol fails by name") {
    auto [reg, samples] = load_witnesses();
    reg.erase("gt");
    samples.erase("gt");
    EffectivenessReport r =
        check_effective_state(effective_state(), zigzag_ctors(), 6, reg, samples);
    CHECK_FALSE(r.pass);
    bool named = false;
    for (const auto& [sym, why] : r.offending)
        if (sym == "gt" && why.find("witness") != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("a wrong witness is caught point-wise") {
    auto [reg, samples] = load_witnesses(-2, 2);
    // Swap the programs: the order machine cannot compute addition.
    std::swap(reg["add"].program, reg["gt"].program);
    EffectivenessReport r =
        check_effective_state(effective_state(), zigzag_ctors(), 6, reg, samples);
    CHECK_FALSE(r.pass);
    bool disagreed = false;
    for (const auto& [sym, why] : r.offending)
        if (why.find("disagrees") != std::string::npos) disagreed = true;
    CHECK(disagreed);
}
