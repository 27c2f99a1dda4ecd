#include <catch2/catch_amalgamated.hpp>

#include "seqasm/random.hpp"
#include "seqasm/semantics.hpp"
#include "seqasm/state.hpp"

#include "helpers.hpp"

using namespace seqasm;
using testutil::parse_cond_text;
using testutil::parse_term_text;

TEST_CASE("rational arithmetic stays exact and normalized") {
    Rational half{1, 2};
    Rational third{2, 6};
    CHECK(third == Rational(1, 3));
    CHECK((half + third) == Rational(5, 6));
    CHECK((half - half) == Rational(0));
    CHECK(Rational(-3, -6) == half);
    CHECK(Rational(6, 4).str() == "3/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("value ordering is total across kinds") {
    std::vector<Value> vs = {Value::undef(), Value::boolean(false), Value::boolean(true),
                             Value::integer(-1), Value::integer(0), Value::number({1, 2}),
                             Value::atom("a"), Value::ctor("c", {Value::integer(0)})};
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = 0; j < vs.size(); ++j) {
            if (i == j) CHECK(!(vs[i] < vs[j]));
            else CHECK((vs[i] < vs[j]) != (vs[j] < vs[i]));
        }
}

TEST_CASE("eval_term on the worked sort state") {
    State x = testutil::sort_state_n2();

    CHECK(eval_term(x, parse_term_text("0")).value == Value::integer(0));
    CHECK(eval_term(x, parse_term_text("F(i)")).value == Value::integer(1));
    CHECK(eval_term(x, parse_term_text("F(5)")).value == Value::undef());
    // Equality is total on undef.
    CHECK(eval_term(x, parse_cond_text("F(5) = undef")).value == Value::boolean(true));
    // Every other symbol is strict in undef.
    CHECK(eval_term(x, parse_term_text("add(F(5), 1)")).value == Value::undef());
    CHECK(eval_term(x, parse_term_text("gt(F(0), F(1))")).value == Value::boolean(true));
}

TEST_CASE("evaluation is deterministic") {
    State x = testutil::sort_state({3, 1, 2});
    Term t = parse_term_text("add(F(i), F(j))");
    EvalResult a = eval_term(x, t);
    EvalResult b = eval_term(x, t);
    CHECK(a.value == b.value);
    CHECK(a.hang == b.hang);
}

TEST_CASE("strictly-partial symbols hang outside their table") {
    State x = testutil::sort_state_n2();
    Symbol part{"part", 1, SymbolKind::Static, Totality::StrictlyPartial};
    x.vocabulary.declare(part);
    Interpretation in = Interpretation::table(Value::undef());
    in.entries[{Value::integer(0)}] = Value::integer(7);
    // A strictly-partial table is defined exactly on its explicit entries.
    x.interpretations["part"] = std::move(in);

    CHECK(eval_term(x, parse_term_text("part(0)")).value == Value::integer(7));
    EvalResult r = eval_term(x, parse_term_text("part(1)"));
    CHECK(r.hang);
    CHECK(r.hang_term == parse_term_text("part(1)"));
    // The hang propagates through everything, equality included.
    CHECK(eval_term(x, parse_cond_text("part(1) = undef")).hang);
}

TEST_CASE("apply_updates follows the worked trace") {
    State x = testutil::sort_state_n2();

    SECTION("empty delta is the identity") {
        CHECK(apply_updates(x, {}) == x);
    }

    UpdateSet d1 = {{{"F", {Value::integer(0)}}, Value::integer(0)},
                    {{"F", {Value::integer(1)}}, Value::integer(1)},
                    {{"j", {}}, Value::integer(2)}};
    State x1 = apply_updates(x, d1);
    CHECK(testutil::final_int(x1, "i") == Value::integer(0));
    CHECK(testutil::final_int(x1, "j") == Value::integer(2));
    CHECK(eval_term(x1, parse_term_text("F(0)")).value == Value::integer(0));
    CHECK(eval_term(x1, parse_term_text("F(1)")).value == Value::integer(1));
    CHECK(x.domain == x1.domain);
    // Input state untouched.
    CHECK(testutil::final_int(x, "j") == Value::integer(1));

    State x2 = apply_updates(x1, {{{"i", {}}, Value::integer(1)}});
    CHECK(testutil::final_int(x2, "i") == Value::integer(1));
    CHECK(testutil::final_int(x2, "j") == Value::integer(2));

    SECTION("conflicting duplicate updates are an internal error") {
        UpdateSet bad = {{{"x", {}}, Value::integer(1)}, {{"x", {}}, Value::integer(2)}};
        CHECK_THROWS_AS(apply_updates(x, bad), std::logic_error);
    }
}

TEST_CASE("apply_updates changes exactly the listed locations") {
    State x = testutil::sort_state({5, 2, 9, 1});
    UpdateSet d = {{{"F", {Value::integer(2)}}, Value::integer(0)}, {{"j", {}}, Value::integer(3)}};
    State y = apply_updates(x, d);
    for (const auto& [name, in] : x.interpretations) {
        if (in.kind != Interpretation::Kind::Table) continue;
        const Interpretation& out = y.interp(name);
        // Diff the union of keys on both sides.
        std::set<std::vector<Value>> keys;
        for (const auto& [k, v] : in.entries) { (void)v; keys.insert(k); }
        for (const auto& [k, v] : out.entries) { (void)v; keys.insert(k); }
        for (const auto& k : keys) {
            bool outside = false;
            Value before = lookup(x, name, k, outside);
            Value after = lookup(y, name, k, outside);
            bool listed = d.count({{name, k}, after}) != 0;
            if (before == after) continue;
            CHECK(listed);
        }
    }
}

TEST_CASE("derive_delta drops trivial updates and flags terminal states") {
    State x = testutil::sort_state_n2();

    CHECK(derive_delta(x, {}).is_terminal());

    // In X' (j = 2 already), the proposed j update is trivial.
    State x1 = apply_updates(x, {{{"F", {Value::integer(0)}}, Value::integer(0)},
                                 {{"F", {Value::integer(1)}}, Value::integer(1)},
                                 {{"j", {}}, Value::integer(2)}});
    UpdateSet proposed = {{{"i", {}}, Value::integer(1)}, {{"j", {}}, Value::integer(2)}};
    UpdateSetResult d = derive_delta(x1, proposed);
    CHECK(d.kind == UpdateSetResult::Kind::Delta);
    CHECK(d.updates == UpdateSet{{{"i", {}}, Value::integer(1)}});

    // All-trivial proposals make an empty delta, not a terminal marker.
    UpdateSetResult stutter = derive_delta(x, {{{"j", {}}, Value::integer(1)}});
    CHECK(stutter.kind == UpdateSetResult::Kind::Delta);
    CHECK(stutter.updates.empty());
}

TEST_CASE("states_agree_on compares term values") {
    State x = testutil::sort_state_n2();
    TermSet t = {parse_term_text("j"), parse_term_text("F(i)")};
    CHECK(states_agree_on(x, x, t));

    State y = apply_updates(x, {{{"j", {}}, Value::integer(2)}});
    CHECK(!states_agree_on(x, y, t));
    CHECK(states_agree_on(x, y, {parse_term_text("F(i)")}));
}

TEST_CASE("identity isomorphism is observationally inert") {
    State x = testutil::sort_state_n2();
    State y = apply_isomorphism(x, Bijection{});
    CHECK(x == y);
}

TEST_CASE("bijections must fix booleans and undef and be injective") {
    std::map<Value, Value> moves_bool{{Value::boolean(true), Value::integer(1)}};
    CHECK_THROWS_AS(Bijection(moves_bool), std::invalid_argument);
    std::map<Value, Value> not_injective{{Value::integer(1), Value::integer(3)},
                                         {Value::integer(2), Value::integer(3)}};
    CHECK_THROWS_AS(Bijection(not_injective), std::invalid_argument);
}

TEST_CASE("value relabeling transports F's entries") {
    State x = testutil::sort_state_n2();
    // Shift the stored values by 1000; indices stay put.
    Bijection zeta({{Value::integer(0), Value::integer(1000)},
                    {Value::integer(1), Value::integer(1001)}});
    State y = apply_isomorphism(x, zeta);
    CHECK(eval_term(y, parse_term_text("F(1000)")).value == Value::integer(1001));
    // i and j moved too: they hold 0 and 1, which the bijection renames.
    CHECK(testutil::final_int(y, "i") == Value::integer(1000));
}

TEST_CASE("isomorphism transport of term values") {
    // For >= 100 random (state, bijection, term) triples, evaluating in
    // the transported state matches transporting the evaluation.
    Rng rng(20240817);
    std::vector<Term> probes = {parse_term_text("F(i)"), parse_term_text("j"),
                                parse_term_text("F(j)"), parse_term_text("n"),
                                parse_cond_text("j = n"), parse_term_text("F(3)")};
    size_t checked = 0;
    for (size_t trial = 0; trial < 120; ++trial) {
        std::vector<long long> values;
        size_t n = 1 + rng.below(5);
        for (size_t k = 0; k < n; ++k) values.push_back(rng.int_in(-9, 9));
        State x = testutil::sort_state(values);
        // Literals in the probe terms denote rigidly; the bijection must
        // fix them (here: 0..5 used as indices and the literal 3).
        std::set<Value> fixed;
        for (const auto& t : probes) t.collect_literal_values(fixed);
        std::vector<Value> pool;
        for (const auto& v : value_pool(x))
            if (!fixed.count(v)) pool.push_back(v);
        Bijection zeta = random_bijection(pool, rng);
        State y = apply_isomorphism(x, zeta);
        for (const auto& t : probes) {
            EvalResult rx = eval_term(x, t);
            EvalResult ry = eval_term(y, t);
            REQUIRE(!rx.hang);
            REQUIRE(!ry.hang);
            // Terms' argument values move under zeta; transport the whole
            // term by relabeling literals is not available, so restrict to
            // probes whose arguments are dynamic locations: the law is
            // [[t]]_zetaX = zeta([[t]]_X) for terms over relabeled slices.
            CHECK(ry.value == zeta.apply(rx.value));
            ++checked;
        }
    }
    CHECK(checked >= 100);
}

TEST_CASE("serialization round-trips and is canonical") {
    Rng rng(7);
    for (size_t trial = 0; trial < 100; ++trial) {
        std::vector<long long> values;
        size_t n = 1 + rng.below(6);
        for (size_t k = 0; k < n; ++k) values.push_back(rng.int_in(-20, 20));
        State x = perturb(testutil::sort_state(values), rng, rng.below(4));
        std::string text = serialize_state(x);
        auto parsed = parse_state(text);
        REQUIRE(parsed.ok());
        CHECK(*parsed.value == x);
        // Canonical: a second serialization is byte-identical.
        CHECK(serialize_state(*parsed.value) == text);
    }
}

TEST_CASE("fixpoint states re-apply to themselves") {
    State x = testutil::sort_state({1, 2});
    UpdateSetResult d = derive_delta(x, {{{"i", {}}, Value::integer(0)}});
    REQUIRE(d.kind == UpdateSetResult::Kind::Delta);
    REQUIRE(d.updates.empty());
    CHECK(apply_updates(x, d.updates) == x);
}
