#include "catch2/catch_amalgamated.hpp"

#include "seqasm/parser.hpp"
#include "seqasm/random.hpp"

#include "helpers.hpp"

using namespace seqasm;
using testutil::parse_cond_text;
using testutil::parse_program_ok;
using testutil::parse_term_text;

TEST_CASE("sort program parses to the documented shape") {
    Program p = testutil::sort_program();
    REQUIRE(p->kind() == Stmt::Kind::If);
    CHECK(p->condition() == parse_cond_text("j = n"));

    // then: the inner one-branch if advancing i and j.
    REQUIRE(p->then_branch()->kind() == Stmt::Kind::If);
    CHECK(p->then_branch()->condition() == parse_cond_text("add(i, 1) != n"));
    REQUIRE_FALSE(p->then_branch()->else_branch());
    const StmtPtr& adv = p->then_branch()->then_branch();
    REQUIRE(adv->kind() == Stmt::Kind::Par);
    REQUIRE(adv->children().size() == 2);

    // else: conditional swap in parallel with j := j + 1.
    REQUIRE(p->else_branch());
    REQUIRE(p->else_branch()->kind() == Stmt::Kind::Par);
    REQUIRE(p->else_branch()->children().size() == 2);
    const StmtPtr& swap_if = p->else_branch()->children()[0];
    REQUIRE(swap_if->kind() == Stmt::Kind::If);
    CHECK(swap_if->condition() == parse_term_text("gt(F(i), F(j))"));
    const StmtPtr& bump = p->else_branch()->children()[1];
    REQUIRE(bump->kind() == Stmt::Kind::Assign);
    CHECK(bump->symbol() == "j");
    CHECK(bump->rhs() == parse_term_text("add(j, 1)"));
}

TEST_CASE("boolean connectives have or < and < not precedence") {
    Program p = parse_program_ok("if x = 1 and not y = 2 or z = 3 then x := 1");
    Term expect = Term::app(
        "or", {Term::app("and", {parse_cond_text("x = 1"),
                                 Term::app("not", {parse_cond_text("y = 2")})}),
               parse_cond_text("z = 3")});
    CHECK(p->condition() == expect);
}

TEST_CASE("a bare term is its own condition") {
    Program p = parse_program_ok("if flag then x := 1");
    CHECK(p->condition() == Term::app("flag"));

    // Connectives also work applied prefix-style.
    Program q = parse_program_ok("if and(flag, gt(x, y)) then x := 1");
    CHECK(q->condition() == Term::app("and", {Term::app("flag"),
                                              parse_term_text("gt(x, y)")}));
}

TEST_CASE("singleton do-blocks collapse to their statement") {
    Program a = parse_program_ok("do { x := 1 }");
    Program b = parse_program_ok("x := 1");
    CHECK(stmt_equal(a, b));

    // The collapse also resolves the dangling else: braces around the
    // then-branch keep the else attached to the outer if.
    Program c = parse_program_ok(
        "if p then do { if q then x := 1 } else y := 2");
    REQUIRE(c->else_branch());
    REQUIRE(c->then_branch()->kind() == Stmt::Kind::If);
    CHECK_FALSE(c->then_branch()->else_branch());
}

TEST_CASE("comments, negatives, and rationals lex correctly") {
    Program p = parse_program_ok(
        "# sets x\n"
        "x := add(-3, 1/2)  # trailing note\n");
    REQUIRE(p->kind() == Stmt::Kind::Assign);
    REQUIRE(p->rhs().args().size() == 2);
    CHECK(p->rhs().args()[0].value() == Value::number(Rational{-3}));
    CHECK(p->rhs().args()[1].value() == Value::number(Rational{1, 2}));
}

TEST_CASE("syntax errors carry positions") {
    ParseResult<Program> bad = parse_program("if x = 1 then\n  x :=\n");
    REQUIRE_FALSE(bad.ok());
    REQUIRE(bad.diagnostics.size() == 1);
    CHECK(bad.diagnostics[0].code == "syntax");
    CHECK(bad.diagnostics[0].line == 3);

    ParseResult<Program> empty = parse_program("do { }");
    REQUIRE_FALSE(empty.ok());
    CHECK(empty.diagnostics[0].message.find("empty do-block") != std::string::npos);

    ParseResult<Program> lit = parse_program("1 := 2");
    REQUIRE_FALSE(lit.ok());
}

TEST_CASE("validation reports named diagnostics") {
    State st = testutil::sort_state_n2();

    CHECK(validate(testutil::sort_program(), st.vocabulary).empty());

    auto code_of = [&](const std::string& text) {
        Program p = parse_program_ok(text);
        std::vector<Diagnostic> ds = validate(p, st.vocabulary);
        REQUIRE_FALSE(ds.empty());
        return ds[0].code;
    };
    CHECK(code_of("n := 1") == "static-assignment");
    CHECK(code_of("w := 1") == "undeclared-symbol");
    CHECK(code_of("j := F(1, 2)") == "arity-mismatch");
    CHECK(code_of("F(i, j) := 0") == "arity-mismatch");
}

// ---------------------------------------------------------------------------
// parse . pretty_print = id, over random ASTs

namespace {

Term random_plain_term(Rng& rng, int depth) {
    static const std::vector<std::string> nullary = {"x", "y", "i", "j"};
    static const std::vector<std::string> unary = {"f", "g"};
    static const std::vector<std::string> binary = {"h", "add"};
    size_t roll = rng.below(depth <= 0 ? 2 : 4);
    switch (roll) {
        case 0:
            return Term::app(rng.pick(nullary));
        case 1:
            switch (rng.below(4)) {
                case 0: return Term::literal(Value::integer(rng.int_in(-9, 9)));
                case 1: return Term::literal(Value::number(Rational{rng.int_in(1, 9), 7}));
                case 2: return Term::literal(Value::boolean(rng.flip()));
                default: return Term::literal(Value::atom("a" + std::to_string(rng.below(3))));
            }
        case 2:
            return Term::app(rng.pick(unary), {random_plain_term(rng, depth - 1)});
        default:
            return Term::app(rng.pick(binary), {random_plain_term(rng, depth - 1),
                                                random_plain_term(rng, depth - 1)});
    }
}

Term random_condition(Rng& rng, int depth) {
    size_t roll = rng.below(depth <= 0 ? 3 : 6);
    switch (roll) {
        case 0:
            return random_plain_term(rng, 1);
        case 1:
            return Term::app("=", {random_plain_term(rng, 1), random_plain_term(rng, 1)});
        case 2:
            return Term::app("!=", {random_plain_term(rng, 1), random_plain_term(rng, 1)});
        case 3:
            return Term::app("not", {random_condition(rng, depth - 1)});
        default:
            return Term::app(roll == 4 ? "and" : "or",
                             {random_condition(rng, depth - 1), random_condition(rng, depth - 1)});
    }
}

StmtPtr random_stmt(Rng& rng, int depth) {
    static const std::vector<std::string> dyn0 = {"x", "y", "j"};
    size_t roll = rng.below(depth <= 0 ? 1 : 4);
    switch (roll) {
        case 0: {
            if (rng.flip())
                return Stmt::assign(rng.pick(dyn0), {}, random_plain_term(rng, 2));
            return Stmt::assign("F", {random_plain_term(rng, 1)}, random_plain_term(rng, 2));
        }
        case 1:
            return Stmt::if_(random_condition(rng, 2), random_stmt(rng, depth - 1));
        case 2:
            return Stmt::if_(random_condition(rng, 2), random_stmt(rng, depth - 1),
                             random_stmt(rng, depth - 1));
        default: {
            // The parser collapses singleton blocks, so emit two or more.
            std::vector<StmtPtr> kids;
            size_t n = 2 + rng.below(2);
            for (size_t k = 0; k < n; ++k) kids.push_back(random_stmt(rng, depth - 1));
            return Stmt::par(std::move(kids));
        }
    }
}

}  // namespace

TEST_CASE("pretty-printed programs reparse to the identical tree") {
    Rng rng(20240601ull);
    for (int trial = 0; trial < 300; ++trial) {
        Program p = random_stmt(rng, 3);
        std::string text = pretty_print(p);
        INFO(text);
        ParseResult<Program> back = parse_program(text);
        REQUIRE(back.ok());
        CHECK(stmt_equal(*back.value, p));
        // Printing is a normal form: it is stable under reparsing.
        CHECK(pretty_print(*back.value) == text);
    }
}

TEST_CASE("corpus programs survive a print/reparse cycle") {
    for (const char* name : {"sort/sort.prog", "bisection/bisect.prog",
                             "bootstrap-add/add.prog", "bootstrap-gt/gt.prog"}) {
        Program p = load_program(testutil::corpus_root() / name);
        ParseResult<Program> back = parse_program(pretty_print(p));
        REQUIRE(back.ok());
        CHECK(stmt_equal(*back.value, p));
    }
}

TEST_CASE("state files parse and reserialize byte-identically") {
    for (const char* name :
         {"sort/n2.st", "sort/n4.st", "sort/effective.st", "bisection/unit.st",
          "bootstrap-add/template.st", "bootstrap-add/case.st"}) {
        std::string text = read_file(testutil::corpus_root() / name);
        ParseResult<State> st = parse_state(text);
        INFO(name);
        REQUIRE(st.ok());
        std::string canon = serialize_state(*st.value);
        ParseResult<State> again = parse_state(canon);
        REQUIRE(again.ok());
        CHECK(serialize_state(*again.value) == canon);
        CHECK(*again.value == *st.value);
    }
}

TEST_CASE("totality annotations round-trip through state files") {
    State st = testutil::sort_state_n2();
    CHECK(st.vocabulary.at("F").totality == Totality::UndefReturning);
    State eff = load_state(testutil::corpus_root() / "sort" / "effective.st");
    CHECK(eff.vocabulary.at("c").totality == Totality::StrictlyPartial);
    std::string canon = serialize_state(eff);
    CHECK(canon.find("strictly_partial") != std::string::npos);
    ParseResult<State> back = parse_state(canon);
    REQUIRE(back.ok());
    CHECK(back.value->vocabulary.at("c").totality == Totality::StrictlyPartial);
}

TEST_CASE("malformed state files are rejected with diagnostics") {
    CHECK_FALSE(parse_state("domain numbers\n").ok());
    CHECK_FALSE(parse_state("symbol x 0 dynamic total\ndefault 0\n").ok());
    ParseResult<State> bad_builtin =
        parse_state("domain integers\nsymbol p 1 static total\nbuiltin frobnicate\n");
    REQUIRE_FALSE(bad_builtin.ok());
    CHECK(bad_builtin.diagnostics[0].message.find("frobnicate") != std::string::npos);
}
