#ifndef SEQASM_TESTS_HELPERS_HPP
#define SEQASM_TESTS_HELPERS_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "seqasm/corpus.hpp"
#include "seqasm/parser.hpp"

namespace seqasm::testutil {

inline std::filesystem::path corpus_root() { return SEQASM_CORPUS_DIR; }

inline Program sort_program() { return load_program(corpus_root() / "sort" / "sort.prog"); }

/// The worked two-element state: n=2, i=0, j=1, F(0)=1, F(1)=0.
inline State sort_state_n2() { return load_state(corpus_root() / "sort" / "n2.st"); }

/// Sort initial state for an arbitrary array: i=0, j=1, F holding the
/// values, undef elsewhere.
inline State sort_state(const std::vector<long long>& values) {
    State st = sort_state_n2();
    st.interpretations["n"] = Interpretation::constant(Value::integer(values.size()));
    Interpretation f = Interpretation::table(Value::undef());
    for (size_t k = 0; k < values.size(); ++k)
        f.entries[{Value::integer(k)}] = Value::integer(values[k]);
    st.interpretations["F"] = std::move(f);
    st.interpretations["i"] = Interpretation::constant(Value::integer(0));
    st.interpretations["j"] = Interpretation::constant(Value::integer(1));
    return st;
}

inline Program parse_program_ok(const std::string& text) {
    auto r = parse_program(text);
    if (!r.ok()) {
        std::string msg = "program parse failed";
        for (const auto& d : r.diagnostics) msg += ": " + d.str();
        throw std::runtime_error(msg);
    }
    return *r.value;
}

inline Term parse_term_text(const std::string& text) {
    detail::Parser p(detail::tokenize(text));
    Term t = p.parse_term();
    p.expect_end();
    return t;
}

inline Term parse_cond_text(const std::string& text) {
    detail::Parser p(detail::tokenize(text));
    Term t = p.parse_bexpr();
    p.expect_end();
    return t;
}

inline Value final_int(const State& st, const std::string& symbol) {
    bool outside = false;
    return lookup(st, symbol, {}, outside);
}

}  // namespace seqasm::testutil

#endif
