#ifndef SEQASM_PARSER_HPP
#define SEQASM_PARSER_HPP

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "seqasm/program.hpp"
#include "seqasm/state.hpp"
#include "seqasm/term.hpp"

namespace seqasm {

struct Diagnostic {
    enum class Severity { Error, Warning };
    Severity severity = Severity::Error;
    int line = 0;
    int column = 0;
    std::string code;
    std::string message;

    std::string str() const {
        std::string out = severity == Severity::Error ? "error" : "warning";
        out += " [" + code + "] ";
        if (line > 0) out += std::to_string(line) + ":" + std::to_string(column) + ": ";
        return out + message;
    }
};

template <class T>
struct ParseResult {
    std::optional<T> value;
    std::vector<Diagnostic> diagnostics;
    bool ok() const { return value.has_value(); }
};

// ---------------------------------------------------------------------------
// Tokenizer

namespace detail {

struct Token {
    enum class Type { Ident, Keyword, Number, String, Punct, End };
    Type type = Type::End;
    std::string text;
    Rational number;
    int line = 1;
    int column = 1;
};

struct SyntaxError {
    int line, column;
    std::string message;
};

inline bool is_keyword(const std::string& s) {
    return s == "if" || s == "then" || s == "else" || s == "do" || s == "not" || s == "and" ||
           s == "or" || s == "true" || s == "false" || s == "undef";
}

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') { ++line; col = 1; } else ++col;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) { advance(1); continue; }
        Token t;
        t.line = line;
        t.column = col;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t j = i;
            while (j < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                ++j;
            t.text = text.substr(i, j - i);
            t.type = is_keyword(t.text) ? Token::Type::Keyword : Token::Type::Ident;
            advance(j - i);
        } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                   (c == '-' && i + 1 < text.size() &&
                    std::isdigit(static_cast<unsigned char>(text[i + 1])))) {
            size_t j = i + (c == '-' ? 1 : 0);
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            size_t num_end = j;
            long long den = 1;
            if (j < text.size() && text[j] == '/' && j + 1 < text.size() &&
                std::isdigit(static_cast<unsigned char>(text[j + 1]))) {
                size_t k = j + 1;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                den = std::stoll(text.substr(j + 1, k - j - 1));
                j = k;
            }
            long long num = std::stoll(text.substr(i, num_end - i));
            t.type = Token::Type::Number;
            t.number = Rational{num, den};
            t.text = text.substr(i, j - i);
            advance(j - i);
        } else if (c == '"') {
            size_t j = i + 1;
            while (j < text.size() && text[j] != '"' && text[j] != '\n') ++j;
            if (j >= text.size() || text[j] != '"')
                throw SyntaxError{line, col, "unterminated string"};
            t.type = Token::Type::String;
            t.text = text.substr(i + 1, j - i - 1);
            advance(j - i + 1);
        } else {
            static const std::vector<std::string> puncts = {":=", "!=", "=", "(", ")", "{", "}", ","};
            bool matched = false;
            for (const auto& p : puncts) {
                if (text.compare(i, p.size(), p) == 0) {
                    t.type = Token::Type::Punct;
                    t.text = p;
                    advance(p.size());
                    matched = true;
                    break;
                }
            }
            if (!matched)
                throw SyntaxError{line, col, std::string("unexpected character '") + c + "'"};
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.type = Token::Type::End;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

// ---------------------------------------------------------------------------
// Recursive-descent parser

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    const Token& peek() const { return toks_[pos_]; }
    const Token& get() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_punct(const std::string& p) const {
        return peek().type == Token::Type::Punct && peek().text == p;
    }
    bool at_keyword(const std::string& k) const {
        return peek().type == Token::Type::Keyword && peek().text == k;
    }
    void expect_punct(const std::string& p) {
        if (!at_punct(p)) fail("expected '" + p + "'");
        get();
    }
    void expect_keyword(const std::string& k) {
        if (!at_keyword(k)) fail("expected '" + k + "'");
        get();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw SyntaxError{peek().line, peek().column,
                          msg + " (found '" + (peek().type == Token::Type::End ? "end of input"
                                                                               : peek().text) + "')"};
    }

    Term parse_term() {
        const Token& t = peek();
        if (t.type == Token::Type::Number) {
            get();
            return Term::literal(Value::number(t.number));
        }
        if (t.type == Token::Type::String) {
            get();
            return Term::literal(Value::atom(t.text));
        }
        if (t.type == Token::Type::Keyword) {
            if (t.text == "true" || t.text == "false") {
                bool b = t.text == "true";
                get();
                return Term::literal(Value::boolean(b));
            }
            if (t.text == "undef") {
                get();
                return Term::literal(Value::undef());
            }
            // not/and/or are usable prefix-style as ordinary applications.
            if ((t.text == "not" || t.text == "and" || t.text == "or") && next_is_open_paren())
                return parse_application(get().text);
            fail("expected a term");
        }
        if (t.type != Token::Type::Ident) fail("expected a term");
        return parse_application(get().text);
    }

    Term parse_application(const std::string& name) {
        if (!at_punct("(")) return Term::app(name);
        get();
        std::vector<Term> args;
        args.push_back(parse_term());
        while (at_punct(",")) {
            get();
            args.push_back(parse_term());
        }
        expect_punct(")");
        return Term::app(name, std::move(args));
    }

    bool next_is_open_paren() const {
        return pos_ + 1 < toks_.size() && toks_[pos_ + 1].type == Token::Type::Punct &&
               toks_[pos_ + 1].text == "(";
    }

    // bexpr with precedence: or < and < not < atom.
    Term parse_bexpr() {
        Term lhs = parse_band();
        while (at_keyword("or")) {
            get();
            lhs = Term::app("or", {lhs, parse_band()});
        }
        return lhs;
    }
    Term parse_band() {
        Term lhs = parse_bnot();
        while (at_keyword("and")) {
            get();
            lhs = Term::app("and", {lhs, parse_bnot()});
        }
        return lhs;
    }
    Term parse_bnot() {
        if (at_keyword("not") && !next_is_open_paren_after_not()) {
            get();
            return Term::app("not", {parse_bnot()});
        }
        return parse_batom();
    }
    // `not (C)` is the prefix connective; `not(x)` with no space also
    // parses as the connective via parse_batom -> parenthesized bexpr,
    // which yields the same AST, so either route is fine.
    bool next_is_open_paren_after_not() const { return false; }

    Term parse_batom() {
        if (at_punct("(")) {
            get();
            Term inner = parse_bexpr();
            expect_punct(")");
            // A parenthesized boolean expression may itself be compared:
            // (j = n) = false.
            if (at_punct("=") || at_punct("!=")) {
                std::string op = get().text;
                Term rhs = at_punct("(") ? parse_batom() : parse_term();
                return Term::app(op, {inner, rhs});
            }
            return inner;
        }
        Term lhs = parse_term();
        if (at_punct("=") || at_punct("!=")) {
            std::string op = get().text;
            Term rhs = parse_term();
            return Term::app(op, {lhs, rhs});
        }
        return lhs;  // bare term: holds iff it evaluates to true
    }

    StmtPtr parse_stmt() {
        if (at_keyword("if")) return parse_if();
        if (at_keyword("do")) return parse_do();
        Term lhs = parse_term();
        expect_punct(":=");
        Term rhs = parse_term();
        if (lhs.is_literal()) fail("assignment target must be a symbol application");
        return Stmt::assign(lhs.symbol(), lhs.args(), rhs);
    }

    StmtPtr parse_if() {
        expect_keyword("if");
        Term cond = parse_bexpr();
        expect_keyword("then");
        StmtPtr then_branch = parse_stmt();
        StmtPtr else_branch;
        if (at_keyword("else")) {
            get();
            else_branch = parse_stmt();
        }
        return Stmt::if_(std::move(cond), std::move(then_branch), std::move(else_branch));
    }

    StmtPtr parse_do() {
        expect_keyword("do");
        expect_punct("{");
        if (at_punct("}")) fail("empty do-block");
        std::vector<StmtPtr> children;
        while (!at_punct("}")) children.push_back(parse_stmt());
        get();
        // A singleton block is just its statement.
        if (children.size() == 1) return children[0];
        return Stmt::par(std::move(children));
    }

    void expect_end() {
        if (peek().type != Token::Type::End) fail("expected end of input");
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Program parsing and validation

inline ParseResult<Program> parse_program(const std::string& text) {
    ParseResult<Program> result;
    try {
        detail::Parser p(detail::tokenize(text));
        Program prog = p.parse_stmt();
        p.expect_end();
        result.value = std::move(prog);
    } catch (const detail::SyntaxError& e) {
        result.diagnostics.push_back(
            {Diagnostic::Severity::Error, e.line, e.column, "syntax", e.message});
    }
    return result;
}

namespace detail {

inline void validate_term(const Term& t, const Vocabulary& vocab, std::vector<Diagnostic>& out) {
    if (t.is_literal()) return;
    if (!vocab.contains(t.symbol())) {
        out.push_back({Diagnostic::Severity::Error, 0, 0, "undeclared-symbol",
                       "symbol '" + t.symbol() + "' is not declared"});
    } else if (vocab.at(t.symbol()).arity != t.args().size()) {
        out.push_back({Diagnostic::Severity::Error, 0, 0, "arity-mismatch",
                       "symbol '" + t.symbol() + "' has arity " +
                           std::to_string(vocab.at(t.symbol()).arity) + ", applied to " +
                           std::to_string(t.args().size()) + " arguments"});
    }
    for (const auto& a : t.args()) validate_term(a, vocab, out);
}

inline void validate_stmt(const StmtPtr& s, const Vocabulary& vocab, std::vector<Diagnostic>& out) {
    switch (s->kind()) {
        case Stmt::Kind::Assign: {
            if (!vocab.contains(s->symbol())) {
                out.push_back({Diagnostic::Severity::Error, 0, 0, "undeclared-symbol",
                               "symbol '" + s->symbol() + "' is not declared"});
            } else {
                const Symbol& sym = vocab.at(s->symbol());
                if (sym.kind != SymbolKind::Dynamic)
                    out.push_back({Diagnostic::Severity::Error, 0, 0, "static-assignment",
                                   "assignment to static symbol '" + s->symbol() + "'"});
                if (sym.arity != s->args().size())
                    out.push_back({Diagnostic::Severity::Error, 0, 0, "arity-mismatch",
                                   "symbol '" + s->symbol() + "' has arity " +
                                       std::to_string(sym.arity) + ", assigned at " +
                                       std::to_string(s->args().size()) + " arguments"});
            }
            for (const auto& a : s->args()) validate_term(a, vocab, out);
            validate_term(s->rhs(), vocab, out);
            break;
        }
        case Stmt::Kind::If:
            validate_term(s->condition(), vocab, out);
            validate_stmt(s->then_branch(), vocab, out);
            if (s->else_branch()) validate_stmt(s->else_branch(), vocab, out);
            break;
        case Stmt::Kind::Par:
            for (const auto& c : s->children()) validate_stmt(c, vocab, out);
            break;
    }
}

}  // namespace detail

/// Checks a parsed program against a vocabulary. An empty list means the
/// program is executable over states of that vocabulary.
inline std::vector<Diagnostic> validate(const Program& program, const Vocabulary& vocab) {
    std::vector<Diagnostic> out;
    detail::validate_stmt(program, vocab, out);
    return out;
}

// ---------------------------------------------------------------------------
// State files

namespace detail {

inline Value parse_value(Parser& p) {
    const Token& t = p.peek();
    if (t.type == Token::Type::Number) {
        p.get();
        return Value::number(t.number);
    }
    if (t.type == Token::Type::String) {
        p.get();
        return Value::atom(t.text);
    }
    if (t.type == Token::Type::Keyword) {
        if (t.text == "true" || t.text == "false") {
            bool b = t.text == "true";
            p.get();
            return Value::boolean(b);
        }
        if (t.text == "undef") {
            p.get();
            return Value::undef();
        }
        p.fail("expected a value");
    }
    if (t.type != Token::Type::Ident) p.fail("expected a value");
    std::string name = p.get().text;
    std::vector<Value> args;
    if (p.at_punct("(")) {
        p.get();
        args.push_back(parse_value(p));
        while (p.at_punct(",")) {
            p.get();
            args.push_back(parse_value(p));
        }
        p.expect_punct(")");
    }
    return Value::ctor(name, std::move(args));
}

}  // namespace detail

inline ParseResult<State> parse_state(const std::string& text) {
    using detail::Token;
    ParseResult<State> result;
    try {
        detail::Parser p(detail::tokenize(text));
        State st;
        auto ident = [&](const char* what) -> std::string {
            if (p.peek().type != Token::Type::Ident) p.fail(std::string("expected ") + what);
            return p.get().text;
        };

        if (ident("'domain'") != "domain") throw detail::SyntaxError{1, 1, "expected 'domain'"};
        std::string dk = ident("domain kind");
        if (dk == "integers") st.domain.kind = DomainKind::Integers;
        else if (dk == "rationals") st.domain.kind = DomainKind::Rationals;
        else if (dk == "strings") st.domain.kind = DomainKind::Strings;
        else if (dk == "constructed") {
            st.domain.kind = DomainKind::Constructed;
            while (p.peek().type == Token::Type::Ident && p.peek().text != "symbol")
                st.domain.constructors.push_back(p.get().text);
        } else {
            throw detail::SyntaxError{1, 1, "unknown domain '" + dk + "'"};
        }

        while (p.peek().type != Token::Type::End) {
            if (ident("'symbol'") != "symbol") p.fail("expected 'symbol'");
            Symbol sym;
            if (p.peek().type != Token::Type::Ident) p.fail("expected symbol name");
            sym.name = p.get().text;
            if (p.peek().type != Token::Type::Number || !p.peek().number.is_integer() ||
                p.peek().number.num < 0)
                p.fail("expected arity");
            sym.arity = static_cast<unsigned>(p.get().number.num);
            std::string kind = ident("symbol kind");
            if (kind == "static") sym.kind = SymbolKind::Static;
            else if (kind == "dynamic") sym.kind = SymbolKind::Dynamic;
            else p.fail("expected 'static' or 'dynamic'");
            std::string tot = ident("totality");
            if (tot == "total") sym.totality = Totality::Total;
            else if (tot == "undef_returning") sym.totality = Totality::UndefReturning;
            else if (tot == "strictly_partial") sym.totality = Totality::StrictlyPartial;
            else p.fail("expected totality");

            Interpretation in;
            if (p.peek().type == Token::Type::Ident && p.peek().text == "builtin") {
                p.get();
                in = Interpretation::builtin_op(ident("builtin name"));
                if (!is_known_builtin(in.builtin)) p.fail("unknown builtin '" + in.builtin + "'");
            } else if (p.peek().type == Token::Type::Ident && p.peek().text == "polynomial") {
                p.get();
                std::vector<Rational> coeffs;
                while (p.peek().type == Token::Type::Number) coeffs.push_back(p.get().number);
                in = Interpretation::polynomial(std::move(coeffs));
            } else {
                if (p.peek().type != Token::Type::Ident || p.peek().text != "default")
                    p.fail("expected 'default', 'builtin', or 'polynomial'");
                p.get();
                in = Interpretation::table(detail::parse_value(p));
                while (p.peek().type == Token::Type::Ident && p.peek().text == sym.name) {
                    p.get();
                    std::vector<Value> args;
                    if (p.at_punct("(")) {
                        p.get();
                        args.push_back(detail::parse_value(p));
                        while (p.at_punct(",")) {
                            p.get();
                            args.push_back(detail::parse_value(p));
                        }
                        p.expect_punct(")");
                    }
                    if (args.size() != sym.arity) p.fail("arity mismatch in table entry");
                    p.expect_punct("=");
                    Value v = detail::parse_value(p);
                    if (!(v == in.default_value)) in.entries[args] = v;
                }
            }
            st.vocabulary.declare(sym);
            st.interpretations[sym.name] = std::move(in);
        }
        // Reserved symbols carry no explicit interpretation tables.
        result.value = std::move(st);
    } catch (const detail::SyntaxError& e) {
        result.diagnostics.push_back(
            {Diagnostic::Severity::Error, e.line, e.column, "state-syntax", e.message});
    } catch (const std::exception& e) {
        result.diagnostics.push_back({Diagnostic::Severity::Error, 0, 0, "state-invalid", e.what()});
    }
    return result;
}

}  // namespace seqasm

#endif
