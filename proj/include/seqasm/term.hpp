#ifndef SEQASM_TERM_HPP
#define SEQASM_TERM_HPP

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "seqasm/value.hpp"

namespace seqasm {

/// Ground term: a literal value or a symbol application. Immutable;
/// cheap to copy (shared nodes).
class Term {
public:
    enum class Kind { Literal, App };

    Term() : Term(literal(Value::undef())) {}

    static Term literal(Value v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Literal;
        n->value = std::move(v);
        return Term(std::move(n));
    }

    static Term app(std::string symbol, std::vector<Term> args = {}) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::App;
        n->symbol = std::move(symbol);
        n->args = std::move(args);
        return Term(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    bool is_literal() const { return node_->kind == Kind::Literal; }
    const Value& value() const { return node_->value; }
    const std::string& symbol() const { return node_->symbol; }
    const std::vector<Term>& args() const { return node_->args; }

    size_t size() const {
        if (is_literal()) return 1;
        size_t s = 1;
        for (const auto& a : args()) s += a.size();
        return s;
    }

    std::string str() const {
        if (is_literal()) return node_->value.str();
        if (node_->args.empty()) return node_->symbol;
        // The standard connectives print infix, everything else prefix.
        const std::string& f = node_->symbol;
        if ((f == "=" || f == "!=" || f == "and" || f == "or") && node_->args.size() == 2)
            return "(" + node_->args[0].str() + " " + f + " " + node_->args[1].str() + ")";
        if (f == "not" && node_->args.size() == 1)
            return "not(" + node_->args[0].str() + ")";
        std::string out = f + "(";
        for (size_t i = 0; i < node_->args.size(); ++i) {
            if (i) out += ", ";
            out += node_->args[i].str();
        }
        return out + ")";
    }

    friend bool operator==(const Term& a, const Term& b) {
        if (a.node_ == b.node_) return true;
        if (a.node_->kind != b.node_->kind) return false;
        if (a.is_literal()) return a.value() == b.value();
        return a.symbol() == b.symbol() && a.args() == b.args();
    }
    friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

    // Size-then-text order; total and deterministic. Also the tie-break
    // order used when several terms denote the same value.
    friend bool operator<(const Term& a, const Term& b) {
        size_t sa = a.size(), sb = b.size();
        if (sa != sb) return sa < sb;
        return a.str() < b.str();
    }

    /// All subterms including the term itself.
    void collect_subterms(std::set<Term>& out) const {
        out.insert(*this);
        if (!is_literal())
            for (const auto& a : args()) a.collect_subterms(out);
    }

    /// Values of all literal subterms. Literals denote rigidly, so any
    /// bijection probing isomorphism respect must fix these.
    void collect_literal_values(std::set<Value>& out) const {
        if (is_literal()) {
            out.insert(value());
            return;
        }
        for (const auto& a : args()) a.collect_literal_values(out);
    }

private:
    struct Node {
        Kind kind = Kind::Literal;
        Value value;
        std::string symbol;
        std::vector<Term> args;
    };
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

using TermSet = std::set<Term>;

}  // namespace seqasm

#endif
