#ifndef SEQASM_PROGRAM_HPP
#define SEQASM_PROGRAM_HPP

#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "seqasm/term.hpp"

namespace seqasm {

/// AST of an ASM program: generalized assignments, conditionals, and
/// parallel blocks. Conditions are ordinary terms; a condition holds iff
/// it evaluates exactly to the boolean true.
class Stmt;
using StmtPtr = std::shared_ptr<const Stmt>;
using Program = StmtPtr;

class Stmt {
public:
    enum class Kind { Assign, If, Par };

    static StmtPtr assign(std::string symbol, std::vector<Term> args, Term rhs) {
        auto s = std::make_shared<Stmt>();
        s->kind_ = Kind::Assign;
        s->symbol_ = std::move(symbol);
        s->args_ = std::move(args);
        s->rhs_ = std::move(rhs);
        return s;
    }
    static StmtPtr if_(Term cond, StmtPtr then_branch, StmtPtr else_branch = nullptr) {
        auto s = std::make_shared<Stmt>();
        s->kind_ = Kind::If;
        s->cond_ = std::move(cond);
        s->then_ = std::move(then_branch);
        s->else_ = std::move(else_branch);
        return s;
    }
    static StmtPtr par(std::vector<StmtPtr> children) {
        auto s = std::make_shared<Stmt>();
        s->kind_ = Kind::Par;
        s->children_ = std::move(children);
        return s;
    }

    Kind kind() const { return kind_; }
    const std::string& symbol() const { return symbol_; }
    const std::vector<Term>& args() const { return args_; }
    const Term& rhs() const { return rhs_; }
    const Term& condition() const { return cond_; }
    const StmtPtr& then_branch() const { return then_; }
    const StmtPtr& else_branch() const { return else_; }
    const std::vector<StmtPtr>& children() const { return children_; }

    /// The assignment's left-hand side as a term.
    Term lhs_term() const { return args_.empty() ? Term::app(symbol_) : Term::app(symbol_, args_); }

private:
    Kind kind_ = Kind::Par;
    std::string symbol_;
    std::vector<Term> args_;
    Term rhs_;
    Term cond_;
    StmtPtr then_;
    StmtPtr else_;
    std::vector<StmtPtr> children_;
};

inline bool stmt_equal(const StmtPtr& a, const StmtPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind() != b->kind()) return false;
    switch (a->kind()) {
        case Stmt::Kind::Assign:
            return a->symbol() == b->symbol() && a->args() == b->args() && a->rhs() == b->rhs();
        case Stmt::Kind::If:
            return a->condition() == b->condition() && stmt_equal(a->then_branch(), b->then_branch()) &&
                   stmt_equal(a->else_branch(), b->else_branch());
        case Stmt::Kind::Par: {
            if (a->children().size() != b->children().size()) return false;
            for (size_t i = 0; i < a->children().size(); ++i)
                if (!stmt_equal(a->children()[i], b->children()[i])) return false;
            return true;
        }
    }
    return false;
}

/// Values of every literal occurring anywhere in the program.
inline std::set<Value> program_literal_values(const Program& program) {
    std::set<Value> out;
    std::function<void(const StmtPtr&)> walk = [&](const StmtPtr& s) {
        switch (s->kind()) {
            case Stmt::Kind::Assign:
                for (const auto& a : s->args()) a.collect_literal_values(out);
                s->rhs().collect_literal_values(out);
                break;
            case Stmt::Kind::If:
                s->condition().collect_literal_values(out);
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
// Pretty-printer. Output reparses to the identical AST (singleton
// do-blocks collapse in the parser, so defensive braces are AST-neutral).

namespace detail {

inline std::string print_term(const Term& t);

inline std::string print_call(const Term& t) {
    if (t.args().empty()) return t.symbol();
    std::string out = t.symbol() + "(";
    for (size_t i = 0; i < t.args().size(); ++i) {
        if (i) out += ", ";
        out += print_term(t.args()[i]);
    }
    return out + ")";
}

inline std::string print_term(const Term& t) {
    if (t.is_literal()) return t.value().str();
    return print_call(t);
}

/// Conditions use the infix boolean syntax.
inline std::string print_condition(const Term& t);

/// A comparison operand that is itself a boolean connective has no plain
/// term syntax; parenthesized infix keeps it printable.
inline std::string print_cmp_side(const Term& t) {
    if (!t.is_literal()) {
        const std::string& f = t.symbol();
        bool connective = ((f == "=" || f == "!=" || f == "and" || f == "or") &&
                           t.args().size() == 2) ||
                          (f == "not" && t.args().size() == 1);
        if (connective) return "(" + print_condition(t) + ")";
    }
    return print_term(t);
}

inline std::string print_condition(const Term& t) {
    if (!t.is_literal()) {
        const std::string& f = t.symbol();
        if ((f == "=" || f == "!=") && t.args().size() == 2)
            return print_cmp_side(t.args()[0]) + " " + f + " " + print_cmp_side(t.args()[1]);
        if ((f == "and" || f == "or") && t.args().size() == 2)
            return "(" + print_condition(t.args()[0]) + ") " + f + " (" +
                   print_condition(t.args()[1]) + ")";
        if (f == "not" && t.args().size() == 1)
            return "not (" + print_condition(t.args()[0]) + ")";
    }
    return print_term(t);
}

inline void print_stmt(const StmtPtr& s, std::ostringstream& out, int indent) {
    std::string pad(indent, ' ');
    switch (s->kind()) {
        case Stmt::Kind::Assign:
            out << pad << print_term(s->lhs_term()) << " := " << print_term(s->rhs()) << "\n";
            break;
        case Stmt::Kind::If: {
            out << pad << "if " << print_condition(s->condition()) << " then\n";
            // An elseless if inside our then-branch would capture our else;
            // braces keep the nesting explicit.
            bool brace_then = s->else_branch() && s->then_branch()->kind() == Stmt::Kind::If;
            if (brace_then) {
                out << pad << "do {\n";
                print_stmt(s->then_branch(), out, indent + 2);
                out << pad << "}\n";
            } else {
                print_stmt(s->then_branch(), out, indent + 2);
            }
            if (s->else_branch()) {
                out << pad << "else\n";
                print_stmt(s->else_branch(), out, indent + 2);
            }
            break;
        }
        case Stmt::Kind::Par:
            out << pad << "do {\n";
            for (const auto& c : s->children()) print_stmt(c, out, indent + 2);
            out << pad << "}\n";
            break;
    }
}

}  // namespace detail

inline std::string pretty_print(const Program& program) {
    std::ostringstream out;
    detail::print_stmt(program, out, 0);
    return out.str();
}

}  // namespace seqasm

#endif
