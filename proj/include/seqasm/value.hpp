#ifndef SEQASM_VALUE_HPP
#define SEQASM_VALUE_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqasm {

/// Exact rational, always in lowest terms with positive denominator.
/// Integers are the den == 1 case; there is no separate integer kind.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::domain_error("rational with zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
        if (num == 0) den = 1;
    }

    bool is_integer() const { return den == 1; }

    friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Rational operator-(Rational a, Rational b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
    friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(Rational a, Rational b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rational a, Rational b) { return a == b || a < b; }

    int sign() const { return num > 0 ? 1 : num < 0 ? -1 : 0; }
    Rational abs() const { return num < 0 ? Rational{-num, den} : *this; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

/// A domain element or logical constant. Equality is total and decidable.
class Value {
public:
    enum class Kind { Undef, Bool, Num, Str, Ctor };

    Value() : kind_(Kind::Undef) {}

    static Value undef() { return Value(); }
    static Value boolean(bool b) {
        Value v;
        v.kind_ = Kind::Bool;
        v.bool_ = b;
        return v;
    }
    static Value number(Rational r) {
        Value v;
        v.kind_ = Kind::Num;
        v.num_ = r;
        return v;
    }
    static Value integer(long long n) { return number(Rational(n)); }
    static Value atom(std::string s) {
        Value v;
        v.kind_ = Kind::Str;
        v.str_ = std::move(s);
        return v;
    }
    static Value ctor(std::string symbol, std::vector<Value> args = {}) {
        Value v;
        v.kind_ = Kind::Ctor;
        v.str_ = std::move(symbol);
        v.args_ = std::move(args);
        return v;
    }

    Kind kind() const { return kind_; }
    bool is_undef() const { return kind_ == Kind::Undef; }
    bool is_bool() const { return kind_ == Kind::Bool; }
    bool is_num() const { return kind_ == Kind::Num; }
    bool is_true() const { return kind_ == Kind::Bool && bool_; }

    bool as_bool() const { return bool_; }
    const Rational& as_num() const { return num_; }
    const std::string& as_atom() const { return str_; }
    const std::string& ctor_symbol() const { return str_; }
    const std::vector<Value>& ctor_args() const { return args_; }

    friend bool operator==(const Value& a, const Value& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
            case Kind::Undef: return true;
            case Kind::Bool: return a.bool_ == b.bool_;
            case Kind::Num: return a.num_ == b.num_;
            case Kind::Str: return a.str_ == b.str_;
            case Kind::Ctor: return a.str_ == b.str_ && a.args_ == b.args_;
        }
        return false;
    }
    friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

    // Total order: kind rank first, then content. Used for canonical
    // (byte-deterministic) serialization orderings.
    friend bool operator<(const Value& a, const Value& b) {
        if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) < static_cast<int>(b.kind_);
        switch (a.kind_) {
            case Kind::Undef: return false;
            case Kind::Bool: return a.bool_ < b.bool_;
            case Kind::Num:
                if (a.num_ == b.num_) return false;
                return a.num_ < b.num_;
            case Kind::Str: return a.str_ < b.str_;
            case Kind::Ctor:
                if (a.str_ != b.str_) return a.str_ < b.str_;
                return a.args_ < b.args_;
        }
        return false;
    }

    std::string str() const {
        switch (kind_) {
            case Kind::Undef: return "undef";
            case Kind::Bool: return bool_ ? "true" : "false";
            case Kind::Num: return num_.str();
            case Kind::Str: return "\"" + str_ + "\"";
            case Kind::Ctor: {
                if (args_.empty()) return str_;
                std::string out = str_ + "(";
                for (size_t i = 0; i < args_.size(); ++i) {
                    if (i) out += ", ";
                    out += args_[i].str();
                }
                return out + ")";
            }
        }
        return "?";
    }

private:
    Kind kind_;
    bool bool_ = false;
    Rational num_;
    std::string str_;        // atom text or constructor symbol
    std::vector<Value> args_;
};

}  // namespace seqasm

#endif
