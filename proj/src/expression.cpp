#include "mss/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "mss/error.hpp"

namespace mss {

namespace {

using Fn1 = double (*)(double);
using Fn2 = double (*)(double, double);

struct Named1 {
    const char* name;
    Fn1 fn;
};
struct Named2 {
    const char* name;
    Fn2 fn;
};

const Named1 kUnary[] = {
    {"sin", [](double v) { return std::sin(v); }},   {"cos", [](double v) { return std::cos(v); }},
    {"tan", [](double v) { return std::tan(v); }},   {"asin", [](double v) { return std::asin(v); }},
    {"acos", [](double v) { return std::acos(v); }}, {"atan", [](double v) { return std::atan(v); }},
    {"exp", [](double v) { return std::exp(v); }},   {"log", [](double v) { return std::log(v); }},
    {"sqrt", [](double v) { return std::sqrt(v); }}, {"abs", [](double v) { return std::abs(v); }},
    {"sinh", [](double v) { return std::sinh(v); }}, {"cosh", [](double v) { return std::cosh(v); }},
    {"tanh", [](double v) { return std::tanh(v); }}, {"floor", [](double v) { return std::floor(v); }},
};

const Named2 kBinary[] = {
    {"atan2", [](double a, double b) { return std::atan2(a, b); }},
    {"pow", [](double a, double b) { return std::pow(a, b); }},
    {"min", [](double a, double b) { return std::min(a, b); }},
    {"max", [](double a, double b) { return std::max(a, b); }},
};

}  // namespace

class ExpressionParser {
public:
    ExpressionParser(const std::string& text, const std::vector<std::string>& vars, Expression& out)
        : s_(text), vars_(vars), out_(out) {}

    void run() {
        expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
    }

private:
    using Op = Expression::Op;

    [[noreturn]] void fail(const std::string& msg) {
        throw Error(ErrorKind::ParseError, "expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void emit(Op op, double v = 0.0, int idx = 0) { out_.code_.push_back({op, v, idx}); }

    void expr() {
        term();
        for (;;) {
            if (accept('+')) {
                term();
                emit(Op::Add);
            } else if (accept('-')) {
                term();
                emit(Op::Sub);
            } else {
                return;
            }
        }
    }

    void term() {
        unary();
        for (;;) {
            if (accept('*')) {
                unary();
                emit(Op::Mul);
            } else if (accept('/')) {
                unary();
                emit(Op::Div);
            } else {
                return;
            }
        }
    }

    void unary() {
        if (accept('-')) {
            unary();
            emit(Op::Neg);
            return;
        }
        if (accept('+')) {
            unary();
            return;
        }
        power();
    }

    // Right associative; binds tighter than unary minus on its left.
    void power() {
        primary();
        if (accept('^')) {
            unary();
            emit(Op::Pow);
        }
    }

    void primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<size_t>(end - begin);
            emit(Op::Const, v);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (accept('(')) {
                call(name);
                return;
            }
            for (size_t i = 0; i < vars_.size(); ++i) {
                if (vars_[i] == name) {
                    emit(Op::Var, 0.0, static_cast<int>(i));
                    return;
                }
            }
            if (name == "pi") {
                emit(Op::Const, std::numbers::pi);
                return;
            }
            if (name == "e") {
                emit(Op::Const, std::numbers::e);
                return;
            }
            fail("unknown identifier '" + name + "'");
        }
        if (accept('(')) {
            expr();
            if (!accept(')')) fail("expected ')'");
            return;
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }

    void call(const std::string& name) {
        for (size_t i = 0; i < std::size(kUnary); ++i) {
            if (name == kUnary[i].name) {
                expr();
                if (!accept(')')) fail("expected ')' after argument of " + name);
                emit(Op::Call1, 0.0, static_cast<int>(i));
                return;
            }
        }
        for (size_t i = 0; i < std::size(kBinary); ++i) {
            if (name == kBinary[i].name) {
                expr();
                if (!accept(',')) fail("expected ',' in " + name);
                expr();
                if (!accept(')')) fail("expected ')' after arguments of " + name);
                emit(Op::Call2, 0.0, static_cast<int>(i));
                return;
            }
        }
        fail("unknown function '" + name + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    Expression& out_;
    size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text, const std::vector<std::string>& variables) {
    Expression e;
    e.text_ = text;
    ExpressionParser(text, variables, e).run();
    return e;
}

double Expression::eval(const std::vector<double>& values) const {
    double stack[64];
    int top = 0;
    for (const Instr& in : code_) {
        if (top >= 63) throw Error(ErrorKind::ParseError, "expression too deeply nested: " + text_);
        switch (in.op) {
            case Op::Const: stack[top++] = in.value; break;
            case Op::Var: stack[top++] = values.at(static_cast<size_t>(in.index)); break;
            case Op::Add: --top; stack[top - 1] += stack[top]; break;
            case Op::Sub: --top; stack[top - 1] -= stack[top]; break;
            case Op::Mul: --top; stack[top - 1] *= stack[top]; break;
            case Op::Div: --top; stack[top - 1] /= stack[top]; break;
            case Op::Pow: --top; stack[top - 1] = std::pow(stack[top - 1], stack[top]); break;
            case Op::Neg: stack[top - 1] = -stack[top - 1]; break;
            case Op::Call1: stack[top - 1] = kUnary[in.index].fn(stack[top - 1]); break;
            case Op::Call2:
                --top;
                stack[top - 1] = kBinary[in.index].fn(stack[top - 1], stack[top]);
                break;
        }
    }
    return stack[0];
}

}  // namespace mss
