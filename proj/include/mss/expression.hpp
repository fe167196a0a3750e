#pragma once

#include <string>
#include <vector>

namespace mss {

// Arithmetic expression over named variables, compiled to postfix code.
// Grammar: numbers, variables, pi, e, + - * / ^, unary minus, parentheses,
// and the functions sin cos tan asin acos atan exp log sqrt abs sinh cosh
// tanh floor atan2(y,x) pow(a,b) min(a,b) max(a,b).
class Expression {
public:
    static Expression parse(const std::string& text, const std::vector<std::string>& variables);

    double eval(const std::vector<double>& values) const;
    double eval(double x, double y) const { return eval(std::vector<double>{x, y}); }
    const std::string& text() const { return text_; }

private:
    enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Call1, Call2 };
    struct Instr {
        Op op;
        double value = 0.0;
        int index = 0;
    };

    friend class ExpressionParser;
    std::string text_;
    std::vector<Instr> code_;
};

}  // namespace mss
