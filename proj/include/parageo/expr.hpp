#ifndef PARAGEO_EXPR_HPP
#define PARAGEO_EXPR_HPP

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "parageo/jet.hpp"

namespace parageo {

/// Syntax error, unknown identifier or variable index out of range.
/// `offset()` is the byte offset into the source text.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t offset);
    std::size_t offset() const { return offset_; }
    const std::string& message() const { return message_; }

private:
    std::string message_;
    std::size_t offset_;
};

/// Division by zero, or ln/sqrt of a nonpositive value, at evaluation time.
class EvalError : public std::runtime_error {
public:
    EvalError(const std::string& message, std::string subexpression);
    const std::string& subexpression() const { return subexpression_; }

private:
    std::string subexpression_;
};

/// Immutable expression tree over the parameters x1..xd.
///
/// Grammar (whitespace is insignificant):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := '-' unary | power
///     power   := primary ('^' ['-'] integer)?
///     primary := number | 'pi' | 'x'k | func '(' expr ')'
///              | 'pow' '(' expr ',' ['-'] integer ')' | '(' expr ')'
///     func    := sin | cos | sinh | cosh | exp | ln | sqrt
class Expr {
public:
    enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Sinh, Cosh, Exp, Ln, Sqrt };

    struct Node {
        Kind kind;
        double value = 0.0; // Const
        int index = 0;      // Var: 1-based variable; Pow: exponent
        std::shared_ptr<const Node> lhs, rhs;
    };

    Expr() = default;
    Expr(std::shared_ptr<const Node> root, int dim) : root_(std::move(root)), dim_(dim) {}

    static Expr constant(double c, int dim);
    static Expr variable(int index1, int dim);

    int dim() const { return dim_; }
    bool empty() const { return root_ == nullptr; }
    const Node& root() const { return *root_; }
    Kind kind() const { return root_->kind; }

    /// Fully parenthesised text that parses back to the same tree.
    std::string print() const;

    /// True when the tree contains no variables.
    bool is_constant() const;

private:
    std::shared_ptr<const Node> root_;
    int dim_ = 0;
};

Expr parse(std::string_view source, int dim);

double eval_value(const Expr& e, const Eigen::VectorXd& p);
Jet2 eval_jet2(const Expr& e, const Eigen::VectorXd& p);

} // namespace parageo

#endif // PARAGEO_EXPR_HPP
