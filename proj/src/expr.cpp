#include "parageo/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

namespace parageo {

ParseError::ParseError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " at offset " + std::to_string(offset)), message_(message), offset_(offset)
{
}

EvalError::EvalError(const std::string& message, std::string subexpression)
    : std::runtime_error(message + " in '" + subexpression + "'"), subexpression_(std::move(subexpression))
{
}

namespace {

using Node = Expr::Node;
using NodePtr = std::shared_ptr<const Node>;
using Kind = Expr::Kind;

NodePtr make(Kind k, NodePtr a = nullptr, NodePtr b = nullptr)
{
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

NodePtr make_const(double v)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Const;
    n->value = v;
    return n;
}

NodePtr make_var(int index1)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::Var;
    n->index = index1;
    return n;
}

struct FuncName {
    std::string_view name;
    Kind kind;
};

constexpr FuncName kFunctions[] = {
    {"sin", Kind::Sin},   {"cos", Kind::Cos}, {"sinh", Kind::Sinh}, {"cosh", Kind::Cosh},
    {"exp", Kind::Exp},   {"ln", Kind::Ln},   {"sqrt", Kind::Sqrt},
};

class Parser {
public:
    Parser(std::string_view src, int dim) : src_(src), dim_(dim) {}

    NodePtr parse_all()
    {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("empty expression", pos_);
        NodePtr e = parse_expr();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
        return e;
    }

private:
    std::string_view src_;
    int dim_;
    std::size_t pos_ = 0;

    void skip_ws()
    {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= src_.size())
                throw ParseError(std::string("expected '") + c + "' but reached end of input", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
    }

    NodePtr parse_expr()
    {
        NodePtr lhs = parse_term();
        for (;;) {
            if (accept('+'))
                lhs = make(Kind::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = make(Kind::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    NodePtr parse_term()
    {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make(Kind::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = make(Kind::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary()
    {
        if (accept('-'))
            return make(Kind::Neg, parse_unary());
        return parse_power();
    }

    NodePtr parse_power()
    {
        NodePtr base = parse_primary();
        if (accept('^')) {
            auto n = make(Kind::Pow, base);
            std::const_pointer_cast<Node>(n)->index = parse_integer();
            return n;
        }
        return base;
    }

    int parse_integer()
    {
        skip_ws();
        const std::size_t start = pos_;
        bool neg = false;
        if (pos_ < src_.size() && src_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        const std::size_t digits = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ == digits)
            throw ParseError("expected integer exponent", start);
        int value = 0;
        auto [ptr, ec] = std::from_chars(src_.data() + digits, src_.data() + pos_, value);
        if (ec != std::errc() || value > 64)
            throw ParseError("integer exponent out of range", start);
        (void)ptr;
        return neg ? -value : value;
    }

    NodePtr parse_number()
    {
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t save = pos_++;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-'))
                ++pos_;
            const std::size_t exp_digits = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            if (pos_ == exp_digits)
                pos_ = save;
        }
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, v);
        if (ec != std::errc() || ptr != src_.data() + pos_)
            throw ParseError("malformed number", start);
        return make_const(v);
    }

    NodePtr parse_primary()
    {
        skip_ws();
        if (pos_ >= src_.size())
            throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (c == '(') {
            ++pos_;
            NodePtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            const std::string_view ident = src_.substr(start, pos_ - start);
            return parse_identifier(ident, start);
        }
        throw ParseError(std::string("unexpected '") + c + "'", pos_);
    }

    NodePtr parse_identifier(std::string_view ident, std::size_t start)
    {
        if (ident == "pi")
            return make_const(std::numbers::pi);
        if (ident.size() >= 2 && ident[0] == 'x' &&
            ident.substr(1).find_first_not_of("0123456789") == std::string_view::npos) {
            int index = 0;
            auto [ptr, ec] = std::from_chars(ident.data() + 1, ident.data() + ident.size(), index);
            (void)ptr;
            if (ec != std::errc() || index < 1 || index > dim_)
                throw ParseError("variable index out of range: " + std::string(ident) + " (dimension " +
                                     std::to_string(dim_) + ")",
                                 start);
            return make_var(index);
        }
        if (ident == "pow") {
            expect('(');
            NodePtr base = parse_expr();
            expect(',');
            const int n = parse_integer();
            expect(')');
            auto node = make(Kind::Pow, base);
            std::const_pointer_cast<Node>(node)->index = n;
            return node;
        }
        for (const auto& f : kFunctions) {
            if (ident == f.name) {
                expect('(');
                NodePtr arg = parse_expr();
                expect(')');
                return make(f.kind, arg);
            }
        }
        throw ParseError("unknown identifier '" + std::string(ident) + "'", start);
    }
};

std::string format_double(double v)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    std::string s(buf, ptr);
    // Bare integers and exponent forms parse back unchanged; keep as is.
    return s;
}

std::string_view func_name(Kind k)
{
    for (const auto& f : kFunctions)
        if (f.kind == k)
            return f.name;
    return "?";
}

void print_node(const Node& n, std::string& out)
{
    switch (n.kind) {
    case Kind::Const:
        if (std::signbit(n.value)) {
            out += "(-";
            out += format_double(-n.value);
            out += ')';
        } else {
            out += format_double(n.value);
        }
        return;
    case Kind::Var:
        out += 'x';
        out += std::to_string(n.index);
        return;
    case Kind::Neg:
        out += "(-";
        print_node(*n.lhs, out);
        out += ')';
        return;
    case Kind::Add:
    case Kind::Sub:
    case Kind::Mul:
    case Kind::Div: {
        const char* op = n.kind == Kind::Add ? " + " : n.kind == Kind::Sub ? " - " : n.kind == Kind::Mul ? " * " : " / ";
        out += '(';
        print_node(*n.lhs, out);
        out += op;
        print_node(*n.rhs, out);
        out += ')';
        return;
    }
    case Kind::Pow:
        out += "pow(";
        print_node(*n.lhs, out);
        out += ", ";
        out += std::to_string(n.index);
        out += ')';
        return;
    default:
        out += func_name(n.kind);
        out += '(';
        print_node(*n.lhs, out);
        out += ')';
        return;
    }
}

std::string print_subtree(const Node& n)
{
    std::string s;
    print_node(n, s);
    return s;
}

inline double value_of(double v) { return v; }
inline double value_of(const Jet2& j) { return j.value; }

template <class T>
struct Evaluator {
    const Eigen::VectorXd& p;
    int dim;

    T constant(double c) const
    {
        if constexpr (std::is_same_v<T, double>)
            return c;
        else
            return Jet2::constant(c, dim);
    }

    T variable(int index1) const
    {
        if constexpr (std::is_same_v<T, double>)
            return p[index1 - 1];
        else
            return Jet2::variable(index1 - 1, p[index1 - 1], dim);
    }

    T operator()(const Node& n) const
    {
        using std::cos;
        using std::cosh;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sinh;
        using std::sqrt;
        switch (n.kind) {
        case Kind::Const:
            return constant(n.value);
        case Kind::Var:
            return variable(n.index);
        case Kind::Neg:
            return -(*this)(*n.lhs);
        case Kind::Add:
            return (*this)(*n.lhs) + (*this)(*n.rhs);
        case Kind::Sub:
            return (*this)(*n.lhs) - (*this)(*n.rhs);
        case Kind::Mul:
            return (*this)(*n.lhs) * (*this)(*n.rhs);
        case Kind::Div: {
            T den = (*this)(*n.rhs);
            if (value_of(den) == 0.0)
                throw EvalError("division by zero", print_subtree(n));
            return (*this)(*n.lhs) / den;
        }
        case Kind::Pow: {
            T base = (*this)(*n.lhs);
            if (n.index < 0 && value_of(base) == 0.0)
                throw EvalError("negative power of zero", print_subtree(n));
            if constexpr (std::is_same_v<T, double>)
                return n.index == 0 ? 1.0 : std::pow(base, n.index);
            else
                return pow(base, n.index);
        }
        case Kind::Sin:
            return sin((*this)(*n.lhs));
        case Kind::Cos:
            return cos((*this)(*n.lhs));
        case Kind::Sinh:
            return sinh((*this)(*n.lhs));
        case Kind::Cosh:
            return cosh((*this)(*n.lhs));
        case Kind::Exp:
            return exp((*this)(*n.lhs));
        case Kind::Ln: {
            T a = (*this)(*n.lhs);
            if (!(value_of(a) > 0.0))
                throw EvalError("ln of nonpositive value", print_subtree(n));
            return log(a);
        }
        case Kind::Sqrt: {
            T a = (*this)(*n.lhs);
            if (!(value_of(a) > 0.0))
                throw EvalError("sqrt of nonpositive value", print_subtree(n));
            return sqrt(a);
        }
        }
        throw std::logic_error("unhandled expression node");
    }
};

bool has_variables(const Node& n)
{
    if (n.kind == Kind::Var)
        return true;
    return (n.lhs && has_variables(*n.lhs)) || (n.rhs && has_variables(*n.rhs));
}

void check_point(const Expr& e, const Eigen::VectorXd& p)
{
    if (e.empty())
        throw std::invalid_argument("evaluating an empty expression");
    if (p.size() != e.dim())
        throw std::invalid_argument("point has " + std::to_string(p.size()) + " coordinates, expression expects " +
                                    std::to_string(e.dim()));
}

} // namespace

Expr Expr::constant(double c, int dim) { return Expr(make_const(c), dim); }

Expr Expr::variable(int index1, int dim) { return Expr(make_var(index1), dim); }

std::string Expr::print() const { return print_subtree(*root_); }

bool Expr::is_constant() const { return !has_variables(*root_); }

Expr parse(std::string_view source, int dim)
{
    if (dim < 0)
        throw std::invalid_argument("expression dimension must be nonnegative");
    Parser parser(source, dim);
    return Expr(parser.parse_all(), dim);
}

double eval_value(const Expr& e, const Eigen::VectorXd& p)
{
    check_point(e, p);
    return Evaluator<double>{p, e.dim()}(e.root());
}

Jet2 eval_jet2(const Expr& e, const Eigen::VectorXd& p)
{
    check_point(e, p);
    return Evaluator<Jet2>{p, e.dim()}(e.root());
}

} // namespace parageo
