#include "parageo/jet.hpp"

#include <cmath>

namespace parageo {

Jet2 Jet2::constant(double c, int dim)
{
    return Jet2{c, Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim)};
}

Jet2 Jet2::variable(int index, double x, int dim)
{
    Jet2 j = constant(x, dim);
    j.grad[index] = 1.0;
    return j;
}

Jet2 Jet2::compose(double f0, double f1, double f2) const
{
    Jet2 r;
    r.value = f0;
    r.grad = f1 * grad;
    r.hess = f1 * hess + f2 * (grad * grad.transpose());
    return r;
}

Jet2 operator+(const Jet2& a, const Jet2& b)
{
    return Jet2{a.value + b.value, a.grad + b.grad, a.hess + b.hess};
}

Jet2 operator-(const Jet2& a, const Jet2& b)
{
    return Jet2{a.value - b.value, a.grad - b.grad, a.hess - b.hess};
}

Jet2 operator-(const Jet2& a)
{
    return Jet2{-a.value, -a.grad, -a.hess};
}

Jet2 operator*(const Jet2& a, const Jet2& b)
{
    Jet2 r;
    r.value = a.value * b.value;
    r.grad = a.value * b.grad + b.value * a.grad;
    // (u_i v_j + v_i u_j) is symmetric entry by entry since + commutes.
    Eigen::MatrixXd cross = a.grad * b.grad.transpose();
    r.hess = a.value * b.hess + b.value * a.hess + cross + cross.transpose();
    return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b)
{
    const double v = b.value;
    return a * b.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Jet2 sin(const Jet2& u)
{
    const double s = std::sin(u.value), c = std::cos(u.value);
    return u.compose(s, c, -s);
}

Jet2 cos(const Jet2& u)
{
    const double s = std::sin(u.value), c = std::cos(u.value);
    return u.compose(c, -s, -c);
}

Jet2 sinh(const Jet2& u)
{
    const double s = std::sinh(u.value), c = std::cosh(u.value);
    return u.compose(s, c, s);
}

Jet2 cosh(const Jet2& u)
{
    const double s = std::sinh(u.value), c = std::cosh(u.value);
    return u.compose(c, s, c);
}

Jet2 exp(const Jet2& u)
{
    const double e = std::exp(u.value);
    return u.compose(e, e, e);
}

Jet2 log(const Jet2& u)
{
    const double v = u.value;
    return u.compose(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Jet2 sqrt(const Jet2& u)
{
    const double s = std::sqrt(u.value);
    return u.compose(s, 0.5 / s, -0.25 / (s * u.value));
}

Jet2 pow(const Jet2& u, int n)
{
    if (n == 0)
        return Jet2::constant(1.0, u.dim());
    if (n == 1)
        return u;
    const double v = u.value;
    const double f0 = std::pow(v, n);
    const double f1 = n * std::pow(v, n - 1);
    const double f2 = (n == 1) ? 0.0 : static_cast<double>(n) * (n - 1) * std::pow(v, n - 2);
    return u.compose(f0, f1, f2);
}

} // namespace parageo
