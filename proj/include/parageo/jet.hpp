#ifndef PARAGEO_JET_HPP
#define PARAGEO_JET_HPP

#include <Eigen/Dense>

namespace parageo {

/// Value, gradient and Hessian of a scalar function of the parameters at a
/// single point. Arithmetic propagates all three orders together.
struct Jet2 {
    double value = 0.0;
    Eigen::VectorXd grad;
    Eigen::MatrixXd hess;

    static Jet2 constant(double c, int dim);
    static Jet2 variable(int index, double x, int dim);

    int dim() const { return static_cast<int>(grad.size()); }

    /// Composition with a scalar function given its value and first two
    /// derivatives at `value`.
    Jet2 compose(double f0, double f1, double f2) const;
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);

Jet2 sin(const Jet2& u);
Jet2 cos(const Jet2& u);
Jet2 sinh(const Jet2& u);
Jet2 cosh(const Jet2& u);
Jet2 exp(const Jet2& u);
// ln and sqrt assume a positive argument; callers guard the domain.
Jet2 log(const Jet2& u);
Jet2 sqrt(const Jet2& u);
Jet2 pow(const Jet2& u, int n);

} // namespace parageo

#endif // PARAGEO_JET_HPP
