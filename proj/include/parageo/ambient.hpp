#ifndef PARAGEO_AMBIENT_HPP
#define PARAGEO_AMBIENT_HPP

#include <Eigen/Dense>

namespace parageo {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Flat ambient space R^{2m} with a constant almost product structure P and
/// a constant metric G. For a valid para-Kähler ambient P^2 = I, G is
/// symmetric of signature (m, m), and P^T G P = -G.
class AmbientSpace {
public:
    /// Throws std::invalid_argument when P and G are not both 2m x 2m.
    AmbientSpace(Mat P, Mat G);

    static AmbientSpace canonical(int m);

    int half_dim() const { return m_; }
    int dim() const { return 2 * m_; }
    const Mat& P() const { return P_; }
    const Mat& G() const { return G_; }

    double inner(const Vec& u, const Vec& v) const;
    Vec apply_P(const Vec& u) const;
    /// Fundamental 2-form omega(u, v) = <u, P v>.
    double omega(const Vec& u, const Vec& v) const;

private:
    int m_;
    Mat P_, G_;
};

struct StructureReport {
    double p_squared_residual = 0.0;     // max |P^2 - I|
    double compatibility_residual = 0.0; // max |P^T G P + G|
    double symmetry_residual = 0.0;      // max |G - G^T|
    double antisymmetry_residual = 0.0;  // max |G P + (G P)^T|
    int positive = 0;
    int negative = 0;
    int zero = 0;
    bool pass = false;
};

StructureReport verify_structure(const AmbientSpace& A, double tol);

} // namespace parageo

#endif // PARAGEO_AMBIENT_HPP
