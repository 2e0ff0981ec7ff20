#include "parageo/ambient.hpp"

#include <stdexcept>
#include <string>

namespace parageo {

namespace {

constexpr double kSignatureThreshold = 1e-10;

void require_size(const Vec& v, int n, const char* what)
{
    if (v.size() != n)
        throw std::invalid_argument(std::string(what) + ": expected a vector of length " + std::to_string(n) +
                                    ", got " + std::to_string(v.size()));
}

} // namespace

AmbientSpace::AmbientSpace(Mat P, Mat G) : P_(std::move(P)), G_(std::move(G))
{
    if (P_.rows() != P_.cols() || G_.rows() != G_.cols() || P_.rows() != G_.rows())
        throw std::invalid_argument("ambient: P and G must be square matrices of the same size");
    if (P_.rows() == 0 || P_.rows() % 2 != 0)
        throw std::invalid_argument("ambient: dimension must be even and positive");
    m_ = static_cast<int>(P_.rows() / 2);
}

AmbientSpace AmbientSpace::canonical(int m)
{
    if (m < 1)
        throw std::invalid_argument("ambient: half-dimension must be at least 1");
    const int n = 2 * m;
    Mat P = Mat::Zero(n, n);
    P.topRightCorner(m, m).setIdentity();
    P.bottomLeftCorner(m, m).setIdentity();
    Mat G = Mat::Zero(n, n);
    G.diagonal().head(m).setOnes();
    G.diagonal().tail(m).setConstant(-1.0);
    return AmbientSpace(std::move(P), std::move(G));
}

double AmbientSpace::inner(const Vec& u, const Vec& v) const
{
    require_size(u, dim(), "inner");
    require_size(v, dim(), "inner");
    return u.dot(G_ * v);
}

Vec AmbientSpace::apply_P(const Vec& u) const
{
    require_size(u, dim(), "apply_P");
    return P_ * u;
}

double AmbientSpace::omega(const Vec& u, const Vec& v) const { return inner(u, apply_P(v)); }

StructureReport verify_structure(const AmbientSpace& A, double tol)
{
    const Mat& P = A.P();
    const Mat& G = A.G();
    const int n = A.dim();

    StructureReport r;
    r.p_squared_residual = (P * P - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    r.compatibility_residual = (P.transpose() * G * P + G).cwiseAbs().maxCoeff();
    r.symmetry_residual = (G - G.transpose()).cwiseAbs().maxCoeff();
    const Mat GP = G * P;
    r.antisymmetry_residual = (GP + GP.transpose()).cwiseAbs().maxCoeff();

    Eigen::SelfAdjointEigenSolver<Mat> eig(0.5 * (G + G.transpose()), Eigen::EigenvaluesOnly);
    for (int i = 0; i < n; ++i) {
        const double ev = eig.eigenvalues()[i];
        if (ev > kSignatureThreshold)
            ++r.positive;
        else if (ev < -kSignatureThreshold)
            ++r.negative;
        else
            ++r.zero;
    }
    r.pass = r.p_squared_residual <= tol && r.compatibility_residual <= tol && r.symmetry_residual <= tol &&
             r.positive == A.half_dim() && r.negative == A.half_dim();
    return r;
}

} // namespace parageo
