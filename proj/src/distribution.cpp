#include "parageo/distribution.hpp"
#include "parageo/verdict.hpp"

#include <cmath>

namespace parageo {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::Inconclusive: return "Inconclusive";
    case Verdict::Vacuous: return "Vacuous";
    }
    return "?";
}

Verdict grade(double residual, double pass_tol, double fail_tol)
{
    if (std::isnan(residual))
        return Verdict::Fail;
    if (residual <= pass_tol)
        return Verdict::Pass;
    if (residual >= fail_tol)
        return Verdict::Fail;
    return Verdict::Inconclusive;
}

Check make_check(std::string name, double residual, const Tolerances& tol, std::string detail)
{
    return Check{std::move(name), grade(residual, tol.identity, tol.structural), residual, tol.identity, std::move(detail)};
}

Mat Distribution::basis(const Vec& p) const
{
    const int d = static_cast<int>(p.size());
    Mat V(d, rank());
    for (int k = 0; k < rank(); ++k)
        for (int j = 0; j < d; ++j)
            V(j, k) = eval_value(gens[k].coeffs[j], p);
    return V;
}

std::vector<FieldJet> Distribution::jets(const Vec& p) const
{
    std::vector<FieldJet> out;
    out.reserve(gens.size());
    for (const auto& X : gens)
        out.push_back(eval_field(X, p));
    return out;
}

Mat restricted_gram(const PointFrame& F, const Mat& V, const std::string& name)
{
    const int k = static_cast<int>(V.cols());
    if (k == 0)
        return Mat(0, 0);
    const Mat A = F.T * V;
    Eigen::JacobiSVD<Mat> svd(A);
    const auto& sv = svd.singularValues();
    if (sv[0] == 0.0 || sv[k - 1] <= 1e-10 * sv[0])
        throw DistributionError("distribution " + name + ": generators are linearly dependent");
    Mat gram = V.transpose() * F.g * V;
    const double scale = A.colwise().norm().maxCoeff();
    if (std::abs(gram.determinant()) < 1e-10 * std::pow(scale, 2 * k))
        throw DistributionError("distribution " + name + ": induced metric restricted to it is degenerate");
    return gram;
}

Vec project_onto(const PointFrame& F, const Mat& V, const Vec& X)
{
    if (V.cols() == 0)
        return Vec::Zero(X.size());
    const Mat gram = V.transpose() * F.g * V;
    return V * gram.partialPivLu().solve(V.transpose() * (F.g * X));
}

} // namespace parageo
