#include "parageo/parastructure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parageo {

TNDecomposition tn_decompose(const PointFrame& F)
{
    const int d = F.dim();
    const int c = F.codim();
    TNDecomposition tn{Mat(d, d), Mat(c, d), Mat(d, c), Mat(c, c)};
    const Mat PT = F.P * F.T;
    for (int i = 0; i < d; ++i) {
        tn.t.col(i) = F.tangent_coeffs(PT.col(i));
        tn.n.col(i) = F.normal_coeffs(PT.col(i));
    }
    const Mat PN = F.P * F.N;
    for (int a = 0; a < c; ++a) {
        tn.tp.col(a) = F.tangent_coeffs(PN.col(a));
        tn.np.col(a) = F.normal_coeffs(PN.col(a));
    }
    return tn;
}

RecompositionResidual recomposition_residual(const PointFrame& F, const TNDecomposition& tn)
{
    RecompositionResidual r;
    r.tangent = (F.P * F.T - (F.T * tn.t + F.N * tn.n)).cwiseAbs().maxCoeff();
    if (F.codim() > 0)
        r.normal = (F.P * F.N - (F.T * tn.tp + F.N * tn.np)).cwiseAbs().maxCoeff();
    return r;
}

const char* to_string(SlantClass c)
{
    switch (c) {
    case SlantClass::Invariant: return "Invariant";
    case SlantClass::AntiInvariant: return "AntiInvariant";
    case SlantClass::ProperSlant: return "ProperSlant";
    case SlantClass::NotSlant: return "NotSlant";
    }
    return "?";
}

SlantReport slant_analyze(const SampleSet& S, const Distribution& D, const Tolerances& tol)
{
    SlantReport rep;
    rep.distribution = D.name;
    rep.rank = D.rank();
    if (D.empty())
        throw DistributionError("distribution " + D.name + ": cannot analyse an empty distribution");
    if (S.frames.empty())
        throw DistributionError("distribution " + D.name + ": no valid sample points");

    const int k = D.rank();
    std::vector<Mat> squares;
    for (const PointFrame& F : S.frames) {
        const Mat V = D.basis(F.p);
        const Mat gram = restricted_gram(F, V, D.name);
        const TNDecomposition tn = tn_decompose(F);
        const Mat tV = tn.t * V;
        const Mat C = gram.partialPivLu().solve(V.transpose() * F.g * tV);

        for (int j = 0; j < k; ++j) {
            const double len = (F.T * V.col(j)).norm();
            const Vec leak = tV.col(j) - V * C.col(j);
            rep.closure_residual = std::max(rep.closure_residual, (F.T * leak).norm() / len);
            rep.max_t_ratio = std::max(rep.max_t_ratio, (F.T * tV.col(j)).norm() / len);
            if (F.codim() > 0)
                rep.max_n_ratio = std::max(rep.max_n_ratio, (F.N * (tn.n * V.col(j))).norm() / len);
        }
        const Mat pairing = V.transpose() * F.g * tV;
        rep.antisymmetry_residual =
            std::max(rep.antisymmetry_residual, (pairing + pairing.transpose()).cwiseAbs().maxCoeff());

        Mat C2 = C * C;
        rep.lambdas.push_back(C2.trace() / k);
        squares.push_back(std::move(C2));
    }
    rep.points = static_cast<int>(S.frames.size());

    double sum = 0.0;
    for (double l : rep.lambdas)
        sum += l;
    rep.lambda_hat = sum / rep.points;
    const auto [mn, mx] = std::minmax_element(rep.lambdas.begin(), rep.lambdas.end());
    rep.lambda_spread = *mx - *mn;
    const double scale = std::max(1.0, std::abs(rep.lambda_hat));
    for (const Mat& C2 : squares)
        rep.t2_deviation = std::max(rep.t2_deviation,
                                    (C2 - rep.lambda_hat * Mat::Identity(k, k)).cwiseAbs().maxCoeff() / scale);

    if (rep.max_t_ratio <= tol.classification) {
        rep.classification = SlantClass::AntiInvariant;
    } else if (rep.t2_deviation > tol.not_slant || rep.closure_residual > tol.not_slant) {
        rep.classification = SlantClass::NotSlant;
        rep.note = rep.closure_residual > tol.not_slant ? "t does not preserve the distribution"
                                                        : "t^2 is not a constant multiple of the identity";
    } else if (std::abs(rep.lambda_hat - 1.0) <= tol.classification) {
        if (rep.max_n_ratio <= tol.classification) {
            rep.classification = SlantClass::Invariant;
        } else {
            rep.classification = SlantClass::NotSlant;
            rep.note = "t^2 = I but n does not vanish";
        }
    } else if (std::abs(rep.lambda_hat) <= tol.classification) {
        rep.classification = SlantClass::NotSlant;
        rep.note = "t is nilpotent but not zero";
    } else {
        rep.classification = SlantClass::ProperSlant;
        if (rep.lambda_hat > 0.0 && rep.lambda_hat < 1.0)
            rep.note = "slant angle theta with cos^2(theta) = lambda: theta = " +
                       std::to_string(std::acos(std::sqrt(rep.lambda_hat))) + " rad";
    }
    return rep;
}

namespace {

SignedIdentity pick_sign(double plus, double minus)
{
    SignedIdentity s;
    s.plus_residual = plus;
    s.minus_residual = minus;
    if (minus < plus) {
        s.sign = -1;
        s.residual = minus;
    } else {
        s.sign = 1;
        s.residual = plus;
    }
    return s;
}

} // namespace

IdentityReport verify_t_identities(const SampleSet& S, const Distribution& D, double lambda)
{
    IdentityReport rep;
    rep.lambda = lambda;
    double t_plus = 0, t_minus = 0, n_plus = 0, n_minus = 0;
    for (const PointFrame& F : S.frames) {
        const Mat V = D.basis(F.p);
        const TNDecomposition tn = tn_decompose(F);
        const Mat tV = tn.t * V;
        const Mat nV = tn.n * V;
        for (int a = 0; a < V.cols(); ++a) {
            for (int b = 0; b < V.cols(); ++b) {
                const double gXY = F.metric(V.col(a), V.col(b));
                const double gt = F.metric(tV.col(a), tV.col(b));
                const double gn = nV.col(a).dot(F.normal_gram * nV.col(b));
                t_plus = std::max(t_plus, std::abs(gt - lambda * gXY));
                t_minus = std::max(t_minus, std::abs(gt + lambda * gXY));
                n_plus = std::max(n_plus, std::abs(gn - (1.0 - lambda) * gXY));
                n_minus = std::max(n_minus, std::abs(gn + (1.0 - lambda) * gXY));
            }
            const Vec tpn = tn.tp * nV.col(a) - (1.0 - lambda) * V.col(a);
            rep.tprime_n_residual = std::max(rep.tprime_n_residual, (F.T * tpn).norm());
            if (F.codim() > 0) {
                const Vec npn = tn.np * nV.col(a) + tn.n * tV.col(a);
                rep.nprime_n_residual = std::max(rep.nprime_n_residual, (F.N * npn).norm());
            }
        }
    }
    rep.t_pair = pick_sign(t_plus, t_minus);
    rep.n_pair = pick_sign(n_plus, n_minus);
    return rep;
}

OmegaValues omega_and_domega(const PointFrame& F, const FieldJet& X, const FieldJet& Y, const FieldJet& Z)
{
    const int d = F.dim();
    const Mat GP = F.G * F.P;
    const Mat W = F.T.transpose() * GP * F.T; // omega on coordinate fields
    std::vector<Mat> dW(d, Mat(d, d));
    for (int i = 0; i < d; ++i)
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                dW[i](a, b) = F.d2(i, a).dot(GP * F.T.col(b)) + F.T.col(a).dot(GP * F.d2(i, b));

    auto omega = [&](const Vec& U, const Vec& V) { return U.dot(W * V); };
    // Derivative of the scalar omega(U, V) along the direction A.
    auto directional = [&](const Vec& A, const FieldJet& U, const FieldJet& V) {
        double s = 0.0;
        for (int i = 0; i < d; ++i) {
            if (A[i] == 0.0)
                continue;
            const double di = U.jac.col(i).dot(W * V.value) + U.value.dot(W * V.jac.col(i)) +
                              U.value.dot(dW[i] * V.value);
            s += A[i] * di;
        }
        return s;
    };
    auto bracket = [](const FieldJet& U, const FieldJet& V) {
        return Vec(V.derivative_along(U.value) - U.derivative_along(V.value));
    };

    OmegaValues out;
    out.omega = omega(X.value, Y.value);
    const double derivs = directional(X.value, Y, Z) + directional(Y.value, Z, X) + directional(Z.value, X, Y);
    const double brackets = omega(bracket(X, Y), Z.value) + omega(bracket(Y, Z), X.value) + omega(bracket(Z, X), Y.value);
    out.domega = (derivs - brackets) / 3.0;
    return out;
}

} // namespace parageo
