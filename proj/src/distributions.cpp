#include "parageo/distributions.hpp"

#include <algorithm>
#include <cmath>

namespace parageo {

const char* to_string(DecompositionVerdict v)
{
    switch (v) {
    case DecompositionVerdict::ProperPRPseudoSlant: return "ProperPRPseudoSlant";
    case DecompositionVerdict::PRSubmanifold: return "PRSubmanifold";
    case DecompositionVerdict::Invariant: return "Invariant";
    case DecompositionVerdict::AntiInvariant: return "AntiInvariant";
    case DecompositionVerdict::NotPRPseudoSlant: return "NotPRPseudoSlant";
    }
    return "?";
}

DecompReport check_decomposition(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                 const Tolerances& tol)
{
    DecompReport rep;
    rep.d1 = Dbot.rank();
    rep.d2 = Dlam.rank();
    if (S.frames.empty())
        throw DistributionError("decomposition: no valid sample points");
    const int d = S.frames.front().dim();

    rep.span_ratio = 1.0;
    for (const PointFrame& F : S.frames) {
        const Mat Vb = Dbot.basis(F.p);
        const Mat Vl = Dlam.basis(F.p);
        if (rep.d1 > 0)
            restricted_gram(F, Vb, Dbot.name);
        if (rep.d2 > 0)
            restricted_gram(F, Vl, Dlam.name);
        if (rep.d1 > 0 && rep.d2 > 0)
            rep.orthogonality_residual =
                std::max(rep.orthogonality_residual, (Vb.transpose() * F.g * Vl).cwiseAbs().maxCoeff());

        Mat both(d, rep.d1 + rep.d2);
        both << Vb, Vl;
        if (both.cols() > 0) {
            Eigen::JacobiSVD<Mat> svd(F.T * both);
            const auto& sv = svd.singularValues();
            const double ratio = both.cols() == d && sv[0] > 0 ? sv[sv.size() - 1] / sv[0] : 0.0;
            rep.span_ratio = std::min(rep.span_ratio, ratio);
        } else {
            rep.span_ratio = 0.0;
        }

        if (rep.d1 > 0) {
            const TNDecomposition tn = tn_decompose(F);
            for (int j = 0; j < rep.d1; ++j)
                rep.anti_invariance_residual =
                    std::max(rep.anti_invariance_residual, (F.T * (tn.t * Vb.col(j))).norm() / (F.T * Vb.col(j)).norm());
        }
    }

    if (rep.d2 > 0) {
        rep.slant = slant_analyze(S, Dlam, tol);
        rep.lambda = rep.slant->lambda_hat;
    }

    auto fail = [&](std::string why) {
        rep.verdict = DecompositionVerdict::NotPRPseudoSlant;
        rep.reason = std::move(why);
        return rep;
    };
    if (rep.d1 + rep.d2 != d)
        return fail("ranks " + std::to_string(rep.d1) + " + " + std::to_string(rep.d2) + " do not sum to " +
                    std::to_string(d));
    if (rep.orthogonality_residual > tol.classification)
        return fail("factors are not g-orthogonal");
    if (rep.span_ratio <= 1e-10)
        return fail("factors do not span TM");
    if (rep.anti_invariance_residual > tol.classification)
        return fail(Dbot.name + " is not anti-invariant");

    if (rep.d2 == 0) {
        rep.verdict = DecompositionVerdict::AntiInvariant;
        rep.reason = "no slant factor";
        return rep;
    }
    switch (rep.slant->classification) {
    case SlantClass::NotSlant:
        return fail(Dlam.name + " is not slant: " + rep.slant->note);
    case SlantClass::AntiInvariant:
        rep.verdict = DecompositionVerdict::AntiInvariant;
        rep.reason = Dlam.name + " is itself anti-invariant";
        rep.lambda = 0.0;
        return rep;
    case SlantClass::Invariant:
        rep.verdict = rep.d1 == 0 ? DecompositionVerdict::Invariant : DecompositionVerdict::PRSubmanifold;
        rep.reason = rep.d1 == 0 ? "no anti-invariant factor, slant coefficient 1" : "slant coefficient 1";
        return rep;
    case SlantClass::ProperSlant:
        if (rep.d1 == 0)
            return fail("no anti-invariant factor: proper slant submanifold");
        rep.verdict = DecompositionVerdict::ProperPRPseudoSlant;
        rep.proper = true;
        rep.reason = "d1 * d2 != 0 and proper slant factor";
        return rep;
    }
    return rep;
}

TangentVec projection(const PointFrame& F, const Distribution& D, const TangentVec& X)
{
    const Mat V = D.basis(F.p);
    restricted_gram(F, V, D.name);
    return F.tangent(project_onto(F, V, X.c));
}

namespace {

double out_of_span(const PointFrame& F, const Mat& V, const Vec& b)
{
    return (F.T * (b - project_onto(F, V, b))).norm();
}

BracketReport run_oracle(const SampleSet& S, const Distribution& D, const Tolerances& tol, bool include_diagonal,
                         bool use_connection)
{
    BracketReport rep;
    rep.distribution = D.name;
    if (D.empty()) {
        rep.verdict = Verdict::Vacuous;
        return rep;
    }
    for (const PointFrame& F : S.frames) {
        const Mat V = D.basis(F.p);
        restricted_gram(F, V, D.name);
        const auto J = D.jets(F.p);
        for (int a = 0; a < D.rank(); ++a)
            for (int b = include_diagonal ? 0 : a + 1; b < D.rank(); ++b) {
                const Vec v = use_connection ? induced_connection(F, J[a], J[b]).c : lie_bracket(F, J[a], J[b]).c;
                rep.max_residual = std::max(rep.max_residual, out_of_span(F, V, v));
            }
    }
    rep.verdict = grade(rep.max_residual, tol.condition, tol.structural);
    return rep;
}

// Per-frame quantities shared by the four printed conditions.
struct FrameData {
    const PointFrame& F;
    TNDecomposition tn;
    Mat Vb, Vl;
    std::vector<FieldJet> Jb, Jl;

    FrameData(const PointFrame& frame, const Distribution& Dbot, const Distribution& Dlam)
        : F(frame), tn(tn_decompose(frame)), Vb(Dbot.basis(frame.p)), Vl(Dlam.basis(frame.p)), Jb(Dbot.jets(frame.p)),
          Jl(Dlam.jets(frame.p))
    {
    }

    Vec P_of(const Vec& X) const { return F.P * (F.T * X); }
    Vec t_of(const Vec& X) const { return tn.t * X; }
    Vec nt_of(const Vec& X) const { return F.N * (tn.n * (tn.t * X)); }
    // g(A_zeta U, W) = <h(U, W), zeta>
    double shape(const Vec& zeta, const Vec& U, const Vec& W) const { return F.ambient_inner(F.sff(U, W), zeta); }
};

ConditionReport finish(ConditionReport rep, bool vacuous, const BracketReport& oracle, const Tolerances& tol)
{
    rep.oracle_residual = oracle.max_residual;
    rep.oracle = oracle.verdict == Verdict::Vacuous ? Verdict::Pass : oracle.verdict;
    if (vacuous) {
        rep.condition = Verdict::Vacuous;
        rep.agree = rep.oracle == Verdict::Pass;
    } else {
        rep.condition = grade(rep.condition_residual, tol.condition, tol.structural);
        rep.agree = rep.condition == rep.oracle;
    }
    if (rep.identity_residual > tol.identity) {
        rep.verdict = Verdict::Fail;
        rep.detail = "linking identity violated";
    } else if (!rep.agree) {
        rep.verdict = Verdict::Fail;
        rep.detail = std::string("condition ") + to_string(rep.condition) + " but oracle " + to_string(rep.oracle);
    } else {
        rep.verdict = vacuous ? Verdict::Vacuous : Verdict::Pass;
        rep.detail = std::string("property ") + (rep.oracle == Verdict::Pass ? "holds" : "fails") +
                     (vacuous ? " (condition vacuous)" : "; condition agrees");
    }
    return rep;
}

bool is_vacuous(const Distribution& Dbot, const Distribution& Dlam, double lambda, const Tolerances& tol)
{
    return Dbot.empty() || Dlam.empty() || std::abs(lambda) <= tol.classification;
}

} // namespace

BracketReport integrability_test(const SampleSet& S, const Distribution& D, const Tolerances& tol)
{
    return run_oracle(S, D, tol, false, false);
}

BracketReport geodesic_test(const SampleSet& S, const Distribution& D, const Tolerances& tol)
{
    return run_oracle(S, D, tol, true, true);
}

ConditionReport integrability_condition_Dbot(const SampleSet& S, const Distribution& Dbot,
                                                const Distribution& Dlam, double lambda, const Tolerances& tol)
{
    ConditionReport rep;
    rep.name = "integrability of " + Dbot.name;
    const bool vacuous = is_vacuous(Dbot, Dlam, lambda, tol);
    if (!Dbot.empty() && !Dlam.empty()) {
        for (const PointFrame& F : S.frames) {
            FrameData fd(F, Dbot, Dlam);
            for (int a = 0; a < Dbot.rank(); ++a)
                for (int b = a + 1; b < Dbot.rank(); ++b) {
                    const Vec X = fd.Vb.col(a), Y = fd.Vb.col(b);
                    const Vec br = lie_bracket(F, fd.Jb[a], fd.Jb[b]).c;
                    for (int c = 0; c < Dlam.rank(); ++c) {
                        const Vec Z = fd.Vl.col(c);
                        const Vec tZ = fd.t_of(Z);
                        const double lhs = fd.shape(fd.P_of(Y), X, tZ);
                        const double rhs = fd.shape(fd.P_of(X), Y, tZ);
                        rep.condition_residual = std::max(rep.condition_residual, std::abs(lhs - rhs));
                        rep.identity_residual =
                            std::max(rep.identity_residual, std::abs(lambda * F.metric(br, Z) - (lhs - rhs)));
                    }
                }
        }
    }
    return finish(rep, vacuous, integrability_test(S, Dbot, tol), tol);
}

ConditionReport integrability_condition_Dlam(const SampleSet& S, const Distribution& Dbot,
                                                const Distribution& Dlam, double lambda, const Tolerances& tol)
{
    ConditionReport rep;
    rep.name = "integrability of " + Dlam.name;
    const bool vacuous = is_vacuous(Dbot, Dlam, lambda, tol);
    if (!Dbot.empty() && !Dlam.empty()) {
        for (const PointFrame& F : S.frames) {
            FrameData fd(F, Dbot, Dlam);
            for (int a = 0; a < Dbot.rank(); ++a) {
                const Vec X = fd.Vb.col(a);
                const Vec PX = fd.P_of(X);
                for (int c = 0; c < Dlam.rank(); ++c)
                    for (int e = c + 1; e < Dlam.rank(); ++e) {
                        const Vec Z = fd.Vl.col(c), W = fd.Vl.col(e);
                        const double left = fd.shape(fd.nt_of(Z), X, W) - fd.shape(PX, fd.t_of(Z), W);
                        const double right = fd.shape(fd.nt_of(W), X, Z) - fd.shape(PX, fd.t_of(W), Z);
                        const Vec br = lie_bracket(F, fd.Jl[c], fd.Jl[e]).c;
                        rep.condition_residual = std::max(rep.condition_residual, std::abs(left - right));
                        rep.identity_residual =
                            std::max(rep.identity_residual, std::abs(lambda * F.metric(br, X) - (right - left)));
                    }
            }
        }
    }
    return finish(rep, vacuous, integrability_test(S, Dlam, tol), tol);
}

ConditionReport foliation_condition_Dbot(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                         double lambda, const Tolerances& tol)
{
    ConditionReport rep;
    rep.name = "totally geodesic " + Dbot.name;
    const bool vacuous = is_vacuous(Dbot, Dlam, lambda, tol);
    if (!Dbot.empty() && !Dlam.empty()) {
        for (const PointFrame& F : S.frames) {
            FrameData fd(F, Dbot, Dlam);
            for (int a = 0; a < Dbot.rank(); ++a)
                for (int b = 0; b < Dbot.rank(); ++b) {
                    const Vec X = fd.Vb.col(a), Y = fd.Vb.col(b);
                    const Vec nabla = induced_connection(F, fd.Jb[a], fd.Jb[b]).c;
                    for (int c = 0; c < Dlam.rank(); ++c) {
                        const Vec Z = fd.Vl.col(c);
                        const double lhs = fd.shape(fd.P_of(Y), X, fd.t_of(Z));
                        const double rhs = fd.shape(fd.nt_of(Z), X, Y);
                        rep.condition_residual = std::max(rep.condition_residual, std::abs(lhs - rhs));
                        rep.identity_residual =
                            std::max(rep.identity_residual, std::abs(lambda * F.metric(nabla, Z) - (lhs - rhs)));
                    }
                }
        }
    }
    return finish(rep, vacuous, geodesic_test(S, Dbot, tol), tol);
}

ConditionReport foliation_condition_Dlam(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                         double lambda, const Tolerances& tol)
{
    ConditionReport rep;
    rep.name = "totally geodesic " + Dlam.name;
    const bool vacuous = is_vacuous(Dbot, Dlam, lambda, tol);
    if (!Dbot.empty() && !Dlam.empty()) {
        for (const PointFrame& F : S.frames) {
            FrameData fd(F, Dbot, Dlam);
            for (int a = 0; a < Dbot.rank(); ++a) {
                const Vec X = fd.Vb.col(a);
                const Vec PX = fd.P_of(X);
                for (int c = 0; c < Dlam.rank(); ++c)
                    for (int e = 0; e < Dlam.rank(); ++e) {
                        const Vec Z = fd.Vl.col(c), W = fd.Vl.col(e);
                        const Vec nabla = induced_connection(F, fd.Jl[c], fd.Jl[e]).c;
                        const double lhs = fd.shape(fd.nt_of(W), Z, X);
                        const double rhs = fd.shape(PX, Z, fd.t_of(W));
                        rep.condition_residual = std::max(rep.condition_residual, std::abs(lhs - rhs));
                        rep.identity_residual =
                            std::max(rep.identity_residual, std::abs(lambda * F.metric(nabla, X) - (lhs - rhs)));
                    }
            }
        }
    }
    return finish(rep, vacuous, geodesic_test(S, Dlam, tol), tol);
}

} // namespace parageo
