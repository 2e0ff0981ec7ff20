#ifndef PARAGEO_DISTRIBUTIONS_HPP
#define PARAGEO_DISTRIBUTIONS_HPP

#include <optional>
#include <string>

#include "parageo/parastructure.hpp"

namespace parageo {

enum class DecompositionVerdict {
    ProperPRPseudoSlant, // both factors nonzero, slant factor proper
    PRSubmanifold,       // both factors nonzero, slant factor invariant
    Invariant,           // no anti-invariant factor, invariant slant factor
    AntiInvariant,       // no slant factor
    NotPRPseudoSlant,
};

const char* to_string(DecompositionVerdict v);

/// TM = Dbot + Dlam with Dbot anti-invariant and Dlam slant.
struct DecompReport {
    int d1 = 0; // rank of the anti-invariant factor
    int d2 = 0; // rank of the slant factor
    double orthogonality_residual = 0.0;
    double span_ratio = 0.0;             // smallest / largest singular value of [Dbot Dlam]
    double anti_invariance_residual = 0.0; // max |t X| / |X| on Dbot
    std::optional<SlantReport> slant;
    double lambda = 0.0;
    bool proper = false; // d1 * d2 != 0 and the slant factor is proper
    DecompositionVerdict verdict = DecompositionVerdict::NotPRPseudoSlant;
    std::string reason;
};

DecompReport check_decomposition(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                 const Tolerances& tol);

/// g-orthogonal projection of X onto D at the frame's point.
TangentVec projection(const PointFrame& F, const Distribution& D, const TangentVec& X);

/// Frobenius oracle: size of the part of [X_i, X_j] outside span(D).
struct BracketReport {
    std::string distribution;
    double max_residual = 0.0;
    Verdict verdict = Verdict::Vacuous;
};

BracketReport integrability_test(const SampleSet& S, const Distribution& D, const Tolerances& tol);

/// Totally-geodesic oracle: size of the part of nabla_X Y outside D for
/// X, Y in D.
BracketReport geodesic_test(const SampleSet& S, const Distribution& D, const Tolerances& tol);

/// A printed condition checked three ways: the identity that links it to
/// the geometric property (must hold to `identity` tolerance), the
/// condition itself, and the direct oracle for the property. `agree` is
/// true when the condition and the oracle reach the same verdict.
struct ConditionReport {
    std::string name;
    double identity_residual = 0.0;
    double condition_residual = 0.0;
    Verdict condition = Verdict::Vacuous;
    double oracle_residual = 0.0;
    Verdict oracle = Verdict::Vacuous;
    bool agree = true;
    Verdict verdict = Verdict::Vacuous;
    std::string detail;
};

/// Dbot integrable iff g(A_{PY}X, tZ) = g(A_{PX}Y, tZ); linked by
/// lambda g([X,Y], Z) = g(A_{PY}X, tZ) - g(A_{PX}Y, tZ).
ConditionReport integrability_condition_Dbot(const SampleSet& S, const Distribution& Dbot,
                                                const Distribution& Dlam, double lambda, const Tolerances& tol);

/// Dlam integrable iff g(A_{ntZ}X - A_{PX}tZ, W) = g(A_{ntW}X - A_{PX}tW, Z);
/// linked by lambda g([Z,W], X) = right side - left side.
ConditionReport integrability_condition_Dlam(const SampleSet& S, const Distribution& Dbot,
                                                const Distribution& Dlam, double lambda, const Tolerances& tol);

/// Dbot totally geodesic iff g(A_{PY}X, tZ) = g(A_{ntZ}X, Y); linked by
/// lambda g(nabla_X Y, Z) = g(A_{PY}X, tZ) - g(A_{ntZ}X, Y).
ConditionReport foliation_condition_Dbot(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                         double lambda, const Tolerances& tol);

/// Dlam totally geodesic iff g(A_{ntW}Z, X) = g(A_{PX}Z, tW); linked by
/// lambda g(nabla_Z W, X) = g(A_{ntW}Z, X) - g(A_{PX}Z, tW).
ConditionReport foliation_condition_Dlam(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                         double lambda, const Tolerances& tol);

} // namespace parageo

#endif // PARAGEO_DISTRIBUTIONS_HPP
