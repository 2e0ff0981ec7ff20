#ifndef PARAGEO_PARASTRUCTURE_HPP
#define PARAGEO_PARASTRUCTURE_HPP

#include <string>
#include <vector>

#include "parageo/distribution.hpp"
#include "parageo/verdict.hpp"

namespace parageo {

/// P split into tangential and normal parts at a frame:
///   P(T X)  = T (t X)   + N (n X)
///   P(N z)  = T (t' z)  + N (n' z)
/// All blocks act on frame coefficients (T columns, N columns).
struct TNDecomposition {
    Mat t;  // d x d
    Mat n;  // (2m-d) x d
    Mat tp; // d x (2m-d)
    Mat np; // (2m-d) x (2m-d)
};

TNDecomposition tn_decompose(const PointFrame& F);

struct RecompositionResidual {
    double tangent = 0.0; // max |P T - (T t + N n)|
    double normal = 0.0;  // max |P N - (T t' + N n')|
};

RecompositionResidual recomposition_residual(const PointFrame& F, const TNDecomposition& tn);

enum class SlantClass { Invariant, AntiInvariant, ProperSlant, NotSlant };

const char* to_string(SlantClass c);

struct SlantReport {
    std::string distribution;
    int rank = 0;
    SlantClass classification = SlantClass::NotSlant;
    double lambda_hat = 0.0;
    std::vector<double> lambdas; // per valid point, trace(t_D^2) / k
    double lambda_spread = 0.0;
    double t2_deviation = 0.0;   // max |t_D^2 - lambda_hat I|, relative to max(1, |lambda_hat|)
    double closure_residual = 0.0;     // max |t X - proj_D(t X)| / |X| over generators
    double antisymmetry_residual = 0.0; // max |g(tX,Y) + g(X,tY)|
    double max_t_ratio = 0.0;          // max |t X| / |X|
    double max_n_ratio = 0.0;          // max |n X| / |X|
    int points = 0;
    std::string note;
};

/// Restrict t to D, fit t_D^2 = lambda I by least squares over all frames and
/// classify. Throws DistributionError for a degenerate restriction.
SlantReport slant_analyze(const SampleSet& S, const Distribution& D, const Tolerances& tol);

/// The pairing identities on a slant distribution are checked with a
/// measured sign: g(tX,tY) = s_t lambda g(X,Y) and <nX,nY> = s_n (1-lambda) g(X,Y).
struct SignedIdentity {
    int sign = 1;
    double residual = 0.0;       // with the measured sign
    double plus_residual = 0.0;  // with sign +1
    double minus_residual = 0.0; // with sign -1
};

struct IdentityReport {
    double lambda = 0.0;
    SignedIdentity t_pair;
    SignedIdentity n_pair;
    double tprime_n_residual = 0.0; // |t' n X - (1 - lambda) X|
    double nprime_n_residual = 0.0; // |n' n X + n t X|
};

IdentityReport verify_t_identities(const SampleSet& S, const Distribution& D, double lambda);

struct OmegaValues {
    double omega = 0.0;  // omega(X, Y)
    double domega = 0.0; // d omega(X, Y, Z)
};

/// omega(X, Y) = <X, P Y> on tangent representatives and its exterior
/// derivative from exact directional derivatives and Lie brackets.
OmegaValues omega_and_domega(const PointFrame& F, const FieldJet& X, const FieldJet& Y, const FieldJet& Z);

} // namespace parageo

#endif // PARAGEO_PARASTRUCTURE_HPP
