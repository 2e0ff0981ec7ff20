#ifndef PARAGEO_WARPED_HPP
#define PARAGEO_WARPED_HPP

#include <optional>
#include <string>
#include <vector>

#include "parageo/distributions.hpp"

namespace parageo {

/// Which factor carries the warping function.
///   SlantBase:         M_lambda x_f M_perp (base spanned by the slant factor)
///   AntiInvariantBase: M_perp x_f M_lambda
enum class WarpOrientation { SlantBase, AntiInvariantBase };

const char* to_string(WarpOrientation o);

struct WarpedDecl {
    std::string name;
    std::vector<int> base;  // 0-based parameter indices
    std::vector<int> fiber; // 0-based parameter indices
    std::optional<Expr> f;  // candidate warping function
    std::string f_source;
    WarpOrientation orientation = WarpOrientation::SlantBase;
};

enum class WarpStatus { Ok, NonBlockMetric, FiberNotConformal, NonPositiveWarp };

const char* to_string(WarpStatus s);

/// Result of testing g = g_B + f^2 g_F over the sample frames. f is
/// normalised to 1 at the reference point (domain center); per-frame values
/// follow the order of SampleSet::frames.
struct WarpedSplit {
    std::string name;
    std::vector<int> base_vars, fiber_vars;
    WarpOrientation orientation = WarpOrientation::SlantBase;
    WarpStatus status = WarpStatus::Ok;
    std::string message;

    Vec reference;
    int reference_fiber = 0; // fiber index used for the ratio
    std::vector<double> f;
    std::vector<Vec> dlnf; // d ln f / dx at each frame

    double block_residual = 0.0;       // cross terms g_BF
    double base_dependence = 0.0;      // d g_BB / d x_F
    double conformal_residual = 0.0;   // g_FF(p) - f^2 g_FF(q)
    double fiber_dependence = 0.0;     // d ln f / d x_F
    double metric_law_residual = 0.0;  // g - (g_B + f^2 g_F0)
    double residual = 0.0;             // max of the above

    bool f_constant = false;
    double f_variation = 0.0; // (max f - min f) / max f

    std::optional<std::string> f_expr_fit;
    double fit_scale = 0.0;    // mean of candidate / estimate
    double fit_residual = 0.0; // spread of candidate / estimate relative to the mean

    bool ok() const { return status == WarpStatus::Ok; }
};

/// Throws std::invalid_argument unless base and fiber partition the
/// parameter indices with a nonempty fiber.
WarpedSplit detect_warped(const Immersion& M, const SampleSet& S, const WarpedDecl& decl, const Tolerances& tol);

/// A group of residual checks with an overall verdict.
struct CheckGroup {
    std::string name;
    std::vector<Check> checks;
    Verdict verdict = Verdict::Vacuous;
    std::string detail;
};

/// Connection identities of a warped metric on coordinate fields, plus the
/// base-totally-geodesic and fiber-totally-umbilical properties.
CheckGroup verify_warped_connection(const SampleSet& S, const WarpedSplit& W, const Tolerances& tol);

/// Scalar and vector forms of the characterization of M_lambda x_f M_perp
/// and X(ln f) = 0 on the anti-invariant factor.
CheckGroup characterization_test(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                 const WarpedSplit& W, double lambda, const Tolerances& tol);

struct TrivialityReport {
    bool applicable = false;
    double lambda = 0.0;
    double curvature_term = 0.0; // max |<h(X,Y), ntZ>|
    double warp_term = 0.0;      // max |lambda (Z ln f) g(X,Y)|
    double plus_residual = 0.0;  // max |lambda (Z ln f) g(X,Y) + <h(X,Y), ntZ>|
    double minus_residual = 0.0; // max |lambda (Z ln f) g(X,Y) - <h(X,Y), ntZ>|
    int measured_sign = 1;       // sign s with lambda (Z ln f) g(X,Y) + s <h, ntZ> = 0
    double identity_residual = 0.0;
    bool trivial = false;    // curvature term vanishes
    bool f_constant = false; // from the warped split
    bool consistent = false; // trivial iff f constant
    Verdict verdict = Verdict::Vacuous;
    std::string detail;
};

TrivialityReport triviality_test(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                 const WarpedSplit& W, double lambda, const Tolerances& tol);

/// Shape-operator pairings at one point for X in Dbot and Z in Dlam:
///   a = g(A_{nX} Z, tZ), b = g(A_{nX} tZ, Z), c = g(A_{nZ} X, tZ), d = g(A_{ntZ} X, Z).
struct ObstructionChain {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
};

/// Value of 2 lambda X(ln f) g(Z,Z) implied by the chain a = -L + c,
/// b = L + d (L = lambda X(ln f) g(Z,Z)).
double obstruction_from_chain(const ObstructionChain& chain);

struct ObstructionReport {
    bool applicable = false;
    double lambda = 0.0;
    double warp_term = 0.0;        // max |2 lambda X(ln f) g(Z,Z)| from the declared f
    double implied_residual = 0.0; // max |(b - a) - (d - c)|
    double symmetry_residual = 0.0; // max |a - b|
    double cd_residual = 0.0;       // max |c - d|
    double first_chain_residual = 0.0;  // max |a - (-L + c)|
    double second_chain_residual = 0.0; // max |b - (L + d)|
    bool forced_constant = false;
    bool consistent = true;
    Verdict verdict = Verdict::Vacuous;
    std::string detail;
};

/// Non-existence check for the orientation M_perp x_f M_lambda. X(ln f)
/// comes from the declared candidate when present, else from the estimate.
ObstructionReport nonexistence_obstruction(const SampleSet& S, const Distribution& Dbot, const Distribution& Dlam,
                                           const WarpedDecl& decl, const WarpedSplit& W, double lambda,
                                           const Tolerances& tol);

} // namespace parageo

#endif // PARAGEO_WARPED_HPP
