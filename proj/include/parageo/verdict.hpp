#ifndef PARAGEO_VERDICT_HPP
#define PARAGEO_VERDICT_HPP

#include <string>

namespace parageo {

enum class Verdict { Pass, Fail, Inconclusive, Vacuous };

const char* to_string(Verdict v);

/// Residual thresholds shared by every check. `identity` bounds numerical
/// noise in exact identities, `condition` is the looser bound used when a
/// printed condition is compared against a direct oracle, and anything at or
/// above `structural` is a genuine failure.
struct Tolerances {
    double identity = 1e-8;
    double classification = 1e-8;
    double condition = 1e-7;
    double structural = 1e-3;
    double not_slant = 1e-6;
};

/// Pass at or below `pass_tol`, Fail at or above `fail_tol`, otherwise
/// Inconclusive. NaN residuals fail.
Verdict grade(double residual, double pass_tol, double fail_tol);

struct Check {
    std::string name;
    Verdict verdict = Verdict::Pass;
    double residual = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Check with the identity tolerance and structural failure threshold.
Check make_check(std::string name, double residual, const Tolerances& tol, std::string detail = {});

} // namespace parageo

#endif // PARAGEO_VERDICT_HPP
