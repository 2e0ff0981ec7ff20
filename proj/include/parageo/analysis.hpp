#ifndef PARAGEO_ANALYSIS_HPP
#define PARAGEO_ANALYSIS_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "parageo/scene.hpp"

namespace parageo {

/// A numerical guard stopped the pipeline (no valid points, degenerate
/// distribution, singular frame at a required point).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A stated value that disagrees with the computed one. Reported, never
/// silently corrected.
struct Discrepancy {
    std::string quantity;
    std::string stated;
    std::string computed;
    std::string note;
};

struct WarpedResult {
    std::string name;
    WarpOrientation orientation = WarpOrientation::SlantBase;
    std::string f_source;
    WarpedSplit split;
    CheckGroup detection;
    CheckGroup connection;
    CheckGroup characterization;
    TrivialityReport triviality;
    ObstructionReport obstruction;
};

enum class Command { VerifyAmbient, Analyze, CheckSlant, CheckWarped };

const char* to_string(Command c);

struct AnalysisReport {
    std::string command;
    std::string scene;
    std::string description;
    std::string target;
    int dim = 0;
    int ambient_dim = 0;
    SamplePlan plan;
    Tolerances tol;
    int total_points = 0;
    int valid_points = 0;
    std::vector<SkippedPoint> skipped;

    StructureReport structure;
    std::optional<Vec> center;
    std::optional<Mat> metric_at_center;
    std::vector<CheckGroup> suites;
    std::vector<SlantReport> slant;
    std::optional<DecompReport> decomposition;
    std::vector<BracketReport> integrability;
    std::vector<BracketReport> geodesic;
    std::vector<ConditionReport> conditions;
    std::vector<WarpedResult> warped;
    std::vector<Discrepancy> discrepancies;

    bool has_fail() const;
};

/// Runs the pipeline for one command. `target` names the distribution for
/// CheckSlant and the warped declaration for CheckWarped. Throws SceneError
/// for unknown targets and NumericalError when a guard stops the run.
AnalysisReport run_analysis(const Scene& scene, Command command, const std::string& target = {});

} // namespace parageo

#endif // PARAGEO_ANALYSIS_HPP
