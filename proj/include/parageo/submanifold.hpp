#ifndef PARAGEO_SUBMANIFOLD_HPP
#define PARAGEO_SUBMANIFOLD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "parageo/ambient.hpp"
#include "parageo/expr.hpp"

namespace parageo {

struct ExcludedPlane {
    int var = 0; // 0-based parameter index
    double value = 0.0;
};

/// Parameter box [lo, hi] with optional excluded hyperplanes x_var = value.
struct Domain {
    Vec lo, hi;
    std::vector<ExcludedPlane> excluded;

    bool contains(const Vec& p) const;
    bool excluded_at(const Vec& p) const;
};

/// Regular grid of `grid`^d points on the interior (5% inset from every face)
/// followed by `random` seeded uniform points on the same inset box.
struct SamplePlan {
    int grid = 5;
    int random = 20;
    std::uint64_t seed = 1;
};

class Immersion {
public:
    Immersion(AmbientSpace ambient, std::vector<Expr> coords, Domain domain, SamplePlan plan = {});

    int dim() const { return dim_; }
    const AmbientSpace& ambient() const { return ambient_; }
    const std::vector<Expr>& coords() const { return coords_; }
    const Domain& domain() const { return domain_; }
    const SamplePlan& plan() const { return plan_; }
    void set_plan(SamplePlan plan) { plan_ = plan; }

    std::vector<Vec> sample_points() const;
    Vec center() const { return 0.5 * (domain_.lo + domain_.hi); }

private:
    AmbientSpace ambient_;
    std::vector<Expr> coords_;
    Domain domain_;
    SamplePlan plan_;
    int dim_;
};

enum class FrameErrorKind { OutsideDomain, Evaluation, RankDeficient, DegenerateMetric, DegenerateNormal };

const char* to_string(FrameErrorKind kind);

class FrameError : public std::runtime_error {
public:
    FrameError(FrameErrorKind kind, const std::string& message);
    FrameErrorKind kind() const { return kind_; }

private:
    FrameErrorKind kind_;
};

/// Coefficients over the coordinate frame at a point.
struct TangentVec {
    Vec at;
    Vec c;
};

/// Coefficients over the normal basis N at a point.
struct NormalVec {
    Vec at;
    Vec c;
};

/// Everything the Gauss-Weingarten layer needs at one parameter point.
/// Index convention: d2(i, j) is the ambient vector d^2 Omega / dx_i dx_j.
struct PointFrame {
    Vec p;
    Mat P, G;            // ambient structure
    Mat T;               // 2m x d, columns dOmega/dx_i
    std::vector<Vec> d2_; // d*d ambient second partials
    Mat g, g_inv;        // induced metric and inverse
    Mat N;               // 2m x (2m-d), G-orthogonal complement of span(T)
    Mat normal_gram, normal_gram_inv;
    std::vector<Vec> h_; // d*d normal parts of d2

    int dim() const { return static_cast<int>(T.cols()); }
    int codim() const { return static_cast<int>(N.cols()); }
    const Vec& d2(int i, int j) const { return d2_[i * dim() + j]; }
    /// Ambient second fundamental form of coordinate fields.
    const Vec& h(int i, int j) const { return h_[i * dim() + j]; }

    double ambient_inner(const Vec& u, const Vec& v) const { return u.dot(G * v); }
    double metric(const Vec& X, const Vec& Y) const { return X.dot(g * Y); }

    /// Block Gram solve: coefficients of the tangential / normal part of an
    /// ambient vector.
    Vec tangent_coeffs(const Vec& w) const { return g_inv * (T.transpose() * (G * w)); }
    Vec normal_coeffs(const Vec& w) const { return normal_gram_inv * (N.transpose() * (G * w)); }
    Vec tangent_part(const Vec& w) const { return T * tangent_coeffs(w); }
    Vec normal_part(const Vec& w) const { return N * normal_coeffs(w); }

    TangentVec tangent(Vec c) const { return {p, std::move(c)}; }
    NormalVec normal(Vec c) const { return {p, std::move(c)}; }
    Vec ambient(const TangentVec& X) const;
    Vec ambient(const NormalVec& z) const;

    /// Normal-valued h(X, Y) for coefficient vectors X, Y (ambient form).
    Vec sff(const Vec& X, const Vec& Y) const;
    /// Matrix of A_zeta in the coordinate frame for an ambient normal vector.
    Mat shape_matrix(const Vec& zeta) const;
    /// dg[k](i, j) = d g_ij / dx_k.
    std::vector<Mat> metric_derivatives() const;
};

PointFrame frame_at(const Immersion& M, const Vec& p);

/// Tangent frame and metric derivatives at a point without the normal-space
/// construction; used where only the induced metric is needed.
struct MetricJet {
    Mat g;
    std::vector<Mat> dg;
};
MetricJet metric_jet(const Immersion& M, const Vec& p);

/// Vector field on the parameter domain, coefficients over the coordinate
/// frame d/dx_1 .. d/dx_d.
struct VectorField {
    std::vector<Expr> coeffs;

    int dim() const { return static_cast<int>(coeffs.size()); }
    static VectorField coordinate(int index0, int dim);
    static VectorField parse(const std::vector<std::string>& sources, int dim);
};

/// Value and Jacobian (jac(j, i) = d Y^j / dx_i) of a field at a point.
struct FieldJet {
    Vec value;
    Mat jac;

    /// Directional derivative of this field along X.
    Vec derivative_along(const Vec& X) const { return jac * X; }
};

FieldJet eval_field(const VectorField& Y, const Vec& p);

NormalVec second_fundamental_form(const PointFrame& F, const TangentVec& X, const TangentVec& Y);
Mat shape_operator(const PointFrame& F, const NormalVec& zeta);

/// Tangential part of the ambient derivative of Y along X.
TangentVec induced_connection(const PointFrame& F, const FieldJet& X, const FieldJet& Y);
TangentVec induced_connection(const Immersion& M, const Vec& p, const VectorField& X, const VectorField& Y);

TangentVec gradient_on_M(const PointFrame& F, const Vec& df);
TangentVec gradient_on_M(const Immersion& M, const Vec& p, const Expr& f);

TangentVec lie_bracket(const PointFrame& F, const FieldJet& X, const FieldJet& Y);
TangentVec lie_bracket(const Immersion& M, const Vec& p, const VectorField& X, const VectorField& Y);

struct SkippedPoint {
    int index = 0;
    Vec p;
    std::string reason;
};

/// Frames at every plan point that passes the guards, in plan order.
struct SampleSet {
    std::vector<PointFrame> frames;
    std::vector<int> indices;
    std::vector<SkippedPoint> skipped;
    int total = 0;
};

SampleSet sample(const Immersion& M);
SampleSet sample(const Immersion& M, const std::vector<Vec>& points);

} // namespace parageo

#endif // PARAGEO_SUBMANIFOLD_HPP
