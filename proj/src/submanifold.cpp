#include "parageo/submanifold.hpp"

#include <cmath>
#include <random>

namespace parageo {

namespace {

constexpr double kRankThreshold = 1e-10;
constexpr double kDetThreshold = 1e-10;
constexpr double kInset = 0.05;

void require_point(const PointFrame& F, const Vec& at)
{
    if (at.size() != F.p.size() || (at.size() > 0 && (at - F.p).cwiseAbs().maxCoeff() != 0.0))
        throw std::invalid_argument("vector belongs to a different point");
}

struct CoordinateJets {
    Mat T;
    std::vector<Vec> d2;
};

CoordinateJets coordinate_jets(const Immersion& M, const Vec& p)
{
    const int d = M.dim();
    const int n = M.ambient().dim();
    CoordinateJets cj;
    cj.T.resize(n, d);
    cj.d2.assign(static_cast<std::size_t>(d * d), Vec::Zero(n));
    for (int a = 0; a < n; ++a) {
        Jet2 j;
        try {
            j = eval_jet2(M.coords()[a], p);
        } catch (const EvalError& e) {
            throw FrameError(FrameErrorKind::Evaluation, std::string("coordinate ") + std::to_string(a + 1) + ": " + e.what());
        }
        cj.T.row(a) = j.grad.transpose();
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                cj.d2[i * d + k][a] = j.hess(i, k);
    }
    return cj;
}

// Uniform double in [0, 1) from the top 53 bits; portable across libraries.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

bool Domain::contains(const Vec& p) const
{
    if (p.size() != lo.size())
        return false;
    for (int i = 0; i < p.size(); ++i)
        if (!(p[i] >= lo[i] && p[i] <= hi[i]))
            return false;
    return true;
}

bool Domain::excluded_at(const Vec& p) const
{
    for (const auto& ex : excluded) {
        const double span = std::max(1.0, std::abs(hi[ex.var] - lo[ex.var]));
        if (std::abs(p[ex.var] - ex.value) <= 1e-9 * span)
            return true;
    }
    return false;
}

Immersion::Immersion(AmbientSpace ambient, std::vector<Expr> coords, Domain domain, SamplePlan plan)
    : ambient_(std::move(ambient)), coords_(std::move(coords)), domain_(std::move(domain)), plan_(plan)
{
    if (static_cast<int>(coords_.size()) != ambient_.dim())
        throw std::invalid_argument("immersion: expected " + std::to_string(ambient_.dim()) +
                                    " coordinate expressions, got " + std::to_string(coords_.size()));
    dim_ = coords_.empty() ? 0 : coords_.front().dim();
    if (dim_ < 1 || dim_ > ambient_.dim())
        throw std::invalid_argument("immersion: parameter dimension must be between 1 and the ambient dimension");
    for (const auto& c : coords_)
        if (c.dim() != dim_)
            throw std::invalid_argument("immersion: coordinate expressions disagree on the parameter dimension");
    if (domain_.lo.size() != dim_ || domain_.hi.size() != dim_)
        throw std::invalid_argument("immersion: domain bounds must have one entry per parameter");
    for (int i = 0; i < dim_; ++i)
        if (!(domain_.lo[i] < domain_.hi[i]))
            throw std::invalid_argument("immersion: domain lower bound must be below upper bound for x" +
                                        std::to_string(i + 1));
    for (const auto& ex : domain_.excluded)
        if (ex.var < 0 || ex.var >= dim_)
            throw std::invalid_argument("immersion: excluded hyperplane refers to an unknown parameter");
    if (plan_.grid < 0 || plan_.random < 0)
        throw std::invalid_argument("immersion: sample counts must be nonnegative");
}

std::vector<Vec> Immersion::sample_points() const
{
    std::vector<Vec> pts;
    const Vec& lo = domain_.lo;
    const Vec span = domain_.hi - domain_.lo;
    const int k = plan_.grid;
    if (k > 0) {
        std::vector<int> idx(dim_, 0);
        for (;;) {
            Vec p(dim_);
            for (int i = 0; i < dim_; ++i) {
                const double t = (k == 1) ? 0.5 : kInset + (1.0 - 2 * kInset) * idx[i] / (k - 1);
                p[i] = lo[i] + t * span[i];
            }
            pts.push_back(std::move(p));
            int axis = dim_ - 1;
            while (axis >= 0 && ++idx[axis] == k)
                idx[axis--] = 0;
            if (axis < 0)
                break;
        }
    }
    std::mt19937_64 rng(plan_.seed);
    for (int r = 0; r < plan_.random; ++r) {
        Vec p(dim_);
        for (int i = 0; i < dim_; ++i)
            p[i] = lo[i] + (kInset + (1.0 - 2 * kInset) * unit_uniform(rng)) * span[i];
        pts.push_back(std::move(p));
    }
    return pts;
}

const char* to_string(FrameErrorKind kind)
{
    switch (kind) {
    case FrameErrorKind::OutsideDomain: return "OutsideDomain";
    case FrameErrorKind::Evaluation: return "Evaluation";
    case FrameErrorKind::RankDeficient: return "RankDeficient";
    case FrameErrorKind::DegenerateMetric: return "DegenerateMetric";
    case FrameErrorKind::DegenerateNormal: return "DegenerateNormal";
    }
    return "Unknown";
}

FrameError::FrameError(FrameErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

Vec PointFrame::ambient(const TangentVec& X) const
{
    require_point(*this, X.at);
    return T * X.c;
}

Vec PointFrame::ambient(const NormalVec& z) const
{
    require_point(*this, z.at);
    return N * z.c;
}

Vec PointFrame::sff(const Vec& X, const Vec& Y) const
{
    const int d = dim();
    Vec out = Vec::Zero(T.rows());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (X[i] != 0.0 && Y[j] != 0.0)
                out += X[i] * Y[j] * h(i, j);
    return out;
}

Mat PointFrame::shape_matrix(const Vec& zeta) const
{
    const int d = dim();
    Mat H(d, d);
    const Vec Gz = G * zeta;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            H(i, j) = h(i, j).dot(Gz);
    return g_inv * H;
}

std::vector<Mat> PointFrame::metric_derivatives() const
{
    const int d = dim();
    std::vector<Mat> dg(d, Mat::Zero(d, d));
    const Mat GT = G * T;
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                dg[k](i, j) = d2(k, i).dot(GT.col(j)) + GT.col(i).dot(d2(k, j));
    return dg;
}

PointFrame frame_at(const Immersion& M, const Vec& p)
{
    if (!M.domain().contains(p))
        throw FrameError(FrameErrorKind::OutsideDomain, "point outside the parameter domain");
    if (M.domain().excluded_at(p))
        throw FrameError(FrameErrorKind::OutsideDomain, "point on an excluded hyperplane");

    const int d = M.dim();
    const int n = M.ambient().dim();
    CoordinateJets cj = coordinate_jets(M, p);

    PointFrame F;
    F.p = p;
    F.P = M.ambient().P();
    F.G = M.ambient().G();
    F.T = std::move(cj.T);
    F.d2_ = std::move(cj.d2);

    Eigen::JacobiSVD<Mat> svd(F.T);
    const auto& sv = svd.singularValues();
    const double scale = sv.size() ? sv[0] : 0.0;
    if (scale == 0.0 || sv[sv.size() - 1] <= kRankThreshold * scale)
        throw FrameError(FrameErrorKind::RankDeficient, "tangent frame has rank below " + std::to_string(d));

    F.g = F.T.transpose() * F.G * F.T;
    const double max_col = F.T.colwise().norm().maxCoeff();
    Eigen::PartialPivLU<Mat> glu(F.g);
    if (std::abs(glu.determinant()) < kDetThreshold * std::pow(max_col, 2 * d))
        throw FrameError(FrameErrorKind::DegenerateMetric, "induced metric is degenerate");
    F.g_inv = glu.inverse();

    // Columns of Q past the first d span the Euclidean complement of range(G T),
    // i.e. the vectors v with T^T G v = 0.
    const Mat GT = F.G * F.T;
    Eigen::HouseholderQR<Mat> qr(GT);
    const Mat Q = qr.householderQ() * Mat::Identity(n, n);
    F.N = Q.rightCols(n - d);
    F.normal_gram = F.N.transpose() * F.G * F.N;
    if (n > d) {
        Eigen::PartialPivLU<Mat> nlu(F.normal_gram);
        if (std::abs(nlu.determinant()) < kDetThreshold)
            throw FrameError(FrameErrorKind::DegenerateNormal, "metric restricted to the normal space is degenerate");
        F.normal_gram_inv = nlu.inverse();
    } else {
        F.normal_gram_inv = Mat(0, 0);
    }

    F.h_.resize(static_cast<std::size_t>(d * d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            F.h_[i * d + j] = F.d2(i, j) - F.tangent_part(F.d2(i, j));
    return F;
}

MetricJet metric_jet(const Immersion& M, const Vec& p)
{
    const int d = M.dim();
    CoordinateJets cj = coordinate_jets(M, p);
    const Mat& G = M.ambient().G();
    const Mat GT = G * cj.T;
    MetricJet mj;
    mj.g = cj.T.transpose() * GT;
    mj.dg.assign(d, Mat::Zero(d, d));
    for (int k = 0; k < d; ++k)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                mj.dg[k](i, j) = cj.d2[k * d + i].dot(GT.col(j)) + GT.col(i).dot(cj.d2[k * d + j]);
    return mj;
}

VectorField VectorField::coordinate(int index0, int dim)
{
    VectorField X;
    for (int j = 0; j < dim; ++j)
        X.coeffs.push_back(Expr::constant(j == index0 ? 1.0 : 0.0, dim));
    return X;
}

VectorField VectorField::parse(const std::vector<std::string>& sources, int dim)
{
    if (static_cast<int>(sources.size()) != dim)
        throw std::invalid_argument("vector field needs " + std::to_string(dim) + " coefficients, got " +
                                    std::to_string(sources.size()));
    VectorField X;
    for (const auto& s : sources)
        X.coeffs.push_back(parageo::parse(s, dim));
    return X;
}

FieldJet eval_field(const VectorField& Y, const Vec& p)
{
    const int d = Y.dim();
    FieldJet fj{Vec(d), Mat(d, d)};
    for (int j = 0; j < d; ++j) {
        Jet2 c = eval_jet2(Y.coeffs[j], p);
        fj.value[j] = c.value;
        fj.jac.row(j) = c.grad.transpose();
    }
    return fj;
}

NormalVec second_fundamental_form(const PointFrame& F, const TangentVec& X, const TangentVec& Y)
{
    require_point(F, X.at);
    require_point(F, Y.at);
    return F.normal(F.normal_coeffs(F.sff(X.c, Y.c)));
}

Mat shape_operator(const PointFrame& F, const NormalVec& zeta) { return F.shape_matrix(F.ambient(zeta)); }

TangentVec induced_connection(const PointFrame& F, const FieldJet& X, const FieldJet& Y)
{
    const int d = F.dim();
    Vec second = Vec::Zero(F.T.rows());
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (X.value[i] != 0.0 && Y.value[j] != 0.0)
                second += X.value[i] * Y.value[j] * F.d2(i, j);
    return F.tangent(Y.derivative_along(X.value) + F.tangent_coeffs(second));
}

TangentVec induced_connection(const Immersion& M, const Vec& p, const VectorField& X, const VectorField& Y)
{
    const PointFrame F = frame_at(M, p);
    return induced_connection(F, eval_field(X, p), eval_field(Y, p));
}

TangentVec gradient_on_M(const PointFrame& F, const Vec& df) { return F.tangent(F.g_inv * df); }

TangentVec gradient_on_M(const Immersion& M, const Vec& p, const Expr& f)
{
    const PointFrame F = frame_at(M, p);
    return gradient_on_M(F, eval_jet2(f, p).grad);
}

TangentVec lie_bracket(const PointFrame& F, const FieldJet& X, const FieldJet& Y)
{
    return F.tangent(Y.derivative_along(X.value) - X.derivative_along(Y.value));
}

TangentVec lie_bracket(const Immersion& M, const Vec& p, const VectorField& X, const VectorField& Y)
{
    const PointFrame F = frame_at(M, p);
    return lie_bracket(F, eval_field(X, p), eval_field(Y, p));
}

SampleSet sample(const Immersion& M) { return sample(M, M.sample_points()); }

SampleSet sample(const Immersion& M, const std::vector<Vec>& points)
{
    SampleSet s;
    s.total = static_cast<int>(points.size());
    for (int i = 0; i < s.total; ++i) {
        try {
            s.frames.push_back(frame_at(M, points[i]));
            s.indices.push_back(i);
        } catch (const FrameError& e) {
            s.skipped.push_back({i, points[i], e.what()});
        }
    }
    return s;
}

} // namespace parageo
