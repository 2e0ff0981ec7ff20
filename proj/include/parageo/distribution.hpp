#ifndef PARAGEO_DISTRIBUTION_HPP
#define PARAGEO_DISTRIBUTION_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "parageo/submanifold.hpp"

namespace parageo {

class DistributionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sub-bundle of TM spanned by k generating vector fields. A rank-zero
/// distribution (no generators) is allowed and stands for the zero bundle.
struct Distribution {
    std::string name;
    std::vector<VectorField> gens;

    int rank() const { return static_cast<int>(gens.size()); }
    bool empty() const { return gens.empty(); }

    /// d x k matrix whose columns are the generators at p.
    Mat basis(const Vec& p) const;
    std::vector<FieldJet> jets(const Vec& p) const;
};

/// Gram matrix V^T g V of the generators at a frame; throws
/// DistributionError when the generators are dependent or the restricted
/// metric is degenerate.
Mat restricted_gram(const PointFrame& F, const Mat& V, const std::string& name);

/// g-orthogonal projection of the coefficient vector X onto span(V).
Vec project_onto(const PointFrame& F, const Mat& V, const Vec& X);

} // namespace parageo

#endif // PARAGEO_DISTRIBUTION_HPP
