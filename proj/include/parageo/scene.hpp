#ifndef PARAGEO_SCENE_HPP
#define PARAGEO_SCENE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "parageo/warped.hpp"

namespace parageo {

/// Malformed or inconsistent scene input. The message names the offending key.
class SceneError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value the scene author expects, compared against the computed one and
/// reported as a discrepancy when they differ.
struct ReferenceValue {
    enum class Kind { SlantCoefficient, Metric, WarpingFunction };
    Kind kind = Kind::SlantCoefficient;
    std::string target; // distribution or warped declaration name
    std::string stated; // source text as written
    std::optional<Expr> value;            // slant coefficient
    std::vector<std::vector<Expr>> matrix; // metric entries
    std::string note;
};

struct Scene {
    std::string name;
    std::string description;
    AmbientSpace ambient;
    std::vector<std::string> coord_sources;
    Immersion immersion;
    std::vector<Distribution> distributions;
    std::string anti_invariant; // name of the anti-invariant factor, may be empty
    std::string slant;          // name of the slant factor, may be empty
    std::vector<WarpedDecl> warped;
    Tolerances tol;
    std::vector<ReferenceValue> references;

    /// Throws SceneError for an unknown name.
    const Distribution& distribution(const std::string& name) const;
    const WarpedDecl& warped_decl(const std::string& name) const;
    bool has_structure() const { return !anti_invariant.empty() || !slant.empty(); }
};

Scene parse_scene(std::string_view text, const std::string& origin = "<scene>");
Scene load_scene(const std::string& path);

struct SceneOverrides {
    std::optional<double> tol; // replaces the identity tolerance
    std::optional<std::uint64_t> seed;
    std::optional<int> grid;
};

void apply_overrides(Scene& scene, const SceneOverrides& o);

} // namespace parageo

#endif // PARAGEO_SCENE_HPP
