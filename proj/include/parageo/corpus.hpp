#ifndef PARAGEO_CORPUS_HPP
#define PARAGEO_CORPUS_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace parageo {

/// Built-in scenes. All are exact parametrisations with known answers.

/// Cone-type immersion into R^6: warped product with f = x1 and slant
/// coefficient 1/2 on the base.
std::string example_scene_text();

/// Slant plane times a circle in R^8, warping function 1.
std::string product_scene_text();

/// P-invariant surface in R^4 with null coordinate directions.
std::string invariant_scene_text();

/// Quadratic graph in the +1 eigenspace of R^6 (anti-invariant).
std::string anti_invariant_scene_text();

/// Slant plane times an anti-invariant quadric surface in R^10, rotated by a
/// random diag(Q, Q), Q orthogonal. Deterministic in the seed.
std::string random_product_scene_text(std::uint64_t seed);

/// The product scene declared with the anti-invariant factor as base and a
/// given candidate warping function.
std::string obstruction_scene_text(const std::string& f);

struct CorpusEntry {
    std::string name;
    std::string text;
};

/// The six scenes used for the printed-condition agreement check.
std::vector<CorpusEntry> agreement_corpus();

} // namespace parageo

#endif // PARAGEO_CORPUS_HPP
