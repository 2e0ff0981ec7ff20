#include <fstream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"

using namespace parageo;

namespace {

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string scene_path(const std::string& name) { return std::string(PARAGEO_SOURCE_DIR) + "/scenes/" + name; }

const char* minimal = R"yaml(name: plane
ambient:
  canonical: 2
immersion:
  dim: 2
  coords: ["x1", "x2", "0", "0"]
  domain:
    lo: [-1, -1]
    hi: [1, 1]
)yaml";

void expect_error(const std::string& text, const std::string& fragment)
{
    try {
        parse_scene(text);
        FAIL("expected SceneError for: " << fragment);
    } catch (const SceneError& e) {
        INFO(std::string(e.what()));
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

std::string replace(std::string s, const std::string& from, const std::string& to)
{
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
}

} // namespace

TEST_SUITE("scene")
{
    TEST_CASE("minimal scene uses defaults")
    {
        const Scene s = parse_scene(minimal);
        CHECK(s.name == "plane");
        CHECK(s.immersion.dim() == 2);
        CHECK(s.ambient.dim() == 4);
        CHECK(s.distributions.empty());
        CHECK_FALSE(s.has_structure());
        CHECK(s.tol.identity == Tolerances{}.identity);
        CHECK(s.immersion.plan().grid == SamplePlan{}.grid);
        CHECK(parse_scene(replace(minimal, "name: plane\n", "")).name == "unnamed");
    }

    TEST_CASE("example scene contents")
    {
        const Scene s = testing::example();
        CHECK(s.name == "cone-warped");
        CHECK(s.coord_sources.size() == 6);
        CHECK(s.anti_invariant == "Dbot");
        CHECK(s.slant == "Dlam");
        CHECK(s.distribution("Dlam").rank() == 2);
        const WarpedDecl& w = s.warped_decl("W");
        CHECK(w.base == std::vector<int>{0, 2});
        CHECK(w.fiber == std::vector<int>{1});
        CHECK(w.f_source == "x1");
        CHECK(s.references.size() == 3);
        CHECK(s.references[1].kind == ReferenceValue::Kind::SlantCoefficient);
        CHECK(eval_value(*s.references[1].value, Vec(0)) == doctest::Approx(std::sqrt(0.5)));
        CHECK_THROWS_AS(s.distribution("nope"), SceneError);
        CHECK_THROWS_AS(s.warped_decl("nope"), SceneError);
    }

    TEST_CASE("explicit ambient matrices")
    {
        const std::string text = replace(minimal, "  canonical: 2\n",
                                         "  P: [[0,0,1,0],[0,0,0,1],[1,0,0,0],[0,1,0,0]]\n"
                                         "  G: [[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]\n");
        const Scene s = parse_scene(text);
        CHECK(s.ambient.P() == AmbientSpace::canonical(2).P());
        CHECK(s.ambient.G() == AmbientSpace::canonical(2).G());
    }

    TEST_CASE("malformed scenes name the offending key")
    {
        expect_error("name: [unclosed", "");
        expect_error(std::string(minimal) + "colour: red\n", "colour");
        expect_error(replace(minimal, "  dim: 2\n", "  dim: 2\n  extra: 1\n"), "extra");
        expect_error(replace(minimal, "\"x2\", \"0\", \"0\"", "\"x2\", \"0\""), "coords");
        expect_error(replace(minimal, "\"x2\", \"0\"", "\"x2\", \"x3\""), "x3");
        expect_error(replace(minimal, "hi: [1, 1]", "hi: [1]"), "domain");
        expect_error(replace(minimal, "hi: [1, 1]", "hi: [-2, 1]"), "domain");
        expect_error(std::string(minimal) + "distributions:\n  D: [[\"1\"]]\n", "D");
        expect_error(std::string(minimal) + "structure:\n  slant: Missing\n", "Missing");
        expect_error(std::string(minimal) + "samples:\n  grid: -1\n", "samples");
        expect_error(std::string(minimal) + "warped:\n  - name: W\n    base: [1]\n    fiber: [1]\n", "warped[1]");
        expect_error(std::string(minimal) + "warped:\n  - name: W\n    base: [1]\n    fiber: [2]\n"
                                            "    orientation: sideways\n",
                     "orientation");
        expect_error(std::string(minimal) + "reference:\n  - quantity: mass\n    value: \"1\"\n", "quantity");
    }

    TEST_CASE("missing file is a scene error")
    {
        CHECK_THROWS_AS(load_scene(scene_path("does_not_exist.yaml")), SceneError);
    }

    TEST_CASE("overrides")
    {
        Scene s = testing::example();
        apply_overrides(s, SceneOverrides{1e-6, 99, 3});
        CHECK(s.tol.identity == 1e-6);
        CHECK(s.immersion.plan().seed == 99);
        CHECK(s.immersion.plan().grid == 3);
        CHECK(s.immersion.plan().random == 20);
        Scene t = testing::example();
        apply_overrides(t, SceneOverrides{});
        CHECK(t.tol.identity == testing::example().tol.identity);
    }

    TEST_CASE("shipped scene files match the built-in corpus")
    {
        CHECK(read_file(scene_path("example.yaml")) == example_scene_text());
        CHECK(read_file(scene_path("product.yaml")) == product_scene_text());
        CHECK(read_file(scene_path("invariant_plane.yaml")) == invariant_scene_text());
        CHECK(read_file(scene_path("anti_invariant.yaml")) == anti_invariant_scene_text());
        CHECK(read_file(scene_path("random_product_11.yaml")) == random_product_scene_text(11));
        CHECK(read_file(scene_path("random_product_23.yaml")) == random_product_scene_text(23));
        CHECK(read_file(scene_path("obstruction.yaml")) == obstruction_scene_text("2 + sin(x2)"));
        CHECK(read_file(scene_path("obstruction_constant.yaml")) == obstruction_scene_text("1"));
        for (const char* f : {"example.yaml", "product.yaml", "obstruction.yaml"})
            CHECK_NOTHROW(load_scene(scene_path(f)));
    }
}
