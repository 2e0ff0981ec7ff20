#include "doctest.h"
#include "support.hpp"

using namespace parageo;
using testing::point;

namespace {

struct Fixture {
    Scene scene;
    SampleSet S;
    WarpedSplit W;

    explicit Fixture(const std::string& text, const std::string& decl = "W")
        : scene(parse_scene(text)), S(sample(scene.immersion)),
          W(detect_warped(scene.immersion, S, scene.warped_decl(decl), scene.tol))
    {
    }
    const Distribution& bot() const { return scene.distribution("Dbot"); }
    const Distribution& lam() const { return scene.distribution("Dlam"); }
};

const Fixture& cone()
{
    static const Fixture f(example_scene_text());
    return f;
}

} // namespace

TEST_SUITE("warped")
{
    TEST_CASE("cone metric is warped with f proportional to x1")
    {
        const Fixture& c = cone();
        REQUIRE(c.W.ok());
        CHECK(c.W.residual <= 1e-9);
        CHECK_FALSE(c.W.f_constant);
        REQUIRE(c.W.f.size() == c.S.frames.size());
        const double ratio0 = c.W.f[0] / c.S.frames[0].p[0];
        for (std::size_t i = 0; i < c.W.f.size(); ++i)
            CHECK(std::abs(c.W.f[i] / c.S.frames[i].p[0] - ratio0) <= 1e-9);
        CHECK(ratio0 == doctest::Approx(1 / c.W.reference[0]));
        REQUIRE(c.W.f_expr_fit.has_value());
        CHECK(c.W.fit_residual <= 1e-9);
        // d ln f = dx1 / x1
        for (std::size_t i = 0; i < c.S.frames.size(); i += 13)
            CHECK((c.W.dlnf[i] - point({1 / c.S.frames[i].p[0], 0, 0})).norm() <= 1e-12);
    }

    TEST_CASE("split that puts x1 in the fiber is not block warped")
    {
        const Fixture& c = cone();
        WarpedDecl d = c.scene.warped_decl("W");
        d.base = {1, 2};
        d.fiber = {0};
        d.f.reset();
        const WarpedSplit W = detect_warped(c.scene.immersion, c.S, d, c.scene.tol);
        CHECK(W.status == WarpStatus::NonBlockMetric);
        CHECK_FALSE(W.ok());
        CHECK(W.base_dependence > 0.1);
    }

    TEST_CASE("invalid splits throw")
    {
        const Fixture& c = cone();
        WarpedDecl d = c.scene.warped_decl("W");
        d.base = {1};
        d.fiber = {0};
        CHECK_THROWS_AS(detect_warped(c.scene.immersion, c.S, d, c.scene.tol), std::invalid_argument);
        d.base = {0, 1, 2};
        d.fiber = {};
        CHECK_THROWS_AS(detect_warped(c.scene.immersion, c.S, d, c.scene.tol), std::invalid_argument);
        d.base = {0, 2};
        d.fiber = {2};
        CHECK_THROWS_AS(detect_warped(c.scene.immersion, c.S, d, c.scene.tol), std::invalid_argument);
    }

    TEST_CASE("fiber that is not conformally constant")
    {
        // g = (2 - 4 x1^2) dx1^2 + x1^2 dx2^2 - x1^4 dx3^2: block diagonal, fiber scales unevenly.
        const Immersion M = testing::immersion(
            3, {"x1", "x1*cos(x2)", "x1*sin(x2)", "x1^2*cos(x3)", "x1^2*sin(x3)", "0"}, point({1, 0, 0}),
            point({2, 1, 1}), SamplePlan{3, 4, 1});
        const SampleSet S = sample(M);
        WarpedDecl d{"V", {0}, {1, 2}, std::nullopt, "", WarpOrientation::SlantBase};
        const WarpedSplit W = detect_warped(M, S, d, Tolerances{});
        CHECK(W.status == WarpStatus::FiberNotConformal);
    }

    TEST_CASE("connection of the warped metric")
    {
        const Fixture& c = cone();
        const CheckGroup g = verify_warped_connection(c.S, c.W, c.scene.tol);
        CHECK(g.verdict == Verdict::Pass);
        CHECK(g.checks.size() == 6);
        for (const Check& k : g.checks) {
            INFO(k.name);
            CHECK(k.residual <= 1e-8);
        }
    }

    TEST_CASE("characterization holds on the cone")
    {
        const Fixture& c = cone();
        const CheckGroup g = characterization_test(c.S, c.bot(), c.lam(), c.W, 0.5, c.scene.tol);
        CHECK(g.verdict == Verdict::Pass);
        for (const Check& k : g.checks)
            CHECK(k.residual <= 1e-8);
    }

    TEST_CASE("triviality balance holds with the minus sign")
    {
        const Fixture& c = cone();
        const TrivialityReport t = triviality_test(c.S, c.bot(), c.lam(), c.W, 0.5, c.scene.tol);
        CHECK(t.applicable);
        CHECK(t.measured_sign == -1);
        CHECK(t.minus_residual <= 1e-8);
        // Hand value: both terms equal x1 / 2, so the plus form leaves x1.
        CHECK(t.plus_residual == doctest::Approx(2 * t.curvature_term));
        CHECK_FALSE(t.trivial);
        CHECK(t.consistent);
        CHECK(t.verdict == Verdict::Pass);
    }

    TEST_CASE("trivial product")
    {
        const Fixture p(product_scene_text());
        REQUIRE(p.W.ok());
        CHECK(p.W.f_constant);
        const double lambda = check_decomposition(p.S, p.bot(), p.lam(), p.scene.tol).lambda;
        const TrivialityReport t = triviality_test(p.S, p.bot(), p.lam(), p.W, lambda, p.scene.tol);
        CHECK(t.trivial);
        CHECK(t.consistent);
        CHECK(t.verdict == Verdict::Pass);
        CHECK(t.identity_residual <= 1e-8);
    }

    TEST_CASE("obstruction forces a constant warping function")
    {
        const Fixture o(obstruction_scene_text("2 + sin(x2)"));
        const WarpedDecl& d = o.scene.warped_decl("W");
        const double lambda = check_decomposition(o.S, o.bot(), o.lam(), o.scene.tol).lambda;
        const ObstructionReport r = nonexistence_obstruction(o.S, o.bot(), o.lam(), d, o.W, lambda, o.scene.tol);
        CHECK(r.applicable);
        CHECK(r.verdict == Verdict::Fail);
        CHECK(r.forced_constant);
        CHECK(r.detail.find("warping forced constant") != std::string::npos);
        CHECK(r.implied_residual <= 1e-8);
        CHECK(r.warp_term > 0.1);

        const Fixture k(obstruction_scene_text("1"));
        const ObstructionReport rk = nonexistence_obstruction(k.S, k.bot(), k.lam(), k.scene.warped_decl("W"), k.W,
                                                              lambda, k.scene.tol);
        CHECK(rk.verdict == Verdict::Vacuous);
        CHECK(rk.consistent);
        CHECK(rk.detail.find("consistent") != std::string::npos);
    }

    TEST_CASE("obstruction does not apply to the slant-base orientation")
    {
        const Fixture& c = cone();
        const ObstructionReport r =
            nonexistence_obstruction(c.S, c.bot(), c.lam(), c.scene.warped_decl("W"), c.W, 0.5, c.scene.tol);
        CHECK_FALSE(r.applicable);
        CHECK(r.verdict == Verdict::Vacuous);
    }

    TEST_CASE("chain arithmetic")
    {
        // a = -L + c and b = L + d give (b - a) - (d - c) = 2L.
        std::mt19937_64 rng(4);
        for (int n = 0; n < 20; ++n) {
            const double L = testing::unit(rng) - 0.5, c = testing::unit(rng), d = testing::unit(rng);
            const ObstructionChain ch{-L + c, L + d, c, d};
            CHECK(obstruction_from_chain(ch) == doctest::Approx(2 * L));
        }
        CHECK(obstruction_from_chain({0.3, 0.3, 0.1, 0.1}) == 0.0);
    }
}
