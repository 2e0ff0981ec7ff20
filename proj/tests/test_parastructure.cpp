#include "doctest.h"
#include "support.hpp"

using namespace parageo;
using testing::point;

namespace {

const Scene& cone()
{
    static const Scene s = testing::example();
    return s;
}

} // namespace

TEST_SUITE("parastructure")
{
    TEST_CASE("t on the cone coordinate frame")
    {
        const PointFrame F = frame_at(cone().immersion, point({1.1, 0.3, 1.7}));
        const TNDecomposition tn = tn_decompose(F);
        Mat t(3, 3);
        t << 0, 0, 0.5, 0, 0, 0, 1, 0, 0;
        CHECK(testing::max_abs(tn.t - t) <= 1e-12);
        // t^2 restricted to span(Z1, Z3) is (1/2) I.
        const Mat t2 = tn.t * tn.t;
        CHECK(t2(0, 0) == doctest::Approx(0.5));
        CHECK(t2(2, 2) == doctest::Approx(0.5));
        CHECK(std::abs(t2(0, 2)) <= 1e-12);
    }

    TEST_CASE("block identities of the decomposition")
    {
        for (const auto& entry : agreement_corpus()) {
            const Scene s = parse_scene(entry.text, entry.name);
            const SampleSet S = sample(s.immersion);
            REQUIRE(!S.frames.empty());
            for (std::size_t k = 0; k < S.frames.size(); k += 7) {
                const PointFrame& F = S.frames[k];
                const TNDecomposition tn = tn_decompose(F);
                const int d = F.dim(), c = F.codim();
                const RecompositionResidual r = recomposition_residual(F, tn);
                CHECK(r.tangent <= 1e-10);
                CHECK(r.normal <= 1e-10);
                INFO(entry.name);
                CHECK(testing::max_abs(tn.t * tn.t + tn.tp * tn.n - Mat::Identity(d, d)) <= 1e-10);
                CHECK(testing::max_abs(tn.n * tn.t + tn.np * tn.n) <= 1e-10);
                CHECK(testing::max_abs(tn.t * tn.tp + tn.tp * tn.np) <= 1e-10);
                CHECK(testing::max_abs(tn.n * tn.tp + tn.np * tn.np - Mat::Identity(c, c)) <= 1e-10);
                // t is g-skew.
                CHECK(testing::max_abs(F.g * tn.t + (F.g * tn.t).transpose()) <= 1e-10);
            }
        }
    }

    TEST_CASE("slant coefficients of the cone distributions")
    {
        const SampleSet S = sample(cone().immersion);
        const SlantReport lam = slant_analyze(S, cone().distribution("Dlam"), cone().tol);
        CHECK(lam.classification == SlantClass::ProperSlant);
        CHECK(lam.lambda_hat == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(lam.lambda_spread <= 1e-9);
        CHECK(lam.points == static_cast<int>(S.frames.size()));
        CHECK(lam.closure_residual <= 1e-10);

        const SlantReport bot = slant_analyze(S, cone().distribution("Dbot"), cone().tol);
        CHECK(bot.classification == SlantClass::AntiInvariant);
        CHECK(bot.max_t_ratio <= 1e-10);
    }

    TEST_CASE("invariant and anti-invariant corpus scenes")
    {
        const Scene inv = parse_scene(invariant_scene_text());
        const SlantReport r = slant_analyze(sample(inv.immersion), inv.distribution("Dlam"), inv.tol);
        CHECK(r.classification == SlantClass::Invariant);
        CHECK(r.lambda_hat == doctest::Approx(1.0));
        CHECK(r.max_n_ratio <= 1e-10);

        const Scene anti = parse_scene(anti_invariant_scene_text());
        const SlantReport a = slant_analyze(sample(anti.immersion), anti.distribution("Dbot"), anti.tol);
        CHECK(a.classification == SlantClass::AntiInvariant);
        CHECK(a.lambda_hat == doctest::Approx(0.0));
    }

    TEST_CASE("non-slant distribution is recognised")
    {
        // Surface with t^2 varying from point to point.
        const Immersion M = testing::immersion(2, {"x1", "x2", "0.5*x2 + 0.3*x1^2", "0"}, point({-1, -1}),
                                               point({1, 1}), SamplePlan{4, 6, 3});
        const Distribution D = testing::distribution("D", {{"1", "0"}, {"0", "1"}}, 2);
        const SlantReport r = slant_analyze(sample(M), D, Tolerances{});
        CHECK(r.classification == SlantClass::NotSlant);
        CHECK(r.lambda_spread > 1e-3);
    }

    TEST_CASE("random product slant coefficient")
    {
        for (std::uint64_t seed : {11u, 23u, 5u}) {
            const Scene s = parse_scene(random_product_scene_text(seed));
            const SlantReport r = slant_analyze(sample(s.immersion), s.distribution("Dlam"), s.tol);
            REQUIRE(!s.references.empty());
            const double stated = eval_value(*s.references[0].value, Vec(0));
            CHECK(r.classification == SlantClass::ProperSlant);
            CHECK(r.lambda_hat == doctest::Approx(stated).epsilon(1e-10));
        }
    }

    TEST_CASE("pairing identities hold with measured sign -1")
    {
        const SampleSet S = sample(cone().immersion);
        const IdentityReport id = verify_t_identities(S, cone().distribution("Dlam"), 0.5);
        CHECK(id.t_pair.sign == -1);
        CHECK(id.n_pair.sign == -1);
        CHECK(id.t_pair.residual <= 1e-9);
        CHECK(id.n_pair.residual <= 1e-9);
        CHECK(id.t_pair.plus_residual > 0.1);
        CHECK(id.tprime_n_residual <= 1e-9);
        CHECK(id.nprime_n_residual <= 1e-9);
    }

    TEST_CASE("fundamental form on tangent fields")
    {
        const Vec p = point({1.4, 0.5, 0.9});
        const PointFrame F = frame_at(cone().immersion, p);
        const auto f = [&](int i) { return eval_field(VectorField::coordinate(i, 3), p); };
        const OmegaValues v = omega_and_domega(F, f(0), f(2), f(1));
        CHECK(v.omega == doctest::Approx(1.0)); // <T1, P T3> = <T1, e1>
        CHECK(std::abs(v.domega) <= 1e-12);
        const OmegaValues w = omega_and_domega(F, f(1), f(1), f(0));
        CHECK(std::abs(w.omega) <= 1e-14);

        // Non-coordinate fields.
        const auto X = eval_field(VectorField::parse({"x2", "x1*x3", "1"}, 3), p);
        const auto Y = eval_field(VectorField::parse({"sin(x3)", "1", "x1"}, 3), p);
        const auto Z = eval_field(VectorField::parse({"1", "x2^2", "cos(x1)"}, 3), p);
        CHECK(std::abs(omega_and_domega(F, X, Y, Z).domega) <= 1e-10);
        const OmegaValues xy = omega_and_domega(F, X, Y, Z);
        const OmegaValues yx = omega_and_domega(F, Y, X, Z);
        CHECK(xy.omega == doctest::Approx(-yx.omega));
    }
}
