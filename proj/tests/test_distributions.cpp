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

const SampleSet& cone_samples()
{
    static const SampleSet S = sample(cone().immersion);
    return S;
}

Immersion flat_space(int d)
{
    std::vector<std::string> c;
    for (int i = 1; i <= d; ++i)
        c.push_back("x" + std::to_string(i));
    for (int i = 0; i < d; ++i)
        c.push_back("0");
    return testing::immersion(d, c, Vec::Constant(d, -1), Vec::Constant(d, 1), SamplePlan{3, 5, 2});
}

} // namespace

TEST_SUITE("distributions")
{
    TEST_CASE("cone example decomposes as a proper PR-pseudo-slant submanifold")
    {
        const DecompReport r = check_decomposition(cone_samples(), cone().distribution("Dbot"),
                                                   cone().distribution("Dlam"), cone().tol);
        CHECK(r.verdict == DecompositionVerdict::ProperPRPseudoSlant);
        CHECK(r.d1 == 1);
        CHECK(r.d2 == 2);
        CHECK(r.proper);
        CHECK(r.lambda == doctest::Approx(0.5));
        CHECK(r.orthogonality_residual <= 1e-12);
        CHECK(r.anti_invariance_residual <= 1e-10);
        CHECK(r.span_ratio > 0.1);
    }

    TEST_CASE("overlapping factors are rejected")
    {
        const Distribution& lam = cone().distribution("Dlam");
        Distribution copy = lam;
        copy.name = "Dcopy";
        const DecompReport r = check_decomposition(cone_samples(), copy, lam, cone().tol);
        CHECK(r.verdict == DecompositionVerdict::NotPRPseudoSlant);

        const Distribution bot = testing::distribution("B", {{"1", "0", "0"}}, 3);
        const DecompReport r2 = check_decomposition(cone_samples(), bot, lam, cone().tol);
        CHECK(r2.verdict == DecompositionVerdict::NotPRPseudoSlant); // ranks sum to 3 but not orthogonal
        CHECK(r2.orthogonality_residual > 0.1);
    }

    TEST_CASE("invariant and anti-invariant scenes")
    {
        const Scene inv = parse_scene(invariant_scene_text());
        const DecompReport r = check_decomposition(sample(inv.immersion), inv.distribution("Dbot"),
                                                   inv.distribution("Dlam"), inv.tol);
        CHECK(r.verdict == DecompositionVerdict::Invariant);
        CHECK(r.d1 == 0);

        const Scene anti = parse_scene(anti_invariant_scene_text());
        const DecompReport a = check_decomposition(sample(anti.immersion), anti.distribution("Dbot"),
                                                   anti.distribution("Dlam"), anti.tol);
        CHECK(a.verdict == DecompositionVerdict::AntiInvariant);
    }

    TEST_CASE("projection is idempotent and g-orthogonal")
    {
        const PointFrame& F = cone_samples().frames[17];
        const Distribution& lam = cone().distribution("Dlam");
        const TangentVec X = F.tangent(point({0.3, -1.2, 0.8}));
        const TangentVec PX = projection(F, lam, X);
        CHECK((projection(F, lam, PX).c - PX.c).norm() <= 1e-14);
        CHECK((PX.c - point({0.3, 0, 0.8})).norm() <= 1e-12);
        CHECK(std::abs(F.metric(X.c - PX.c, point({1, 0, 0}))) <= 1e-12);
    }

    TEST_CASE("Frobenius oracle")
    {
        const Immersion M = flat_space(3);
        const SampleSet S = sample(M);
        const Tolerances tol;
        // [d1 + x3 d2, d3] = -d2, not in the span.
        const Distribution bad = testing::distribution("bad", {{"1", "x3", "0"}, {"0", "0", "1"}}, 3);
        const BracketReport b = integrability_test(S, bad, tol);
        CHECK(b.verdict == Verdict::Fail);
        CHECK(b.max_residual > 0.1);
        // [d1 + x1 d2, d3] = 0.
        const Distribution good = testing::distribution("good", {{"1", "x1", "0"}, {"0", "0", "1"}}, 3);
        CHECK(integrability_test(S, good, tol).verdict == Verdict::Pass);
        // Rank one and rank zero are always integrable.
        CHECK(integrability_test(S, testing::distribution("line", {{"1", "x3", "x1"}}, 3), tol).verdict !=
              Verdict::Fail);
        CHECK(integrability_test(S, testing::distribution("zero", {}, 3), tol).verdict == Verdict::Vacuous);
    }

    TEST_CASE("totally geodesic oracle")
    {
        const SampleSet& S = cone_samples();
        CHECK(geodesic_test(S, cone().distribution("Dlam"), cone().tol).verdict == Verdict::Pass);
        // nabla_{d2} d2 = -(x1/2) d1 leaves span(d2).
        const BracketReport r = geodesic_test(S, cone().distribution("Dbot"), cone().tol);
        CHECK(r.verdict == Verdict::Fail);
        CHECK(r.max_residual > 0.1);
    }

    TEST_CASE("printed conditions agree with their oracles on the cone")
    {
        const SampleSet& S = cone_samples();
        const Distribution& bot = cone().distribution("Dbot");
        const Distribution& lam = cone().distribution("Dlam");
        const Tolerances& tol = cone().tol;
        const ConditionReport reports[] = {
            integrability_condition_Dbot(S, bot, lam, 0.5, tol),
            integrability_condition_Dlam(S, bot, lam, 0.5, tol),
            foliation_condition_Dbot(S, bot, lam, 0.5, tol),
            foliation_condition_Dlam(S, bot, lam, 0.5, tol),
        };
        for (const auto& r : reports) {
            INFO(r.name);
            CHECK(r.agree);
            CHECK(r.identity_residual <= 1e-8);
            CHECK(r.verdict != Verdict::Fail);
        }
        CHECK(reports[2].condition == Verdict::Fail);
        CHECK(reports[2].oracle == Verdict::Fail);
        CHECK(reports[3].condition == Verdict::Pass);
    }

    TEST_CASE("printed conditions agree on the whole corpus")
    {
        for (const auto& entry : agreement_corpus()) {
            const Scene s = parse_scene(entry.text, entry.name);
            const SampleSet S = sample(s.immersion);
            const Distribution& bot = s.distribution(s.anti_invariant);
            const Distribution& lam = s.distribution(s.slant);
            const DecompReport d = check_decomposition(S, bot, lam, s.tol);
            INFO(entry.name);
            REQUIRE(d.verdict != DecompositionVerdict::NotPRPseudoSlant);
            for (const auto& r : {integrability_condition_Dbot(S, bot, lam, d.lambda, s.tol),
                                  integrability_condition_Dlam(S, bot, lam, d.lambda, s.tol),
                                  foliation_condition_Dbot(S, bot, lam, d.lambda, s.tol),
                                  foliation_condition_Dlam(S, bot, lam, d.lambda, s.tol)}) {
                INFO(r.name);
                CHECK(r.agree);
                CHECK(r.identity_residual <= 1e-8);
            }
        }
    }
}
