// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parageo/analysis.hpp"
#include "parageo/corpus.hpp"
#include "support.hpp"

using namespace parageo;

namespace {

// Pinned tolerances.
constexpr double metric_tol = 1e-9;
constexpr double metric_runtime_s = 1.0;
constexpr double lambda_tol = 1e-9;
constexpr double spread_tol = 1e-9;
constexpr double anti_invariant_tol = 1e-10;
constexpr double identity_tol = 1e-8;
constexpr double pairing_tol = 1e-9;
constexpr double domega_tol = 1e-8;
constexpr double warp_ratio_tol = 1e-9;
constexpr double warped_tol = 1e-8;
constexpr double agreement_tol = 1e-7;
constexpr double ad_tol = 1e-6;
constexpr int ad_samples = 200;
constexpr int ad_depth = 6;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << (detail.tellp() > 0 ? "; " : "") << "failed: " << what;
        }
    }
    void note(const std::string& what) { detail << (detail.tellp() > 0 ? "; " : "") << what; }
};

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const Check* find_check(const AnalysisReport& r, const std::string& name)
{
    for (const auto& s : r.suites)
        for (const auto& c : s.checks)
            if (c.name == name)
                return &c;
    return nullptr;
}

bool has_discrepancy(const AnalysisReport& r, const std::string& stated_fragment)
{
    for (const auto& d : r.discrepancies)
        if (d.stated.find(stated_fragment) != std::string::npos)
            return true;
    return false;
}

const AnalysisReport& example_report()
{
    static const AnalysisReport r = run_analysis(testing::example(), Command::Analyze);
    return r;
}

Outcome metric_reproduction()
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    const Scene s = testing::example();
    double worst = 0;
    int n = 0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            const double x1 = 0.5 + 1.5 * i / 4.0;
            const double x2 = 0.1 + 1.3 * (j + 0.5) / 5.0;
            const double x3 = 0.5 + 1.5 * ((i + 2 * j) % 5) / 4.0;
            const PointFrame F = frame_at(s.immersion, testing::point({x1, x2, x3}));
            Mat g = Mat::Zero(3, 3);
            g(0, 0) = 2;
            g(1, 1) = x1 * x1;
            g(2, 2) = -1;
            worst = std::max(worst, testing::max_abs(F.g - g));
            ++n;
        }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(n == 25, "25 points");
    o.require(worst <= metric_tol, "max |g - diag(2, x1^2, -1)| = " + num(worst));
    o.require(secs < metric_runtime_s, "runtime " + num(secs) + " s");
    o.note("max entry error " + num(worst) + " over " + std::to_string(n) + " points, " + num(secs) + " s");
    return o;
}

Outcome slant_classification()
{
    Outcome o;
    const AnalysisReport& r = example_report();
    const SlantReport* lam = nullptr;
    const SlantReport* bot = nullptr;
    for (const auto& s : r.slant) {
        if (s.distribution == "Dlam")
            lam = &s;
        if (s.distribution == "Dbot")
            bot = &s;
    }
    o.require(lam && bot, "both factors analysed");
    if (!lam || !bot)
        return o;
    o.require(lam->classification == SlantClass::ProperSlant, "slant factor is ProperSlant");
    o.require(std::abs(lam->lambda_hat - 0.5) <= lambda_tol, "lambda = " + num(lam->lambda_hat));
    o.require(lam->lambda_spread <= spread_tol, "spread " + num(lam->lambda_spread));
    o.require(has_discrepancy(r, "1/sqrt(2)"), "discrepancy against the stated 1/sqrt(2)");
    o.require(bot->classification == SlantClass::AntiInvariant, "anti-invariant factor classified");
    o.require(bot->max_t_ratio <= anti_invariant_tol, "max |tX|/|X| = " + num(bot->max_t_ratio));
    o.note("lambda " + num(lam->lambda_hat) + ", spread " + num(lam->lambda_spread) + ", |tX|/|X| on Dbot " +
           num(bot->max_t_ratio));
    return o;
}

Outcome identity_suites()
{
    Outcome o;
    const AnalysisReport& r = example_report();
    const char* names[] = {
        "t'n X = (1 - lambda) X",
        "n'n X = -n t X",
        "P T = T t + N n, P N = T t' + N n'",
        "shape operator self-adjoint",
        "second fundamental form symmetric",
        "connection torsion free",
        "connection metric compatible",
    };
    double worst = 0;
    for (const char* name : names) {
        const Check* c = find_check(r, name);
        o.require(c != nullptr, std::string("check present: ") + name);
        if (c) {
            worst = std::max(worst, c->residual);
            o.require(c->residual <= identity_tol, std::string(name) + " residual " + num(c->residual));
        }
    }
    const IdentityReport id = verify_t_identities(sample(testing::example().immersion),
                                                  testing::example().distribution("Dlam"), 0.5);
    o.require(id.t_pair.sign == -1 && id.n_pair.sign == -1, "measured pairing signs -1, -1");
    o.require(id.t_pair.residual <= pairing_tol && id.n_pair.residual <= pairing_tol, "pairing residuals");
    o.require(has_discrepancy(r, "lambda g(X, Y)") && has_discrepancy(r, "(1 - lambda) g(X, Y)"),
              "discrepancy annotations for the pairing signs");
    o.note("worst identity residual " + num(worst) + "; signs (" + std::to_string(id.t_pair.sign) + ", " +
           std::to_string(id.n_pair.sign) + ") with residuals " + num(id.t_pair.residual) + ", " +
           num(id.n_pair.residual));
    return o;
}

Outcome closed_fundamental_form()
{
    Outcome o;
    const std::vector<CorpusEntry> scenes = {{"cone-warped", example_scene_text()},
                                             {"product", product_scene_text()},
                                             {"random-product-11", random_product_scene_text(11)},
                                             {"random-product-23", random_product_scene_text(23)}};
    double worst = 0;
    long triples = 0;
    for (const auto& e : scenes) {
        const Scene s = parse_scene(e.text, e.name);
        const SampleSet S = sample(s.immersion);
        const int d = s.immersion.dim();
        o.require(!S.frames.empty(), e.name + " has valid points");
        for (const PointFrame& F : S.frames) {
            std::vector<FieldJet> fields;
            for (int i = 0; i < d; ++i)
                fields.push_back(eval_field(VectorField::coordinate(i, d), F.p));
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    for (int k = 0; k < d; ++k) {
                        worst = std::max(worst, std::abs(omega_and_domega(F, fields[i], fields[j], fields[k]).domega));
                        ++triples;
                    }
        }
    }
    o.require(worst <= domega_tol, "max |d omega| = " + num(worst));
    o.note("max |d omega| " + num(worst) + " over " + std::to_string(triples) + " triples in 4 scenes");
    return o;
}

Outcome warped_structure()
{
    Outcome o;
    const Scene s = testing::example();
    const SampleSet S = sample(s.immersion);
    const WarpedDecl& decl = s.warped_decl("W");
    const WarpedSplit W = detect_warped(s.immersion, S, decl, s.tol);
    o.require(W.ok(), "split detected");
    if (!W.ok())
        return o;
    double lo = 1e300, hi = -1e300;
    for (std::size_t i = 0; i < S.frames.size(); ++i) {
        const double ratio = W.f[i] / S.frames[i].p[0];
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    o.require(hi - lo <= warp_ratio_tol, "f / x1 varies by " + num(hi - lo));

    const CheckGroup conn = verify_warped_connection(S, W, s.tol);
    double conn_worst = 0;
    for (const Check& c : conn.checks)
        conn_worst = std::max(conn_worst, c.residual);
    o.require(conn_worst <= warped_tol, "connection and leaf checks " + num(conn_worst));

    const Distribution& bot = s.distribution("Dbot");
    const Distribution& lam = s.distribution("Dlam");
    const CheckGroup ch = characterization_test(S, bot, lam, W, 0.5, s.tol);
    double ch_worst = 0;
    for (const Check& c : ch.checks)
        ch_worst = std::max(ch_worst, c.residual);
    o.require(ch_worst <= warped_tol, "characterization " + num(ch_worst));

    const TrivialityReport t = triviality_test(S, bot, lam, W, 0.5, s.tol);
    o.require(!t.trivial, "reported non-trivial");
    // The balance identity as stated, with the plus sign.
    o.require(t.plus_residual <= warped_tol,
              "lambda (Z ln f) g(X,Y) + g(h(X,Y), ntZ) = 0 leaves residual " + num(t.plus_residual) +
                  " (the minus form leaves " + num(t.minus_residual) + ")");
    o.note("f/x1 spread " + num(hi - lo) + ", connection " + num(conn_worst) + ", characterization " +
           num(ch_worst));
    return o;
}

Outcome obstruction()
{
    Outcome o;
    const AnalysisReport bad = run_analysis(parse_scene(obstruction_scene_text("2 + sin(x2)")), Command::Analyze);
    const AnalysisReport ok = run_analysis(parse_scene(obstruction_scene_text("1")), Command::Analyze);
    o.require(bad.warped.size() == 1 && ok.warped.size() == 1, "one declaration per scene");
    if (!o.pass)
        return o;
    const ObstructionReport& b = bad.warped[0].obstruction;
    const ObstructionReport& k = ok.warped[0].obstruction;
    o.require(b.applicable && b.verdict == Verdict::Fail &&
                  b.detail.find("warping forced constant") != std::string::npos,
              "nonconstant f reported as forced constant");
    o.require(k.verdict == Verdict::Vacuous && k.consistent, "constant f is vacuous and consistent");
    o.note("nonconstant: " + b.detail + "; constant: " + k.detail);
    return o;
}

Outcome condition_agreement()
{
    Outcome o;
    int conditions = 0, agreed = 0;
    for (const auto& e : agreement_corpus()) {
        Scene s = parse_scene(e.text, e.name);
        s.tol.condition = agreement_tol;
        const AnalysisReport r = run_analysis(s, Command::Analyze);
        o.require(r.conditions.size() == 4, e.name + " has four conditions");
        for (const auto& c : r.conditions) {
            ++conditions;
            if (c.agree)
                ++agreed;
            else
                o.require(false, e.name + ": " + c.name + " disagrees with its oracle");
        }
    }
    o.note(std::to_string(agreed) + " of " + std::to_string(conditions) + " conditions agree on 6 scenes");
    return o;
}

Outcome ad_engine()
{
    Outcome o;
    std::mt19937_64 rng(20240611);
    double grad = 0, hess = 0;
    int mismatched = 0;
    for (int n = 0; n < ad_samples; ++n) {
        const int dim = 1 + static_cast<int>(rng() % 4);
        const Expr e = parse(testing::random_expression(rng, ad_depth, dim), dim);
        Vec p(dim);
        for (int i = 0; i < dim; ++i)
            p[i] = 2 * testing::unit(rng) - 1;
        const auto err = testing::finite_difference_errors(e, p);
        grad = std::max(grad, err.grad);
        hess = std::max(hess, err.hess);
        const std::string printed = e.print();
        if (parse(printed, dim).print() != printed)
            ++mismatched;
    }
    o.require(grad <= ad_tol, "gradient error " + num(grad));
    o.require(hess <= ad_tol, "Hessian error " + num(hess));
    o.require(mismatched == 0, std::to_string(mismatched) + " round-trip mismatches");
    o.note("worst relative error: gradient " + num(grad) + ", Hessian " + num(hess));
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"1 induced metric of the cone example", metric_reproduction},
        {"2 slant classification of the cone example", slant_classification},
        {"3 identity suites on the cone example", identity_suites},
        {"4 closed fundamental form", closed_fundamental_form},
        {"5 warped structure of the cone example", warped_structure},
        {"6 non-existence obstruction", obstruction},
        {"7 printed conditions against oracles", condition_agreement},
        {"8 differentiation engine", ad_engine},
    };
    int failed = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note(std::string("exception: ") + e.what());
        }
        failed += !o.pass;
        std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%d of %zu criteria passed in %.2f s\n", static_cast<int>(criteria.size()) - failed,
                criteria.size(), secs);
    return failed;
}
