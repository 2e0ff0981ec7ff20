#include "parageo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace parageo {

const char* to_string(Command c)
{
    switch (c) {
    case Command::VerifyAmbient: return "verify-ambient";
    case Command::Analyze: return "analyze";
    case Command::CheckSlant: return "check-slant";
    case Command::CheckWarped: return "check-warped";
    }
    return "?";
}

namespace {

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Verdict worst(const std::vector<Check>& checks)
{
    if (checks.empty())
        return Verdict::Vacuous;
    bool inconclusive = false;
    for (const Check& c : checks) {
        if (c.verdict == Verdict::Fail)
            return Verdict::Fail;
        inconclusive |= c.verdict == Verdict::Inconclusive;
    }
    return inconclusive ? Verdict::Inconclusive : Verdict::Pass;
}

CheckGroup finish(CheckGroup g)
{
    g.verdict = worst(g.checks);
    return g;
}

Check exact_check(std::string name, bool ok, std::string detail)
{
    return Check{std::move(name), ok ? Verdict::Pass : Verdict::Fail, ok ? 0.0 : 1.0, 0.0, std::move(detail)};
}

CheckGroup ambient_suite(const StructureReport& s, const AmbientSpace& A, const Tolerances& tol)
{
    CheckGroup g{"ambient structure", {}, Verdict::Vacuous, {}};
    g.checks.push_back(make_check("P^2 = I", s.p_squared_residual, tol));
    g.checks.push_back(make_check("P^T G P = -G", s.compatibility_residual, tol));
    g.checks.push_back(make_check("G symmetric", s.symmetry_residual, tol));
    g.checks.push_back(make_check("G P antisymmetric", s.antisymmetry_residual, tol));
    const int m = A.half_dim();
    g.checks.push_back(exact_check("signature (m, m)", s.positive == m && s.negative == m && s.zero == 0,
                                   "(" + std::to_string(s.positive) + ", " + std::to_string(s.negative) + ", " +
                                       std::to_string(s.zero) + ")"));
    return finish(std::move(g));
}

CheckGroup frame_suite(const SampleSet& S, const Tolerances& tol)
{
    double sym = 0, normal = 0, weingarten = 0, compat = 0, torsion = 0, recomp = 0;
    for (const PointFrame& F : S.frames) {
        const int d = F.dim();
        const std::vector<Mat> dg = F.metric_derivatives();
        std::vector<Vec> gamma(d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                gamma[i * d + j] = F.tangent_coeffs(F.d2(i, j));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                sym = std::max(sym, (F.h(i, j) - F.h(j, i)).cwiseAbs().maxCoeff());
                normal = std::max(normal, (F.T.transpose() * (F.G * F.h(i, j))).cwiseAbs().maxCoeff());
                torsion = std::max(torsion, (gamma[i * d + j] - gamma[j * d + i]).cwiseAbs().maxCoeff());
                for (int k = 0; k < d; ++k) {
                    const double rhs = (F.g * gamma[k * d + i])[j] + (F.g * gamma[k * d + j])[i];
                    compat = std::max(compat, std::abs(dg[k](i, j) - rhs));
                }
            }
        for (int a = 0; a < F.codim(); ++a) {
            const Mat gA = F.g * F.shape_matrix(F.N.col(a));
            weingarten = std::max(weingarten, (gA - gA.transpose()).cwiseAbs().maxCoeff());
        }
        const RecompositionResidual r = recomposition_residual(F, tn_decompose(F));
        recomp = std::max({recomp, r.tangent, r.normal});
    }
    CheckGroup g{"submanifold frame", {}, Verdict::Vacuous, {}};
    g.checks.push_back(make_check("second fundamental form symmetric", sym, tol));
    g.checks.push_back(make_check("second fundamental form normal", normal, tol));
    g.checks.push_back(make_check("shape operator self-adjoint", weingarten, tol));
    g.checks.push_back(make_check("connection metric compatible", compat, tol));
    g.checks.push_back(make_check("connection torsion free", torsion, tol));
    g.checks.push_back(make_check("P T = T t + N n, P N = T t' + N n'", recomp, tol));
    return finish(std::move(g));
}

CheckGroup product_suite(const SampleSet& S, const Tolerances& tol)
{
    double tt = 0, nt = 0, ttp = 0, ntp = 0, anti = 0, omega_diag = 0, domega = 0;
    for (const PointFrame& F : S.frames) {
        const int d = F.dim(), c = F.codim();
        const TNDecomposition tn = tn_decompose(F);
        tt = std::max(tt, (tn.t * tn.t + tn.tp * tn.n - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
        if (c > 0) {
            nt = std::max(nt, (tn.n * tn.t + tn.np * tn.n).cwiseAbs().maxCoeff());
            ttp = std::max(ttp, (tn.t * tn.tp + tn.tp * tn.np).cwiseAbs().maxCoeff());
            ntp = std::max(ntp, (tn.n * tn.tp + tn.np * tn.np - Mat::Identity(c, c)).cwiseAbs().maxCoeff());
        }
        const Mat gt = F.g * tn.t;
        anti = std::max(anti, (gt + gt.transpose()).cwiseAbs().maxCoeff());

        std::vector<FieldJet> coord;
        for (int i = 0; i < d; ++i)
            coord.push_back(FieldJet{Vec::Unit(d, i), Mat::Zero(d, d)});
        for (int i = 0; i < d; ++i)
            omega_diag = std::max(omega_diag, std::abs(omega_and_domega(F, coord[i], coord[i], coord[i]).omega));
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                for (int k = j + 1; k < d; ++k)
                    domega = std::max(domega, std::abs(omega_and_domega(F, coord[i], coord[j], coord[k]).domega));
    }
    CheckGroup g{"almost product structure on M", {}, Verdict::Vacuous, {}};
    g.checks.push_back(make_check("t^2 + t'n = I", tt, tol));
    g.checks.push_back(make_check("n t + n'n = 0", nt, tol));
    g.checks.push_back(make_check("t t' + t'n' = 0", ttp, tol));
    g.checks.push_back(make_check("n t' + n'^2 = I", ntp, tol));
    g.checks.push_back(make_check("g(tX, Y) = -g(X, tY)", anti, tol));
    g.checks.push_back(make_check("omega(X, X) = 0", omega_diag, tol));
    g.checks.push_back(make_check("d omega = 0", domega, tol));
    return finish(std::move(g));
}

CheckGroup slant_suite(const SampleSet& S, const Distribution& D, const SlantReport& rep, const Tolerances& tol,
                       std::vector<Discrepancy>& notes)
{
    const IdentityReport ids = verify_t_identities(S, D, rep.lambda_hat);
    CheckGroup g{"slant identities (" + D.name + ")", {}, Verdict::Vacuous, {}};
    auto sign_text = [](int s) { return s > 0 ? std::string("+") : std::string("-"); };
    g.checks.push_back(make_check("g(tX, tY) = s lambda g(X, Y)", ids.t_pair.residual, tol,
                                  "measured s = " + sign_text(ids.t_pair.sign)));
    g.checks.push_back(make_check("<nX, nY> = s (1 - lambda) g(X, Y)", ids.n_pair.residual, tol,
                                  "measured s = " + sign_text(ids.n_pair.sign)));
    g.checks.push_back(make_check("t'n X = (1 - lambda) X", ids.tprime_n_residual, tol));
    g.checks.push_back(make_check("n'n X = -n t X", ids.nprime_n_residual, tol));

    if (ids.t_pair.sign < 0 && ids.t_pair.plus_residual > tol.identity)
        notes.push_back({"g(tX, tY) on " + D.name, "lambda g(X, Y)", "-lambda g(X, Y)",
                         "residual with the stated sign " + num(ids.t_pair.plus_residual) +
                             "; P is anti-isometric for the neutral metric"});
    if (ids.n_pair.sign < 0 && ids.n_pair.plus_residual > tol.identity)
        notes.push_back({"<nX, nY> on " + D.name, "(1 - lambda) g(X, Y)", "-(1 - lambda) g(X, Y)",
                         "residual with the stated sign " + num(ids.n_pair.plus_residual)});
    return finish(std::move(g));
}

CheckGroup decomposition_suite(const DecompReport& d)
{
    CheckGroup g{"decomposition", {}, Verdict::Vacuous, {}};
    g.checks.push_back(exact_check("TM = anti-invariant + slant", d.verdict != DecompositionVerdict::NotPRPseudoSlant,
                                   std::string(to_string(d.verdict)) + ": " + d.reason));
    return finish(std::move(g));
}

WarpedResult run_warped(const Scene& scene, const SampleSet& S, const WarpedDecl& decl, double lambda,
                        std::vector<Discrepancy>& notes)
{
    const Tolerances& tol = scene.tol;
    WarpedResult r;
    r.name = decl.name;
    r.orientation = decl.orientation;
    r.f_source = decl.f_source;
    r.split = detect_warped(scene.immersion, S, decl, tol);
    const WarpedSplit& W = r.split;

    r.detection.name = "warped detection (" + decl.name + ")";
    r.detection.checks.push_back(make_check("cross terms g_BF vanish", W.block_residual, tol));
    r.detection.checks.push_back(make_check("base metric independent of fiber", W.base_dependence, tol));
    r.detection.checks.push_back(make_check("fiber metric conformally constant", W.conformal_residual, tol));
    r.detection.checks.push_back(make_check("warping function independent of fiber", W.fiber_dependence, tol));
    if (W.status == WarpStatus::NonPositiveWarp)
        r.detection.checks.push_back(exact_check("warping function positive", false, W.message));
    else
        r.detection.checks.push_back(make_check("metric law g = g_B + f^2 g_F", W.metric_law_residual, tol));
    if (decl.f && W.status != WarpStatus::NonPositiveWarp)
        r.detection.checks.push_back(make_check("candidate f proportional to estimate", W.fit_residual, tol,
                                                "f = " + decl.f_source + ", scale " + num(W.fit_scale)));
    r.detection.verdict = worst(r.detection.checks);
    r.detection.detail = std::string(to_string(W.status)) + (W.message.empty() ? "" : ": " + W.message);

    if (W.ok())
        r.connection = verify_warped_connection(S, W, tol);
    else
        r.connection = CheckGroup{"warped connection (" + decl.name + ")", {}, Verdict::Vacuous, "no warped split"};

    if (scene.has_structure()) {
        const Distribution& Dbot = scene.distribution(scene.anti_invariant);
        const Distribution& Dlam = scene.distribution(scene.slant);
        r.characterization = characterization_test(S, Dbot, Dlam, W, lambda, tol);
        r.triviality = triviality_test(S, Dbot, Dlam, W, lambda, tol);
        r.obstruction = nonexistence_obstruction(S, Dbot, Dlam, decl, W, lambda, tol);
        const TrivialityReport& t = r.triviality;
        if (t.applicable && t.measured_sign < 0 && t.plus_residual > tol.identity)
            notes.push_back({"triviality identity (" + decl.name + ")",
                             "lambda (Z ln f) g(X,Y) + g(h(X,Y), ntZ) = 0",
                             "lambda (Z ln f) g(X,Y) - g(h(X,Y), ntZ) = 0",
                             "stated form leaves residual " + num(t.plus_residual) + "; corrected form " +
                                 num(t.minus_residual)});
    }
    return r;
}

void compare_references(const Scene& scene, const SampleSet& S, AnalysisReport& rep)
{
    if (scene.references.empty())
        return;
    CheckGroup g{"reference values", {}, Verdict::Vacuous, {}};
    const Tolerances& tol = scene.tol;
    for (const ReferenceValue& ref : scene.references) {
        switch (ref.kind) {
        case ReferenceValue::Kind::SlantCoefficient: {
            const double stated = eval_value(*ref.value, Vec(0));
            const auto it = std::find_if(rep.slant.begin(), rep.slant.end(),
                                         [&](const SlantReport& s) { return s.distribution == ref.target; });
            if (it == rep.slant.end())
                break;
            const double diff = std::abs(it->lambda_hat - stated);
            if (diff <= tol.classification * std::max(1.0, std::abs(stated)))
                g.checks.push_back(make_check("slant coefficient of " + ref.target + " = " + ref.stated, diff, tol));
            else
                rep.discrepancies.push_back({"slant coefficient of " + ref.target, ref.stated + " = " + num(stated),
                                             num(it->lambda_hat), ref.note});
            break;
        }
        case ReferenceValue::Kind::Metric: {
            double diff = 0.0;
            for (const PointFrame& F : S.frames)
                for (std::size_t i = 0; i < ref.matrix.size(); ++i)
                    for (std::size_t j = 0; j < ref.matrix[i].size(); ++j)
                        diff = std::max(diff, std::abs(F.g(i, j) - eval_value(ref.matrix[i][j], F.p)));
            if (diff <= tol.identity)
                g.checks.push_back(make_check("induced metric = " + ref.stated, diff, tol));
            else
                rep.discrepancies.push_back({"induced metric", ref.stated, "max entry difference " + num(diff), ref.note});
            break;
        }
        case ReferenceValue::Kind::WarpingFunction: {
            const auto it = std::find_if(rep.warped.begin(), rep.warped.end(),
                                         [&](const WarpedResult& w) { return w.name == ref.target; });
            if (it == rep.warped.end() || !it->split.ok())
                break;
            std::vector<double> ratios;
            for (std::size_t i = 0; i < S.frames.size(); ++i)
                ratios.push_back(eval_value(*ref.value, S.frames[i].p) / it->split.f[i]);
            const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
            const double spread = (*mx - *mn) / std::abs(*mx);
            if (std::isfinite(spread) && spread <= tol.identity)
                g.checks.push_back(make_check("warping function of " + ref.target + " proportional to " + ref.stated,
                                              spread, tol));
            else
                rep.discrepancies.push_back({"warping function of " + ref.target, ref.stated,
                                             "ratio to estimate varies by " + num(spread), ref.note});
            break;
        }
        }
    }
    if (!g.checks.empty())
        rep.suites.push_back(finish(std::move(g)));
}

} // namespace

bool AnalysisReport::has_fail() const
{
    for (const CheckGroup& g : suites)
        if (g.verdict == Verdict::Fail)
            return true;
    for (const ConditionReport& c : conditions)
        if (c.verdict == Verdict::Fail)
            return true;
    for (const WarpedResult& w : warped)
        if (w.detection.verdict == Verdict::Fail || w.connection.verdict == Verdict::Fail ||
            w.characterization.verdict == Verdict::Fail || w.triviality.verdict == Verdict::Fail ||
            w.obstruction.verdict == Verdict::Fail)
            return true;
    return false;
}

AnalysisReport run_analysis(const Scene& scene, Command command, const std::string& target)
{
    AnalysisReport rep;
    rep.command = to_string(command);
    rep.scene = scene.name;
    rep.description = scene.description;
    rep.target = target;
    rep.dim = scene.immersion.dim();
    rep.ambient_dim = scene.ambient.dim();
    rep.plan = scene.immersion.plan();
    rep.tol = scene.tol;

    if (command == Command::CheckSlant)
        scene.distribution(target);
    if (command == Command::CheckWarped)
        scene.warped_decl(target);

    rep.structure = verify_structure(scene.ambient, scene.tol.identity);
    rep.suites.push_back(ambient_suite(rep.structure, scene.ambient, scene.tol));
    if (command == Command::VerifyAmbient)
        return rep;

    try {
        const SampleSet S = sample(scene.immersion);
        rep.total_points = S.total;
        rep.valid_points = static_cast<int>(S.frames.size());
        rep.skipped = S.skipped;
        if (S.frames.empty())
            throw NumericalError("no valid sample points (" + std::to_string(S.total) + " skipped)");

        const Vec c = scene.immersion.center();
        try {
            const PointFrame F = frame_at(scene.immersion, c);
            rep.center = c;
            rep.metric_at_center = F.g;
        } catch (const FrameError&) {
        }

        if (command == Command::Analyze) {
            rep.suites.push_back(frame_suite(S, scene.tol));
            rep.suites.push_back(product_suite(S, scene.tol));
        }

        for (const Distribution& D : scene.distributions) {
            if (D.empty())
                continue;
            if (command == Command::CheckSlant && D.name != target)
                continue;
            if (command == Command::CheckWarped && D.name != scene.slant)
                continue;
            rep.slant.push_back(slant_analyze(S, D, scene.tol));
            const SlantReport& s = rep.slant.back();
            if (command != Command::CheckWarped &&
                (s.classification == SlantClass::ProperSlant || s.classification == SlantClass::Invariant))
                rep.suites.push_back(slant_suite(S, D, s, scene.tol, rep.discrepancies));
        }

        double lambda = 0.0;
        if (scene.has_structure() && command != Command::CheckSlant) {
            const Distribution& Dbot = scene.distribution(scene.anti_invariant);
            const Distribution& Dlam = scene.distribution(scene.slant);
            rep.decomposition = check_decomposition(S, Dbot, Dlam, scene.tol);
            lambda = rep.decomposition->lambda;
            if (command == Command::Analyze) {
                rep.suites.push_back(decomposition_suite(*rep.decomposition));
                for (const Distribution* D : {&Dbot, &Dlam}) {
                    rep.integrability.push_back(integrability_test(S, *D, scene.tol));
                    rep.geodesic.push_back(geodesic_test(S, *D, scene.tol));
                }
                rep.conditions.push_back(integrability_condition_Dbot(S, Dbot, Dlam, lambda, scene.tol));
                rep.conditions.push_back(integrability_condition_Dlam(S, Dbot, Dlam, lambda, scene.tol));
                rep.conditions.push_back(foliation_condition_Dbot(S, Dbot, Dlam, lambda, scene.tol));
                rep.conditions.push_back(foliation_condition_Dlam(S, Dbot, Dlam, lambda, scene.tol));
            }
        }

        if (command == Command::Analyze || command == Command::CheckWarped)
            for (const WarpedDecl& w : scene.warped)
                if (command == Command::Analyze || w.name == target)
                    rep.warped.push_back(run_warped(scene, S, w, lambda, rep.discrepancies));

        if (command == Command::Analyze)
            compare_references(scene, S, rep);
    } catch (const DistributionError& e) {
        throw NumericalError(e.what());
    } catch (const EvalError& e) {
        throw NumericalError(e.what());
    } catch (const FrameError& e) {
        throw NumericalError(e.what());
    }
    return rep;
}

} // namespace parageo
