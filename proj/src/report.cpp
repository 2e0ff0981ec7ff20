#include "parageo/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

#include "json.hpp"

namespace parageo {

namespace {

using json = nlohmann::ordered_json;

json vec_json(const Vec& v)
{
    json a = json::array();
    for (int i = 0; i < v.size(); ++i)
        a.push_back(v[i]);
    return a;
}

json mat_json(const Mat& m)
{
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        a.push_back(row);
    }
    return a;
}

json indices_json(const std::vector<int>& idx)
{
    json a = json::array();
    for (int i : idx)
        a.push_back(i + 1);
    return a;
}

json check_json(const Check& c)
{
    return json{{"name", c.name},
                {"verdict", to_string(c.verdict)},
                {"residual", c.residual},
                {"tolerance", c.tolerance},
                {"detail", c.detail}};
}

json group_json(const CheckGroup& g)
{
    json checks = json::array();
    for (const Check& c : g.checks)
        checks.push_back(check_json(c));
    return json{{"name", g.name}, {"verdict", to_string(g.verdict)}, {"detail", g.detail}, {"checks", checks}};
}

json slant_json(const SlantReport& s)
{
    double lo = 0, hi = 0;
    if (!s.lambdas.empty()) {
        lo = *std::min_element(s.lambdas.begin(), s.lambdas.end());
        hi = *std::max_element(s.lambdas.begin(), s.lambdas.end());
    }
    return json{{"distribution", s.distribution},
                {"rank", s.rank},
                {"classification", to_string(s.classification)},
                {"lambda", s.lambda_hat},
                {"lambda_min", lo},
                {"lambda_max", hi},
                {"lambda_spread", s.lambda_spread},
                {"t2_deviation", s.t2_deviation},
                {"closure_residual", s.closure_residual},
                {"antisymmetry_residual", s.antisymmetry_residual},
                {"max_t_ratio", s.max_t_ratio},
                {"max_n_ratio", s.max_n_ratio},
                {"points", s.points},
                {"note", s.note}};
}

json decomposition_json(const DecompReport& d)
{
    return json{{"verdict", to_string(d.verdict)},
                {"reason", d.reason},
                {"d1", d.d1},
                {"d2", d.d2},
                {"lambda", d.lambda},
                {"proper", d.proper},
                {"orthogonality_residual", d.orthogonality_residual},
                {"span_ratio", d.span_ratio},
                {"anti_invariance_residual", d.anti_invariance_residual}};
}

json oracle_json(const BracketReport& b)
{
    json holds = nullptr;
    if (b.verdict == Verdict::Pass)
        holds = true;
    else if (b.verdict == Verdict::Fail)
        holds = false;
    return json{{"distribution", b.distribution},
                {"residual", b.max_residual},
                {"result", to_string(b.verdict)},
                {"holds", holds}};
}

json condition_json(const ConditionReport& c)
{
    return json{{"name", c.name},
                {"verdict", to_string(c.verdict)},
                {"identity_residual", c.identity_residual},
                {"condition_residual", c.condition_residual},
                {"condition", to_string(c.condition)},
                {"oracle_residual", c.oracle_residual},
                {"oracle", to_string(c.oracle)},
                {"agree", c.agree},
                {"detail", c.detail}};
}

json warped_json(const WarpedResult& w)
{
    const WarpedSplit& s = w.split;
    json split{{"status", to_string(s.status)},
               {"message", s.message},
               {"base", indices_json(s.base_vars)},
               {"fiber", indices_json(s.fiber_vars)},
               {"reference_point", vec_json(s.reference)},
               {"reference_fiber", s.reference_fiber + 1},
               {"residual", s.residual},
               {"f_constant", s.f_constant},
               {"f_variation", s.f_variation},
               {"f", s.f}};
    if (s.f_expr_fit)
        split["f_fit"] = json{{"expression", *s.f_expr_fit}, {"scale", s.fit_scale}, {"residual", s.fit_residual}};
    else
        split["f_fit"] = nullptr;

    const TrivialityReport& t = w.triviality;
    json triv{{"verdict", to_string(t.verdict)},
              {"applicable", t.applicable},
              {"lambda", t.lambda},
              {"curvature_term", t.curvature_term},
              {"warp_term", t.warp_term},
              {"plus_residual", t.plus_residual},
              {"minus_residual", t.minus_residual},
              {"measured_sign", t.measured_sign},
              {"identity_residual", t.identity_residual},
              {"trivial", t.trivial},
              {"f_constant", t.f_constant},
              {"consistent", t.consistent},
              {"detail", t.detail}};

    const ObstructionReport& o = w.obstruction;
    json obs{{"verdict", to_string(o.verdict)},
             {"applicable", o.applicable},
             {"lambda", o.lambda},
             {"warp_term", o.warp_term},
             {"implied_residual", o.implied_residual},
             {"symmetry_residual", o.symmetry_residual},
             {"cd_residual", o.cd_residual},
             {"first_chain_residual", o.first_chain_residual},
             {"second_chain_residual", o.second_chain_residual},
             {"forced_constant", o.forced_constant},
             {"consistent", o.consistent},
             {"detail", o.detail}};

    return json{{"name", w.name},
                {"orientation", to_string(w.orientation)},
                {"f", w.f_source},
                {"split", split},
                {"detection", group_json(w.detection)},
                {"connection", group_json(w.connection)},
                {"characterization", group_json(w.characterization)},
                {"triviality", triv},
                {"obstruction", obs}};
}

std::map<std::string, int> verdict_counts(const AnalysisReport& rep)
{
    std::map<std::string, int> n{{"Pass", 0}, {"Fail", 0}, {"Inconclusive", 0}, {"Vacuous", 0}};
    auto add_group = [&](const CheckGroup& g) {
        for (const Check& c : g.checks)
            ++n[to_string(c.verdict)];
    };
    for (const CheckGroup& g : rep.suites)
        add_group(g);
    for (const ConditionReport& c : rep.conditions)
        ++n[to_string(c.verdict)];
    for (const WarpedResult& w : rep.warped) {
        add_group(w.detection);
        add_group(w.connection);
        add_group(w.characterization);
        ++n[to_string(w.triviality.verdict)];
        ++n[to_string(w.obstruction.verdict)];
    }
    return n;
}

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string tag(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
    case Verdict::Vacuous: return "VACUOUS";
    }
    return "?";
}

void text_group(std::ostringstream& os, const CheckGroup& g)
{
    os << "\n[" << tag(g.verdict) << "] " << g.name;
    if (!g.detail.empty())
        os << ": " << g.detail;
    os << '\n';
    for (const Check& c : g.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-13s %-62s %s", tag(c.verdict).c_str(), c.name.c_str(),
                      num(c.residual).c_str());
        os << line;
        if (!c.detail.empty())
            os << "  (" << c.detail << ')';
        os << '\n';
    }
}

} // namespace

std::string to_json(const AnalysisReport& rep)
{
    json j;
    j["report_version"] = report_version;
    j["command"] = rep.command;
    j["scene"] = rep.scene;
    j["description"] = rep.description;
    j["target"] = rep.target.empty() ? json(nullptr) : json(rep.target);
    j["dimensions"] = json{{"submanifold", rep.dim}, {"ambient", rep.ambient_dim}};
    j["tolerances"] = json{{"identity", rep.tol.identity},
                           {"classification", rep.tol.classification},
                           {"condition", rep.tol.condition},
                           {"structural", rep.tol.structural},
                           {"not_slant", rep.tol.not_slant}};
    json skipped = json::array();
    for (const SkippedPoint& s : rep.skipped)
        skipped.push_back(json{{"index", s.index}, {"point", vec_json(s.p)}, {"reason", s.reason}});
    j["sampling"] = json{{"grid", rep.plan.grid},
                         {"random", rep.plan.random},
                         {"seed", rep.plan.seed},
                         {"total", rep.total_points},
                         {"valid", rep.valid_points},
                         {"skipped", skipped}};
    const StructureReport& s = rep.structure;
    j["structure"] = json{{"pass", s.pass},
                          {"p_squared_residual", s.p_squared_residual},
                          {"compatibility_residual", s.compatibility_residual},
                          {"symmetry_residual", s.symmetry_residual},
                          {"antisymmetry_residual", s.antisymmetry_residual},
                          {"signature", json::array({s.positive, s.negative, s.zero})}};
    if (rep.center && rep.metric_at_center)
        j["center"] = json{{"point", vec_json(*rep.center)}, {"metric", mat_json(*rep.metric_at_center)}};
    else
        j["center"] = nullptr;

    json suites = json::array();
    for (const CheckGroup& g : rep.suites)
        suites.push_back(group_json(g));
    j["suites"] = suites;

    json slant = json::array();
    for (const SlantReport& r : rep.slant)
        slant.push_back(slant_json(r));
    j["slant"] = slant;
    j["decomposition"] = rep.decomposition ? decomposition_json(*rep.decomposition) : json(nullptr);

    json integ = json::array(), geo = json::array();
    for (const BracketReport& b : rep.integrability)
        integ.push_back(oracle_json(b));
    for (const BracketReport& b : rep.geodesic)
        geo.push_back(oracle_json(b));
    j["oracles"] = json{{"integrable", integ}, {"totally_geodesic", geo}};

    json conds = json::array();
    for (const ConditionReport& c : rep.conditions)
        conds.push_back(condition_json(c));
    j["conditions"] = conds;

    json warped = json::array();
    for (const WarpedResult& w : rep.warped)
        warped.push_back(warped_json(w));
    j["warped"] = warped;

    json notes = json::array();
    for (const Discrepancy& d : rep.discrepancies)
        notes.push_back(json{{"quantity", d.quantity}, {"stated", d.stated}, {"computed", d.computed}, {"note", d.note}});
    j["discrepancies"] = notes;

    json counts = json::object();
    for (const auto& [k, v] : verdict_counts(rep))
        counts[k] = v;
    j["summary"] = json{{"fail", rep.has_fail()}, {"verdicts", counts}};
    return j.dump(2) + "\n";
}

std::string to_text(const AnalysisReport& rep)
{
    std::ostringstream os;
    os << "parageo " << rep.command << ": " << rep.scene;
    if (!rep.target.empty())
        os << " [" << rep.target << ']';
    os << '\n';
    if (!rep.description.empty())
        os << "  " << rep.description << '\n';
    os << "  submanifold of dimension " << rep.dim << " in R^" << rep.ambient_dim << '\n';
    if (rep.total_points > 0)
        os << "  samples: " << rep.valid_points << " valid of " << rep.total_points << " (grid " << rep.plan.grid
           << ", random " << rep.plan.random << ", seed " << rep.plan.seed << ")\n";
    for (const SkippedPoint& s : rep.skipped)
        os << "  skipped point " << s.index << ": " << s.reason << '\n';
    if (rep.metric_at_center) {
        const Mat& g = *rep.metric_at_center;
        os << "  induced metric at the domain center:\n";
        for (int i = 0; i < g.rows(); ++i) {
            os << "    [";
            for (int j = 0; j < g.cols(); ++j)
                os << (j ? ", " : "") << num(g(i, j));
            os << "]\n";
        }
    }

    for (const CheckGroup& g : rep.suites)
        text_group(os, g);

    if (!rep.slant.empty()) {
        os << "\nslant analysis\n";
        for (const SlantReport& s : rep.slant) {
            os << "  " << s.distribution << " (rank " << s.rank << "): " << to_string(s.classification)
               << ", lambda = " << num(s.lambda_hat) << ", spread " << num(s.lambda_spread);
            if (!s.note.empty())
                os << "; " << s.note;
            os << '\n';
        }
    }
    if (rep.decomposition) {
        const DecompReport& d = *rep.decomposition;
        os << "\ndecomposition: " << to_string(d.verdict) << " (d1 = " << d.d1 << ", d2 = " << d.d2
           << ", lambda = " << num(d.lambda) << "): " << d.reason << '\n';
    }
    if (!rep.integrability.empty()) {
        os << "\nproperty oracles\n";
        for (const BracketReport& b : rep.integrability)
            os << "  " << b.distribution << " integrable: " << to_string(b.verdict) << " (" << num(b.max_residual)
               << ")\n";
        for (const BracketReport& b : rep.geodesic)
            os << "  " << b.distribution << " totally geodesic: " << to_string(b.verdict) << " ("
               << num(b.max_residual) << ")\n";
    }
    if (!rep.conditions.empty()) {
        os << "\nprinted conditions against oracles\n";
        for (const ConditionReport& c : rep.conditions)
            os << "  " << tag(c.verdict) << "  " << c.name << ": identity " << num(c.identity_residual)
               << ", condition " << to_string(c.condition) << " (" << num(c.condition_residual) << "), oracle "
               << to_string(c.oracle) << "; " << c.detail << '\n';
    }
    for (const WarpedResult& w : rep.warped) {
        os << "\nwarped product " << w.name << " (" << to_string(w.orientation) << ")";
        if (!w.f_source.empty())
            os << ", candidate f = " << w.f_source;
        os << '\n';
        text_group(os, w.detection);
        text_group(os, w.connection);
        text_group(os, w.characterization);
        const TrivialityReport& t = w.triviality;
        os << "\n[" << tag(t.verdict) << "] triviality: " << t.detail << '\n';
        if (t.applicable)
            os << "  curvature term " << num(t.curvature_term) << ", warp term " << num(t.warp_term)
               << ", residual with + " << num(t.plus_residual) << ", with - " << num(t.minus_residual) << '\n';
        const ObstructionReport& o = w.obstruction;
        os << "\n[" << tag(o.verdict) << "] non-existence obstruction: " << o.detail << '\n';
        if (o.applicable)
            os << "  2 lambda X(ln f) g(Z,Z) up to " << num(o.warp_term) << ", implied by shape data "
               << num(o.implied_residual) << '\n';
    }
    if (!rep.discrepancies.empty()) {
        os << "\ndiscrepancies (stated vs computed)\n";
        for (const Discrepancy& d : rep.discrepancies) {
            os << "  " << d.quantity << ": stated " << d.stated << ", computed " << d.computed;
            if (!d.note.empty())
                os << " (" << d.note << ')';
            os << '\n';
        }
    }
    const auto counts = verdict_counts(rep);
    os << "\nsummary: " << counts.at("Pass") << " pass, " << counts.at("Fail") << " fail, "
       << counts.at("Inconclusive") << " inconclusive, " << counts.at("Vacuous") << " vacuous\n";
    return os.str();
}

} // namespace parageo
