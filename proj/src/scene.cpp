#include "parageo/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

namespace parageo {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw SceneError(where + ": " + what);
}

std::string mark_of(const YAML::Node& n)
{
    const YAML::Mark m = n.Mark();
    if (m.line < 0)
        return {};
    return " (line " + std::to_string(m.line + 1) + ")";
}

void allow_keys(const YAML::Node& n, const std::string& where, std::initializer_list<const char*> keys)
{
    if (!n.IsMap())
        fail(where, "expected a mapping" + mark_of(n));
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& kv : n) {
        const std::string k = kv.first.as<std::string>();
        if (!ok.count(k))
            fail(where, "unknown key '" + k + "'" + mark_of(kv.first));
    }
}

const YAML::Node require(const YAML::Node& n, const char* key, const std::string& where)
{
    const YAML::Node v = n[key];
    if (!v)
        fail(where, std::string("missing key '") + key + "'");
    return v;
}

std::string scalar(const YAML::Node& n, const std::string& where)
{
    if (!n.IsScalar())
        fail(where, "expected a scalar" + mark_of(n));
    return n.Scalar();
}

Expr expression(const YAML::Node& n, int dim, const std::string& where)
{
    const std::string src = scalar(n, where);
    try {
        return parse(src, dim);
    } catch (const ParseError& e) {
        fail(where, std::string(e.what()) + " in '" + src + "'" + mark_of(n));
    }
}

// Plain number or a constant expression such as "1/sqrt(2)".
double number(const YAML::Node& n, const std::string& where)
{
    const Expr e = expression(n, 0, where);
    try {
        return eval_value(e, Vec(0));
    } catch (const EvalError& err) {
        fail(where, err.what());
    }
}

long long integer(const YAML::Node& n, const std::string& where)
{
    try {
        return n.as<long long>();
    } catch (const YAML::Exception&) {
        fail(where, "expected an integer" + mark_of(n));
    }
}

Mat matrix(const YAML::Node& n, const std::string& where)
{
    if (!n.IsSequence() || n.size() == 0)
        fail(where, "expected a nonempty list of rows");
    const int rows = static_cast<int>(n.size());
    const int cols = n[0].IsSequence() ? static_cast<int>(n[0].size()) : 0;
    Mat M(rows, cols);
    for (int i = 0; i < rows; ++i) {
        if (!n[i].IsSequence() || static_cast<int>(n[i].size()) != cols)
            fail(where, "row " + std::to_string(i + 1) + " has the wrong length");
        for (int j = 0; j < cols; ++j)
            M(i, j) = number(n[i][j], where);
    }
    return M;
}

std::vector<double> numbers(const YAML::Node& n, const std::string& where)
{
    if (!n.IsSequence())
        fail(where, "expected a list");
    std::vector<double> out;
    for (const auto& v : n)
        out.push_back(number(v, where));
    return out;
}

std::vector<int> indices(const YAML::Node& n, int dim, const std::string& where)
{
    if (!n.IsSequence())
        fail(where, "expected a list of 1-based indices");
    std::vector<int> out;
    for (const auto& v : n) {
        const long long i = integer(v, where);
        if (i < 1 || i > dim)
            fail(where, "index " + std::to_string(i) + " out of range 1.." + std::to_string(dim));
        out.push_back(static_cast<int>(i - 1));
    }
    return out;
}

AmbientSpace read_ambient(const YAML::Node& n)
{
    allow_keys(n, "ambient", {"canonical", "P", "G"});
    try {
        if (n["canonical"]) {
            if (n["P"] || n["G"])
                fail("ambient", "give either 'canonical' or 'P' and 'G', not both");
            const long long m = integer(n["canonical"], "ambient.canonical");
            if (m < 1 || m > 64)
                fail("ambient.canonical", "half dimension must be between 1 and 64");
            return AmbientSpace::canonical(static_cast<int>(m));
        }
        return AmbientSpace(matrix(require(n, "P", "ambient"), "ambient.P"),
                            matrix(require(n, "G", "ambient"), "ambient.G"));
    } catch (const std::invalid_argument& e) {
        fail("ambient", e.what());
    }
}

Domain read_domain(const YAML::Node& n, int dim)
{
    allow_keys(n, "immersion.domain", {"lo", "hi", "exclude"});
    const auto lo = numbers(require(n, "lo", "immersion.domain"), "immersion.domain.lo");
    const auto hi = numbers(require(n, "hi", "immersion.domain"), "immersion.domain.hi");
    if (static_cast<int>(lo.size()) != dim || static_cast<int>(hi.size()) != dim)
        fail("immersion.domain", "lo and hi need " + std::to_string(dim) + " entries");
    Domain D;
    D.lo = Eigen::Map<const Vec>(lo.data(), dim);
    D.hi = Eigen::Map<const Vec>(hi.data(), dim);
    if (const YAML::Node ex = n["exclude"]) {
        if (!ex.IsSequence())
            fail("immersion.domain.exclude", "expected a list");
        for (const auto& e : ex) {
            allow_keys(e, "immersion.domain.exclude", {"var", "value"});
            const long long var = integer(require(e, "var", "exclude"), "immersion.domain.exclude.var");
            if (var < 1 || var > dim)
                fail("immersion.domain.exclude.var", "index " + std::to_string(var) + " out of range");
            D.excluded.push_back(
                {static_cast<int>(var - 1), number(require(e, "value", "exclude"), "immersion.domain.exclude")});
        }
    }
    return D;
}

SamplePlan read_plan(const YAML::Node& n)
{
    SamplePlan plan;
    if (!n)
        return plan;
    allow_keys(n, "samples", {"grid", "random", "seed"});
    if (n["grid"])
        plan.grid = static_cast<int>(integer(n["grid"], "samples.grid"));
    if (n["random"])
        plan.random = static_cast<int>(integer(n["random"], "samples.random"));
    if (n["seed"])
        plan.seed = static_cast<std::uint64_t>(integer(n["seed"], "samples.seed"));
    if (plan.grid < 0 || plan.random < 0)
        fail("samples", "counts must be nonnegative");
    if (plan.grid == 0 && plan.random == 0)
        fail("samples", "the plan has no points");
    return plan;
}

Tolerances read_tolerances(const YAML::Node& n)
{
    Tolerances t;
    if (!n)
        return t;
    allow_keys(n, "tolerances", {"identity", "classification", "condition", "structural", "not_slant"});
    auto get = [&](const char* key, double& into) {
        if (n[key]) {
            into = number(n[key], std::string("tolerances.") + key);
            if (!(into > 0.0))
                fail(std::string("tolerances.") + key, "must be positive");
        }
    };
    get("identity", t.identity);
    get("classification", t.classification);
    get("condition", t.condition);
    get("structural", t.structural);
    get("not_slant", t.not_slant);
    return t;
}

std::vector<Distribution> read_distributions(const YAML::Node& n, int dim)
{
    std::vector<Distribution> out;
    if (!n)
        return out;
    if (!n.IsMap())
        fail("distributions", "expected a mapping from names to generator lists");
    for (const auto& kv : n) {
        Distribution D;
        D.name = kv.first.as<std::string>();
        const std::string where = "distributions." + D.name;
        if (!kv.second.IsSequence())
            fail(where, "expected a list of generators");
        for (const auto& gen : kv.second) {
            if (!gen.IsSequence() || static_cast<int>(gen.size()) != dim)
                fail(where, "each generator needs " + std::to_string(dim) + " coefficients");
            VectorField X;
            for (const auto& c : gen)
                X.coeffs.push_back(expression(c, dim, where));
            D.gens.push_back(std::move(X));
        }
        out.push_back(std::move(D));
    }
    return out;
}

WarpedDecl read_warped(const YAML::Node& n, int dim, std::size_t k)
{
    const std::string where = "warped[" + std::to_string(k + 1) + "]";
    allow_keys(n, where, {"name", "base", "fiber", "f", "orientation"});
    WarpedDecl w;
    w.name = n["name"] ? scalar(n["name"], where + ".name") : "W" + std::to_string(k + 1);
    w.base = indices(require(n, "base", where), dim, where + ".base");
    w.fiber = indices(require(n, "fiber", where), dim, where + ".fiber");
    if (n["f"]) {
        w.f_source = scalar(n["f"], where + ".f");
        w.f = expression(n["f"], dim, where + ".f");
    }
    if (n["orientation"]) {
        const std::string o = scalar(n["orientation"], where + ".orientation");
        if (o == "slant-base")
            w.orientation = WarpOrientation::SlantBase;
        else if (o == "anti-invariant-base")
            w.orientation = WarpOrientation::AntiInvariantBase;
        else
            fail(where + ".orientation", "expected 'slant-base' or 'anti-invariant-base', got '" + o + "'");
    }
    std::vector<int> seen(dim, 0);
    for (int i : w.base)
        ++seen[i];
    for (int i : w.fiber)
        ++seen[i];
    for (int i = 0; i < dim; ++i)
        if (seen[i] != 1)
            fail(where, "base and fiber must partition the parameters; index " + std::to_string(i + 1) +
                            (seen[i] ? " is listed twice" : " is missing"));
    return w;
}

ReferenceValue read_reference(const YAML::Node& n, int dim, std::size_t k)
{
    const std::string where = "reference[" + std::to_string(k + 1) + "]";
    allow_keys(n, where, {"quantity", "target", "value", "note"});
    ReferenceValue r;
    const std::string q = scalar(require(n, "quantity", where), where + ".quantity");
    if (n["note"])
        r.note = scalar(n["note"], where + ".note");
    if (n["target"])
        r.target = scalar(n["target"], where + ".target");
    const YAML::Node v = require(n, "value", where);
    if (q == "slant_coefficient") {
        r.kind = ReferenceValue::Kind::SlantCoefficient;
        r.stated = scalar(v, where + ".value");
        r.value = expression(v, 0, where + ".value");
    } else if (q == "warping_function") {
        r.kind = ReferenceValue::Kind::WarpingFunction;
        r.stated = scalar(v, where + ".value");
        r.value = expression(v, dim, where + ".value");
    } else if (q == "metric") {
        r.kind = ReferenceValue::Kind::Metric;
        if (!v.IsSequence() || static_cast<int>(v.size()) != dim)
            fail(where + ".value", "metric needs " + std::to_string(dim) + " rows");
        std::ostringstream text;
        text << '[';
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].IsSequence() || static_cast<int>(v[i].size()) != dim)
                fail(where + ".value", "metric rows need " + std::to_string(dim) + " entries");
            std::vector<Expr> row;
            text << (i ? "; " : "");
            for (std::size_t j = 0; j < v[i].size(); ++j) {
                row.push_back(expression(v[i][j], dim, where + ".value"));
                text << (j ? ", " : "") << v[i][j].Scalar();
            }
            r.matrix.push_back(std::move(row));
        }
        text << ']';
        r.stated = text.str();
    } else {
        fail(where + ".quantity", "unknown quantity '" + q + "'");
    }
    return r;
}

Scene build(const YAML::Node& root)
{
    if (!root.IsMap())
        fail("scene", "top level must be a mapping");
    allow_keys(root, "scene",
               {"name", "description", "ambient", "immersion", "samples", "distributions", "structure", "warped",
                "tolerances", "reference"});

    AmbientSpace ambient = read_ambient(require(root, "ambient", "scene"));

    const YAML::Node imm = require(root, "immersion", "scene");
    allow_keys(imm, "immersion", {"dim", "coords", "domain"});
    const long long dim = integer(require(imm, "dim", "immersion"), "immersion.dim");
    if (dim < 1 || dim >= ambient.dim())
        fail("immersion.dim", "must be between 1 and " + std::to_string(ambient.dim() - 1));
    const int d = static_cast<int>(dim);

    const YAML::Node coords = require(imm, "coords", "immersion");
    if (!coords.IsSequence() || static_cast<int>(coords.size()) != ambient.dim())
        fail("immersion.coords", "expected " + std::to_string(ambient.dim()) + " coordinate expressions");
    std::vector<std::string> sources;
    std::vector<Expr> exprs;
    for (std::size_t i = 0; i < coords.size(); ++i) {
        const std::string where = "immersion.coords[" + std::to_string(i + 1) + "]";
        sources.push_back(scalar(coords[i], where));
        exprs.push_back(expression(coords[i], d, where));
    }
    Domain domain = read_domain(require(imm, "domain", "immersion"), d);
    SamplePlan plan = read_plan(root["samples"]);

    std::optional<Immersion> M;
    try {
        M.emplace(ambient, exprs, domain, plan);
    } catch (const std::invalid_argument& e) {
        fail("immersion", e.what());
    }

    Scene scene{
        .name = root["name"] ? scalar(root["name"], "name") : "unnamed",
        .description = root["description"] ? scalar(root["description"], "description") : "",
        .ambient = ambient,
        .coord_sources = std::move(sources),
        .immersion = std::move(*M),
        .distributions = read_distributions(root["distributions"], d),
        .anti_invariant = {},
        .slant = {},
        .warped = {},
        .tol = read_tolerances(root["tolerances"]),
        .references = {},
    };

    std::set<std::string> names;
    for (const auto& D : scene.distributions)
        names.insert(D.name);

    if (const YAML::Node s = root["structure"]) {
        allow_keys(s, "structure", {"anti_invariant", "slant"});
        if (s["anti_invariant"])
            scene.anti_invariant = scalar(s["anti_invariant"], "structure.anti_invariant");
        if (s["slant"])
            scene.slant = scalar(s["slant"], "structure.slant");
        for (const std::string* n : {&scene.anti_invariant, &scene.slant})
            if (!n->empty() && !names.count(*n))
                fail("structure", "unknown distribution '" + *n + "'");
        if (scene.anti_invariant.empty() || scene.slant.empty())
            fail("structure", "name both the anti_invariant and the slant factor");
    }

    if (const YAML::Node w = root["warped"]) {
        if (!w.IsSequence())
            fail("warped", "expected a list");
        std::set<std::string> seen;
        for (std::size_t k = 0; k < w.size(); ++k) {
            scene.warped.push_back(read_warped(w[k], d, k));
            if (!seen.insert(scene.warped.back().name).second)
                fail("warped", "duplicate name '" + scene.warped.back().name + "'");
        }
        if (!scene.warped.empty() && !scene.has_structure())
            fail("warped", "warped declarations need a 'structure' block");
    }

    if (const YAML::Node r = root["reference"]) {
        if (!r.IsSequence())
            fail("reference", "expected a list");
        for (std::size_t k = 0; k < r.size(); ++k) {
            ReferenceValue ref = read_reference(r[k], d, k);
            if (ref.kind == ReferenceValue::Kind::SlantCoefficient && !names.count(ref.target))
                fail("reference[" + std::to_string(k + 1) + "]", "unknown distribution '" + ref.target + "'");
            if (ref.kind == ReferenceValue::Kind::WarpingFunction) {
                bool found = false;
                for (const auto& wd : scene.warped)
                    found |= wd.name == ref.target;
                if (!found)
                    fail("reference[" + std::to_string(k + 1) + "]", "unknown warped declaration '" + ref.target + "'");
            }
            scene.references.push_back(std::move(ref));
        }
    }
    return scene;
}

} // namespace

const Distribution& Scene::distribution(const std::string& name) const
{
    for (const auto& D : distributions)
        if (D.name == name)
            return D;
    throw SceneError("unknown distribution '" + name + "'");
}

const WarpedDecl& Scene::warped_decl(const std::string& name) const
{
    for (const auto& w : warped)
        if (w.name == name)
            return w;
    throw SceneError("unknown warped declaration '" + name + "'");
}

Scene parse_scene(std::string_view text, const std::string& origin)
{
    try {
        return build(YAML::Load(std::string(text)));
    } catch (const YAML::Exception& e) {
        throw SceneError(origin + ": line " + std::to_string(e.mark.line + 1) + ", column " +
                         std::to_string(e.mark.column + 1) + ": " + e.msg);
    } catch (const SceneError& e) {
        throw SceneError(origin + ": " + e.what());
    }
}

Scene load_scene(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw SceneError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path);
}

void apply_overrides(Scene& scene, const SceneOverrides& o)
{
    if (o.tol) {
        if (!(*o.tol > 0.0))
            throw SceneError("--tol must be positive");
        scene.tol.identity = *o.tol;
    }
    SamplePlan plan = scene.immersion.plan();
    if (o.seed)
        plan.seed = *o.seed;
    if (o.grid) {
        if (*o.grid < 0 || (*o.grid == 0 && plan.random == 0))
            throw SceneError("--grid must leave at least one sample point");
        plan.grid = *o.grid;
    }
    scene.immersion.set_plan(plan);
}

} // namespace parageo
