#pragma once

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "parageo/analysis.hpp"
#include "parageo/corpus.hpp"

namespace testing {

using parageo::Mat;
using parageo::Vec;

inline parageo::Scene example() { return parageo::parse_scene(parageo::example_scene_text(), "example"); }

inline Vec point(std::initializer_list<double> v)
{
    Vec p(static_cast<int>(v.size()));
    int i = 0;
    for (double x : v)
        p[i++] = x;
    return p;
}

inline parageo::Immersion immersion(int m, const std::vector<std::string>& coords, const Vec& lo, const Vec& hi,
                                    parageo::SamplePlan plan = {})
{
    const int d = static_cast<int>(lo.size());
    std::vector<parageo::Expr> e;
    for (const auto& c : coords)
        e.push_back(parageo::parse(c, d));
    return parageo::Immersion(parageo::AmbientSpace::canonical(m), e, parageo::Domain{lo, hi, {}}, plan);
}

inline parageo::Distribution distribution(const std::string& name, const std::vector<std::vector<std::string>>& gens,
                                          int d)
{
    parageo::Distribution D{name, {}};
    for (const auto& g : gens)
        D.gens.push_back(parageo::VectorField::parse(g, d));
    return D;
}

inline double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

} // namespace testing

namespace testing {

/// Random expression text over x1..x`dim`, at most `depth` operator levels.
/// Every construction is total on R^dim.
inline std::string random_expression(std::mt19937_64& rng, int depth, int dim)
{
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
    if (depth == 0 || pick(5) == 0) {
        switch (pick(3)) {
        case 0: return "pi";
        case 1: {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.2f", 0.1 + 1.9 * unit(rng));
            return buf;
        }
        default: return "x" + std::to_string(1 + pick(dim));
        }
    }
    const std::string a = random_expression(rng, depth - 1, dim);
    switch (pick(13)) {
    case 0: return "(" + a + " + " + random_expression(rng, depth - 1, dim) + ")";
    case 1: return "(" + a + " - " + random_expression(rng, depth - 1, dim) + ")";
    case 2: return "(" + a + " * " + random_expression(rng, depth - 1, dim) + ")";
    case 3: return "(" + a + ") / (2 + sin(" + random_expression(rng, depth - 1, dim) + "))";
    case 4: return "sin(" + a + ")";
    case 5: return "cos(" + a + ")";
    case 6: return "exp((" + a + ") / (1 + (" + a + ")^2))";
    case 7: return "ln(1 + (" + a + ")^2)";
    case 8: return "sqrt(1 + (" + a + ")^2)";
    case 9: return "sinh(sin(" + a + "))";
    case 10: return "cosh(sin(" + a + "))";
    case 11: return pick(2) ? "(sin(" + a + "))^3" : "pow(2 + cos(" + a + "), -2)";
    default: return "-(" + a + ")";
    }
}

} // namespace testing

namespace testing {

struct FdErrors {
    double grad = 0.0; // max relative gradient error
    double hess = 0.0; // max relative Hessian error
};

/// Compares the jet of `e` at p with central differences of values only
/// (step 1e-5 for the gradient, 1e-4 for the Hessian).
inline FdErrors finite_difference_errors(const parageo::Expr& e, const Vec& p)
{
    const parageo::Jet2 j = parageo::eval_jet2(e, p);
    const int d = static_cast<int>(p.size());
    auto f = [&](const Vec& q) { return parageo::eval_value(e, q); };
    FdErrors out;
    const double hg = 1e-5, hh = 1e-4;
    const double gscale = std::max(1.0, j.grad.cwiseAbs().maxCoeff());
    const double hscale = std::max(1.0, j.hess.cwiseAbs().maxCoeff());
    for (int i = 0; i < d; ++i) {
        Vec a = p, b = p;
        a[i] += hg;
        b[i] -= hg;
        const double fd = (f(a) - f(b)) / (2 * hg);
        out.grad = std::max(out.grad, std::abs(fd - j.grad[i]) / gscale);
        for (int k = 0; k < d; ++k) {
            Vec pp = p, pm = p, mp = p, mm = p;
            pp[i] += hh, pp[k] += hh;
            pm[i] += hh, pm[k] -= hh;
            mp[i] -= hh, mp[k] += hh;
            mm[i] -= hh, mm[k] -= hh;
            const double fdh = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * hh * hh);
            out.hess = std::max(out.hess, std::abs(fdh - j.hess(i, k)) / hscale);
        }
    }
    return out;
}

} // namespace testing
