#include "parageo/corpus.hpp"

#include <cstdio>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace parageo {

std::string example_scene_text()
{
    return R"yaml(name: cone-warped
description: cone-type immersion into R^6 with warping function x1
ambient:
  canonical: 3
immersion:
  dim: 3
  coords: ["x1", "x1*cos(x2)", "x1*sin(x2)", "x3", "0.5", "-1.25"]
  domain:
    lo: [0.5, 0.1, 0.5]
    hi: [2.0, 1.4, 2.0]
samples:
  grid: 5
  random: 20
  seed: 2024
distributions:
  Dbot: [["0", "1", "0"]]
  Dlam: [["1", "0", "0"], ["0", "0", "1"]]
structure:
  anti_invariant: Dbot
  slant: Dlam
warped:
  - name: W
    base: [1, 3]
    fiber: [2]
    f: "x1"
    orientation: slant-base
reference:
  - quantity: metric
    value: [["2", "0", "0"], ["0", "x1^2", "0"], ["0", "0", "-1"]]
  - quantity: slant_coefficient
    target: Dlam
    value: "1/sqrt(2)"
    note: "t maps Z1 to Z3 and Z3 to Z1/2, so t^2 = (1/2) I"
  - quantity: warping_function
    target: W
    value: "x1"
)yaml";
}

namespace {

std::string product_text(const std::string& name, const std::string& description, const std::string& warped)
{
    return "name: " + name + "\ndescription: " + description + R"yaml(
ambient:
  canonical: 4
immersion:
  dim: 3
  coords: ["x1", "x1", "cos(x2)", "sin(x2)", "x3", "0", "0", "0"]
  domain:
    lo: [-1.0, 0.0, -1.0]
    hi: [1.0, 3.0, 1.0]
samples:
  grid: 4
  random: 12
  seed: 7
distributions:
  Dbot: [["0", "1", "0"]]
  Dlam: [["1", "0", "0"], ["0", "0", "1"]]
structure:
  anti_invariant: Dbot
  slant: Dlam
warped:
)yaml" + warped;
}

std::string number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

} // namespace

std::string product_scene_text()
{
    return product_text("product", "slant plane times a circle, warping function 1",
                        R"yaml(  - name: W
    base: [1, 3]
    fiber: [2]
    f: "1"
    orientation: slant-base
)yaml");
}

std::string obstruction_scene_text(const std::string& f)
{
    return product_text("obstruction", "product declared with the anti-invariant factor as base",
                        "  - name: W\n    base: [2]\n    fiber: [1, 3]\n    f: \"" + f +
                            "\"\n    orientation: anti-invariant-base\n");
}

std::string invariant_scene_text()
{
    return R"yaml(name: invariant-plane
description: P-invariant surface with null coordinate directions
ambient:
  canonical: 2
immersion:
  dim: 2
  coords: ["x1 + x2", "0.3*sin(x1) + 0.3*x2^2", "x1 - x2", "0.3*sin(x1) - 0.3*x2^2"]
  domain:
    lo: [-1.0, -1.0]
    hi: [1.0, 1.0]
samples:
  grid: 5
  random: 10
  seed: 3
distributions:
  Dbot: []
  Dlam: [["1", "0"], ["0", "1"]]
structure:
  anti_invariant: Dbot
  slant: Dlam
)yaml";
}

std::string anti_invariant_scene_text()
{
    return R"yaml(name: anti-invariant-graph
description: quadratic graph inside the +1 eigenspace
ambient:
  canonical: 3
immersion:
  dim: 2
  coords: ["x1", "x2", "0.3*x1^2 + 0.2*x1*x2 - 0.1*x2^2", "0", "0", "0"]
  domain:
    lo: [-1.0, -1.0]
    hi: [1.0, 1.0]
samples:
  grid: 5
  random: 10
  seed: 5
distributions:
  Dbot: [["1", "0"], ["0", "1"]]
  Dlam: []
structure:
  anti_invariant: Dbot
  slant: Dlam
)yaml";
}

std::string random_product_scene_text(std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    const double alpha = 0.5 + 1.5 * unit_uniform(rng);
    double c[3];
    for (double& ci : c)
        ci = unit_uniform(rng) - 0.5;
    Eigen::Matrix<double, 5, 5> A;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            A(i, j) = 2.0 * unit_uniform(rng) - 1.0;
    const Eigen::Matrix<double, 5, 5> Q = Eigen::HouseholderQR<Eigen::Matrix<double, 5, 5>>(A).householderQ();

    // Unrotated coordinates: slant plane in (a1, a2, b1), quadric in (a3, a4, a5).
    const std::string quad = "(" + number(c[0]) + ")*x3^2 + (" + number(c[1]) + ")*x3*x4 + (" + number(c[2]) +
                             ")*x4^2";
    const std::string a[5] = {"x1", "(" + number(alpha) + ")*x1", "x3", "x4", quad};
    const std::string b[5] = {"x2", "", "", "", ""};

    auto rotate = [&](const std::string (&v)[5], int row) {
        std::string out;
        for (int j = 0; j < 5; ++j) {
            if (v[j].empty())
                continue;
            out += (out.empty() ? "" : " + ") + std::string("(") + number(Q(row, j)) + ")*(" + v[j] + ")";
        }
        return out.empty() ? std::string("0") : out;
    };

    std::ostringstream os;
    os << "name: random-product-" << seed << "\n"
       << "description: slant plane (lambda = " << number(1.0 / (1.0 + alpha * alpha))
       << ") times an anti-invariant quadric, rotated by diag(Q, Q)\n"
       << "ambient:\n  canonical: 5\nimmersion:\n  dim: 4\n  coords:\n";
    for (int i = 0; i < 5; ++i)
        os << "    - \"" << rotate(a, i) << "\"\n";
    for (int i = 0; i < 5; ++i)
        os << "    - \"" << rotate(b, i) << "\"\n";
    os << R"yaml(  domain:
    lo: [-1.0, -1.0, -1.0, -1.0]
    hi: [1.0, 1.0, 1.0, 1.0]
samples:
  grid: 3
  random: 10
  seed: )yaml" << seed
       << R"yaml(
distributions:
  Dbot: [["0", "0", "1", "0"], ["0", "0", "0", "1"]]
  Dlam: [["1", "0", "0", "0"], ["0", "1", "0", "0"]]
structure:
  anti_invariant: Dbot
  slant: Dlam
warped:
  - name: W
    base: [1, 2]
    fiber: [3, 4]
    f: "1"
    orientation: slant-base
reference:
  - quantity: slant_coefficient
    target: Dlam
    value: ")yaml" << number(1.0 / (1.0 + alpha * alpha))
       << "\"\n";
    return os.str();
}

std::vector<CorpusEntry> agreement_corpus()
{
    return {
        {"cone-warped", example_scene_text()},
        {"product", product_scene_text()},
        {"invariant-plane", invariant_scene_text()},
        {"anti-invariant-graph", anti_invariant_scene_text()},
        {"random-product-11", random_product_scene_text(11)},
        {"random-product-23", random_product_scene_text(23)},
    };
}

} // namespace parageo
