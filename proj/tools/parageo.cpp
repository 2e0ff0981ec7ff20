// parageo command-line driver.
//
// Exit codes: 0 no Fail verdict, 1 some Fail verdict, 2 scene or usage
// error, 3 numerical guard failure.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "parageo/analysis.hpp"
#include "parageo/corpus.hpp"
#include "parageo/report.hpp"

namespace {

constexpr int exit_fail = 1;
constexpr int exit_usage = 2;
constexpr int exit_numeric = 3;

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Numerical verification of slant-type submanifolds of flat para-Kaehler spaces", "parageo"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path;
    double tol = 0.0;
    std::uint64_t seed = 0;
    int grid = 0;
    bool as_json = false;
    app.add_option("--out", out_path, "Write the structured JSON report to this path");
    auto* tol_opt = app.add_option("--tol", tol, "Identity tolerance override");
    auto* seed_opt = app.add_option("--seed", seed, "Sample seed override");
    auto* grid_opt = app.add_option("--grid", grid, "Grid resolution override");
    app.add_flag("--json", as_json, "Print the JSON report instead of text");

    std::string scene_path, target;
    bool dump_scene = false;
    auto* verify = app.add_subcommand("verify-ambient", "Check the ambient para-Kaehler structure");
    verify->add_option("scene", scene_path, "Scene file")->required();
    auto* analyze = app.add_subcommand("analyze", "Run the full pipeline");
    analyze->add_option("scene", scene_path, "Scene file")->required();
    auto* slant = app.add_subcommand("check-slant", "Slant analysis of one distribution");
    slant->add_option("scene", scene_path, "Scene file")->required();
    slant->add_option("distribution", target, "Distribution name")->required();
    auto* warped = app.add_subcommand("check-warped", "Warped-product checks for one declaration");
    warped->add_option("scene", scene_path, "Scene file")->required();
    warped->add_option("name", target, "Warped declaration name")->required();
    auto* example = app.add_subcommand("reproduce-example", "Analyse the built-in example scene");
    example->add_flag("--dump-scene", dump_scene, "Print the embedded scene and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (dump_scene) {
        std::cout << parageo::example_scene_text();
        return 0;
    }

    using parageo::Command;
    Command command = Command::Analyze;
    if (*verify)
        command = Command::VerifyAmbient;
    else if (*slant)
        command = Command::CheckSlant;
    else if (*warped)
        command = Command::CheckWarped;

    try {
        parageo::Scene scene = *example ? parageo::parse_scene(parageo::example_scene_text(), "<built-in example>")
                                        : parageo::load_scene(scene_path);
        parageo::SceneOverrides o;
        if (*tol_opt)
            o.tol = tol;
        if (*seed_opt)
            o.seed = seed;
        if (*grid_opt)
            o.grid = grid;
        parageo::apply_overrides(scene, o);

        const parageo::AnalysisReport rep = parageo::run_analysis(scene, command, target);
        const std::string json = parageo::to_json(rep);
        std::cout << (as_json ? json : parageo::to_text(rep));
        if (!out_path.empty()) {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "parageo: cannot write " << out_path << '\n';
                return exit_usage;
            }
            out << json;
        }
        return rep.has_fail() ? exit_fail : 0;
    } catch (const parageo::SceneError& e) {
        std::cerr << "parageo: scene error: " << e.what() << '\n';
        return exit_usage;
    } catch (const parageo::NumericalError& e) {
        std::cerr << "parageo: numerical guard: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "parageo: " << e.what() << '\n';
        return exit_numeric;
    }
}
