#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "parageo/analysis.hpp"
#include "parageo/corpus.hpp"
#include "parageo/report.hpp"

namespace py = pybind11;
using namespace parageo;

namespace {

Command command_from(const std::string& name)
{
    if (name == "analyze")
        return Command::Analyze;
    if (name == "verify-ambient")
        return Command::VerifyAmbient;
    if (name == "check-slant")
        return Command::CheckSlant;
    if (name == "check-warped")
        return Command::CheckWarped;
    throw py::value_error("unknown command '" + name + "'");
}

// Reports cross the boundary as JSON text; the Python side decodes them.
std::string analyze(const Scene& base, const std::string& command, const std::string& target,
                    std::optional<double> tol, std::optional<std::uint64_t> seed, std::optional<int> grid)
{
    Scene scene = base;
    apply_overrides(scene, SceneOverrides{tol, seed, grid});
    return to_json(run_analysis(scene, command_from(command), target));
}

py::dict frame_dict(const PointFrame& F)
{
    py::dict d;
    d["p"] = F.p;
    d["tangent"] = F.T;
    d["metric"] = F.g;
    d["normal"] = F.N;
    py::list h;
    for (int i = 0; i < F.dim(); ++i) {
        py::list row;
        for (int j = 0; j < F.dim(); ++j)
            row.append(Vec(F.h(i, j)));
        h.append(row);
    }
    d["second_fundamental_form"] = h;
    const TNDecomposition tn = tn_decompose(F);
    d["t"] = tn.t;
    d["n"] = tn.n;
    return d;
}

} // namespace

PYBIND11_MODULE(_parageo, m)
{
    m.doc() = "Slant-type submanifolds of flat para-Kaehler spaces";

    py::register_exception<SceneError>(m, "SceneError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
    static py::handle parse_error = py::exception<ParseError>(m, "ParseError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const ParseError& e) {
            py::object err = py::reinterpret_borrow<py::object>(parse_error)(e.what());
            err.attr("offset") = e.offset();
            PyErr_SetObject(parse_error.ptr(), err.ptr());
        } catch (const FrameError& e) {
            PyErr_SetString(PyExc_ArithmeticError, e.what());
        }
    });

    py::class_<Expr>(m, "Expr")
        .def_property_readonly("dim", &Expr::dim)
        .def("print", &Expr::print)
        .def("is_constant", &Expr::is_constant)
        .def("value", [](const Expr& e, const Vec& p) { return eval_value(e, p); }, py::arg("point"))
        .def(
            "jet",
            [](const Expr& e, const Vec& p) {
                const Jet2 j = eval_jet2(e, p);
                return py::make_tuple(j.value, j.grad, j.hess);
            },
            py::arg("point"), "Value, gradient and Hessian at a point")
        .def("__repr__", [](const Expr& e) { return "Expr('" + e.print() + "')"; });

    m.def("parse", &parse, py::arg("source"), py::arg("dim"));

    py::class_<AmbientSpace>(m, "AmbientSpace")
        .def(py::init<Mat, Mat>(), py::arg("P"), py::arg("G"))
        .def_static("canonical", &AmbientSpace::canonical, py::arg("m"))
        .def_property_readonly("P", &AmbientSpace::P)
        .def_property_readonly("G", &AmbientSpace::G)
        .def_property_readonly("dim", &AmbientSpace::dim)
        .def("omega", &AmbientSpace::omega);

    m.def(
        "verify_structure",
        [](const AmbientSpace& A, double tol) {
            const StructureReport r = verify_structure(A, tol);
            py::dict d;
            d["pass"] = r.pass;
            d["p_squared_residual"] = r.p_squared_residual;
            d["compatibility_residual"] = r.compatibility_residual;
            d["symmetry_residual"] = r.symmetry_residual;
            d["antisymmetry_residual"] = r.antisymmetry_residual;
            d["signature"] = py::make_tuple(r.positive, r.negative, r.zero);
            return d;
        },
        py::arg("ambient"), py::arg("tol") = 1e-10);

    m.def(
        "analyze_text",
        [](const std::string& text, const std::string& command, const std::string& target,
           std::optional<double> tol, std::optional<std::uint64_t> seed, std::optional<int> grid) {
            return analyze(parse_scene(text), command, target, tol, seed, grid);
        },
        py::arg("text"), py::arg("command") = "analyze", py::arg("target") = "", py::arg("tol") = py::none(),
        py::arg("seed") = py::none(), py::arg("grid") = py::none());

    m.def(
        "analyze_file",
        [](const std::string& path, const std::string& command, const std::string& target,
           std::optional<double> tol, std::optional<std::uint64_t> seed, std::optional<int> grid) {
            return analyze(load_scene(path), command, target, tol, seed, grid);
        },
        py::arg("path"), py::arg("command") = "analyze", py::arg("target") = "", py::arg("tol") = py::none(),
        py::arg("seed") = py::none(), py::arg("grid") = py::none());

    m.def("example_scene", &example_scene_text);

    m.def(
        "frame_at",
        [](const std::string& text, const Vec& p) { return frame_dict(frame_at(parse_scene(text).immersion, p)); },
        py::arg("scene_text"), py::arg("point"));
}
