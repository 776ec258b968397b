#include "eigensurf/deformation.hpp"
#include "eigensurf/eigensurface.hpp"
#include "eigensurf/matrix_io.hpp"
#include "eigensurf/multires.hpp"
#include "eigensurf/preprocess.hpp"
#include "eigensurf/surface_calculus.hpp"
#include "eigensurf/synth.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <memory>

namespace py = pybind11;
using namespace eigensurf;

namespace {

std::unique_ptr<WorkerPool> make_pool(unsigned threads) {
    return std::make_unique<WorkerPool>(threads == 0 ? WorkerPool::default_threads() : threads);
}

py::tuple point(GridPoint p) { return py::make_tuple(p.row, p.col); }

} // namespace

PYBIND11_MODULE(_eigensurf, m) {
    m.doc() = "Multiscale sliding-window Eigensurfaces and coarse-to-fine anomaly localization";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<SpectralMode>(m, "SpectralMode")
        .value("eigen_sum", SpectralMode::eigen_sum)
        .value("singular_sum", SpectralMode::singular_sum);

    py::enum_<DerivativeAxis>(m, "DerivativeAxis")
        .value("row", DerivativeAxis::row)
        .value("col", DerivativeAxis::col)
        .value("mixed", DerivativeAxis::mixed);

    py::class_<ExpressionMatrix>(m, "ExpressionMatrix")
        .def(py::init<std::vector<std::string>, std::vector<std::string>, Eigen::MatrixXd>(),
             py::arg("row_ids"), py::arg("time_labels"), py::arg("values"))
        .def_property_readonly("row_ids", &ExpressionMatrix::row_ids)
        .def_property_readonly("time_labels", &ExpressionMatrix::time_labels)
        .def_property_readonly("values", &ExpressionMatrix::values)
        .def_property_readonly("shape",
                               [](const ExpressionMatrix& x) { return py::make_tuple(x.rows(), x.cols()); });

    py::class_<Surface>(m, "Surface")
        .def(py::init([](Eigen::MatrixXd values, std::pair<long, long> origin, int k) {
                 return Surface(std::move(values), {origin.first, origin.second}, k);
             }),
             py::arg("values"), py::arg("origin") = std::pair<long, long>{1, 1},
             py::arg("window_size") = 0)
        .def_property_readonly("values", &Surface::values)
        .def_property_readonly("origin", [](const Surface& s) { return point(s.origin()); })
        .def_property_readonly("window_size", &Surface::window_size);

    py::class_<Extremum>(m, "Extremum")
        .def_property_readonly("position", [](const Extremum& e) { return point(e.position); })
        .def_readonly("value", &Extremum::value)
        .def_property_readonly("kind", [](const Extremum& e) { return std::string(to_string(e.kind)); })
        .def("__repr__", [](const Extremum& e) {
            return "Extremum(position=(" + std::to_string(e.position.row) + ", " +
                   std::to_string(e.position.col) + "), value=" + format_double(e.value) + ")";
        });

    py::class_<SortKey>(m, "SortKey")
        .def_readonly("g", &SortKey::g)
        .def_readonly("area_f", &SortKey::area_f)
        .def_readonly("area_f1", &SortKey::area_f1)
        .def_readonly("area_f2", &SortKey::area_f2);

    py::class_<AlignedPair>(m, "AlignedPair")
        .def_readonly("control", &AlignedPair::control)
        .def_readonly("deformed", &AlignedPair::deformed)
        .def_readonly("permutation", &AlignedPair::permutation);

    py::class_<SurfaceBundle>(m, "SurfaceBundle")
        .def_readonly("eigen", &SurfaceBundle::eigen)
        .def_readonly("first", &SurfaceBundle::first)
        .def_readonly("second", &SurfaceBundle::second);

    py::class_<DeformationSummary>(m, "DeformationSummary")
        .def_readonly("gradient", &DeformationSummary::gradient)
        .def_readonly("offset", &DeformationSummary::offset)
        .def_readonly("trace", &DeformationSummary::trace)
        .def_readonly("height_coupling", &DeformationSummary::height_coupling)
        .def_readonly("degenerate", &DeformationSummary::degenerate)
        .def_property_readonly("cls", [](const DeformationSummary& s) { return std::string(to_string(s.cls)); });

    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("n_target", &PipelineConfig::n_target)
        .def_readwrite("scale_schedule", &PipelineConfig::scale_schedule)
        .def_readwrite("mode", &PipelineConfig::mode)
        .def_readwrite("axis", &PipelineConfig::axis)
        .def_readwrite("top_k", &PipelineConfig::top_k)
        .def_readwrite("normalize", &PipelineConfig::normalize);

    // matrix io
    m.def("load_matrix", py::overload_cast<const std::filesystem::path&>(&load_matrix), py::arg("path"));
    m.def("write_matrix", [](const ExpressionMatrix& x, const std::filesystem::path& p) { write_matrix(x, p); },
          py::arg("matrix"), py::arg("path"));
    m.def("write_surface", &write_surface, py::arg("surface"), py::arg("path"));
    m.def("read_surface", &read_surface, py::arg("path"));

    // preprocess
    m.def("interpolate_rows",
          [](const ExpressionMatrix& x, long n_target, unsigned threads) {
              auto pool = make_pool(threads);
              py::gil_scoped_release release;
              return interpolate_rows(x, n_target, pool.get());
          },
          py::arg("matrix"), py::arg("n_target"), py::arg("threads") = 1);
    m.def("signal_derivatives",
          [](const Eigen::VectorXd& row, double spacing) {
              auto d = signal_derivatives(row, spacing);
              return py::make_tuple(d.first, d.second);
          },
          py::arg("row"), py::arg("spacing") = 1.0);
    m.def("sort_key", &sort_key, py::arg("row"), py::arg("spacing") = 1.0);
    m.def("sort_and_align", &sort_and_align, py::arg("control"), py::arg("deformed"),
          py::arg("spacing") = 1.0);

    // eigensurface
    m.def("window_grid",
          [](long rows, long cols, long k) {
              auto g = window_grid(rows, cols, k);
              return py::make_tuple(g.row_positions, g.col_positions);
          },
          py::arg("m"), py::arg("n"), py::arg("k"));
    m.def("window_eigen_sum",
          [](const Eigen::MatrixXd& w, SpectralMode mode) { return window_eigen_sum(w, mode); },
          py::arg("window"), py::arg("mode") = SpectralMode::eigen_sum);
    m.def("build_eigensurface",
          [](const Eigen::MatrixXd& x, long k, SpectralMode mode, unsigned threads) {
              auto pool = make_pool(threads);
              py::gil_scoped_release release;
              return build_eigensurface(x, k, mode, pool.get());
          },
          py::arg("matrix"), py::arg("k"), py::arg("mode") = SpectralMode::eigen_sum,
          py::arg("threads") = 1);
    m.def("normalize_surface", &normalize_surface, py::arg("surface"));

    // surface calculus
    m.def("derivative_surfaces", &derivative_surfaces, py::arg("surface"),
          py::arg("axis") = DerivativeAxis::mixed);
    m.def("dist", &dist, py::arg("a"), py::arg("b"));
    m.def("freedist", &freedist, py::arg("a"), py::arg("b"));
    m.def("local_extrema", &local_extrema, py::arg("delta"), py::arg("top_k") = 10);

    // deformation
    m.def("estimate_deformation_gradient",
          [](const Eigen::MatrixXd& control, const Eigen::MatrixXd& deformed) {
              return estimate_deformation_gradient(displacement_field(control, deformed));
          },
          py::arg("control_window"), py::arg("deformed_window"));
    m.def("jacobian_surface",
          [](const Surface& a, const Surface& b, long k, unsigned threads) {
              auto pool = make_pool(threads);
              py::gil_scoped_release release;
              return jacobian_surface(a, b, k, pool.get());
          },
          py::arg("control"), py::arg("deformed"), py::arg("k"), py::arg("threads") = 1);

    // pipeline; reports cross the boundary as JSON text
    m.def("_compare_matrices_json",
          [](const ExpressionMatrix& a, const ExpressionMatrix& b, const PipelineConfig& config,
             unsigned threads) {
              auto pool = make_pool(threads);
              py::gil_scoped_release release;
              return report_to_json(compare_matrices(a, b, config, pool.get())).dump();
          },
          py::arg("control"), py::arg("deformed"), py::arg("config"), py::arg("threads") = 1);
    m.def("_run_pipeline_json",
          [](const std::filesystem::path& a, const std::filesystem::path& b,
             const PipelineConfig& config, const std::optional<std::filesystem::path>& out_dir,
             unsigned threads) {
              auto pool = make_pool(threads);
              py::gil_scoped_release release;
              auto report = run_pipeline(a, b, config, pool.get());
              if (out_dir)
                  write_outputs(report, *out_dir);
              return report_to_json(report).dump();
          },
          py::arg("control_path"), py::arg("deformed_path"), py::arg("config"),
          py::arg("out_dir") = std::nullopt, py::arg("threads") = 1);

    // fixtures
    auto s = m.def_submodule("synth", "Synthetic fixtures");
    s.def("diagonal", &synth::diagonal, py::arg("m"), py::arg("n"), py::arg("scale") = 1.0);
    s.def("anti_diagonal", &synth::anti_diagonal, py::arg("m"), py::arg("n"));
    s.def("planted",
          [](long rows, long cols) {
              auto p = synth::planted(rows, cols);
              return py::make_tuple(p.control, p.deformed, p.rows);
          },
          py::arg("m") = 200, py::arg("n") = 100);
}
