#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fmt/format.h>

#include "gmodel/codegen.hpp"
#include "gmodel/csr.hpp"
#include "gmodel/dsl.hpp"
#include "gmodel/error.hpp"
#include "gmodel/executor.hpp"
#include "gmodel/memmap.hpp"
#include "gmodel/partition.hpp"
#include "gmodel/solver.hpp"

namespace py = pybind11;
using namespace gmodel;

namespace {

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Model parse_text(const std::string& text) {
  auto r = parse_model(text);
  if (!r) {
    std::string msg;
    for (const auto& e : r.errors()) msg += (msg.empty() ? "" : "\n") + e.message();
    throw ParseFailure(msg);
  }
  return std::move(r).model();
}

CsrMatrix make_csr(std::vector<std::int64_t> rowPtr, std::vector<std::int64_t> colIdx, std::vector<double> values) {
  CsrMatrix a;
  a.n = static_cast<std::int64_t>(rowPtr.size()) - 1;
  a.rowPtr = std::move(rowPtr);
  a.colIdx = std::move(colIdx);
  a.values = std::move(values);
  check_csr(a);
  return a;
}

py::dict csr_dict(const CsrMatrix& a) {
  py::dict d;
  d["n"] = a.n;
  d["row_ptr"] = a.rowPtr;
  d["col_idx"] = a.colIdx;
  d["values"] = a.values;
  return d;
}

py::object array_to_py(const Array& a) {
  return std::visit([](const auto& v) { return py::object(py::cast(v)); }, a);
}

}  // namespace

PYBIND11_MODULE(_gmodel, m) {
  m.doc() = "Model parsing, memory mapping, partitioning, OpenCL generation and reference execution";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseFailure>(m, "ParseError", PyExc_ValueError);
  py::register_exception<CapacityExceeded>(m, "CapacityExceeded", error.ptr());
  py::register_exception<ModelError>(m, "ModelError", error.ptr());
  py::register_exception<MatrixMarketError>(m, "MatrixMarketError", error.ptr());
  py::register_exception<BreakdownDetected>(m, "BreakdownDetected", error.ptr());
  py::register_exception<AsymmetricMatrix>(m, "AsymmetricMatrix", error.ptr());

  py::class_<Model>(m, "Model")
      .def(py::init(&parse_text), py::arg("text"))
      .def_readonly("platform_root", &Model::platformRoot)
      .def_readonly("application_root", &Model::applicationRoot)
      .def("text", &serialize_model)
      .def("digest", &model_digest)
      .def("diagnostics",
           [](const Model& model) {
             std::vector<std::tuple<std::string, std::string, std::string>> out;
             for (const auto& d : validate_conformance(model)) {
               out.emplace_back(d.severity == Severity::Error ? "error" : "warning", d.path, d.message);
             }
             return out;
           })
      .def("memory_map", [](const Model& model) { return emit_memory_map_report(build_memory_maps(model)); })
      .def(
          "generate",
          [](const Model& model, int devices) {
            const auto maps = build_memory_maps(model);
            const auto schedule = build_schedule(model, devices);
            std::map<std::string, std::string> files;
            for (auto& unit : {generate_kernels(model, maps, schedule), generate_host(model, maps, schedule, devices)}) {
              files.emplace(unit.fileName, unit.contents);
            }
            return files;
          },
          py::arg("devices") = 1)
      .def(
          "run",
          [](const Model& model, const py::dict& inputs, int devices, std::optional<double> tol,
             std::optional<std::int64_t> maxIter) {
            Bindings bindings;
            for (const auto& [key, value] : inputs) {
              const auto name = py::cast<std::string>(key);
              const auto* port = model.application_root() ? model.application_root()->find_port(name) : nullptr;
              if (port && is_integral(port->type)) {
                bindings.emplace(name, py::cast<std::vector<std::int64_t>>(value));
              } else {
                bindings.emplace(name, py::cast<std::vector<double>>(value));
              }
            }
            ExecutionResult r;
            {
              py::gil_scoped_release release;
              r = run_application(model, bindings, devices, tol, maxIter);
            }
            py::dict outputs;
            for (const auto& [name, array] : r.outputs) outputs[py::str(name)] = array_to_py(array);
            py::dict d;
            d["outputs"] = outputs;
            d["iterations"] = r.iterations;
            d["converged"] = r.converged;
            d["condition"] = r.conditionValue;
            return d;
          },
          py::arg("inputs"), py::arg("devices") = 1, py::arg("tol") = py::none(), py::arg("max_iter") = py::none())
      .def("__eq__", [](const Model& a, const Model& b) { return a == b; })
      .def("__repr__", [](const Model& model) {
        return fmt::format("<Model platform={} application={}>", model.platformRoot, model.applicationRoot);
      });

  m.def(
      "partition",
      [](std::int64_t total, int devices) {
        std::vector<std::pair<std::int64_t, std::int64_t>> out;
        for (const auto& r : partition_equally(total, devices)) out.emplace_back(r.offset, r.count);
        return out;
      },
      py::arg("total"), py::arg("devices"));

  m.def(
      "load_matrix_market", [](const std::string& text) { return csr_dict(load_matrix_market(text)); },
      py::arg("text"));
  m.def(
      "poisson_2d", [](std::int64_t side) { return csr_dict(poisson_2d(side)); }, py::arg("side"));

  m.def(
      "spmv",
      [](std::vector<std::int64_t> rowPtr, std::vector<std::int64_t> colIdx, std::vector<double> values,
         const std::vector<double>& x) {
        return spmv_csr(make_csr(std::move(rowPtr), std::move(colIdx), std::move(values)), x);
      },
      py::arg("row_ptr"), py::arg("col_idx"), py::arg("values"), py::arg("x"));

  m.def(
      "run_cg",
      [](std::vector<std::int64_t> rowPtr, std::vector<std::int64_t> colIdx, std::vector<double> values,
         const std::vector<double>& b, double tol, std::int64_t maxIter) {
        const auto a = make_csr(std::move(rowPtr), std::move(colIdx), std::move(values));
        SolveResult r;
        {
          py::gil_scoped_release release;
          r = run_cg(a, b, {tol, maxIter});
        }
        py::dict d;
        d["x"] = r.x;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        d["residuals"] = r.residualHistory;
        return d;
      },
      py::arg("row_ptr"), py::arg("col_idx"), py::arg("values"), py::arg("b"), py::arg("tol") = 1e-10,
      py::arg("max_iter") = 1000);
}
