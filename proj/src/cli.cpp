#include "gmodel/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gmodel/codegen.hpp"
#include "gmodel/csr.hpp"
#include "gmodel/dsl.hpp"
#include "gmodel/error.hpp"
#include "gmodel/executor.hpp"
#include "gmodel/memmap.hpp"
#include "gmodel/partition.hpp"
#include "gmodel/solver.hpp"

namespace gmodel {
namespace {

namespace fs = std::filesystem;

struct IoError : Error {
  using Error::Error;
};

// Diagnostics were already printed; carries the exit code.
struct Abort {
  int code;
};

struct RunConfig {
  std::string command;
  std::string modelPath;
  int devices = 1;
  std::string matrixPath;
  std::string rhsPath;
  std::string outDir = ".";
  std::optional<double> tol;
  std::optional<std::int64_t> maxIter;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path write_file(const std::string& dir, const std::string& name, const std::string& contents) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", dir, ec.message()));
  const auto path = fs::path(dir) / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  out.close();
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  return path;
}

class Driver {
public:
  Driver(const RunConfig& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  int run() {
    if (cfg_.command == "check") return check();
    const auto model = load_valid();
    if (cfg_.command == "map") return map(model);
    if (cfg_.command == "codegen") return codegen(model);
    return execute(model);
  }

private:
  Model load() {
    auto parsed = parse_model(read_file(cfg_.modelPath));
    if (!parsed) {
      for (const auto& e : parsed.errors()) fmt::print(err_, "{}:{}\n", cfg_.modelPath, e.message());
      throw Abort{kExitIo};
    }
    return std::move(parsed).model();
  }

  // Prints diagnostics; true when none is an error.
  bool report(const std::vector<Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics) fmt::print(err_, "{}: {}\n", cfg_.modelPath, format_diagnostic(d));
    return !has_errors(diagnostics);
  }

  Model load_valid() {
    auto model = load();
    if (!report(validate_conformance(model))) throw Abort{kExitValidation};
    return model;
  }

  int check() {
    const auto model = load();
    const auto diagnostics = validate_conformance(model);
    if (!report(diagnostics)) return kExitValidation;
    fmt::print(out_, "{}: ok ({} platform, {} application components, {} allocations)\n", cfg_.modelPath,
               model.platformComponents.size(), model.applicationComponents.size(), model.allocations.size());
    return kExitOk;
  }

  int map(const Model& model) {
    const auto report = emit_memory_map_report(build_memory_maps(model));
    const auto path = write_file(cfg_.outDir, file_stem(model) + "_memmap.txt", report);
    fmt::print(out_, "{}", report);
    fmt::print(out_, "wrote {}\n", path.string());
    return kExitOk;
  }

  int codegen(const Model& model) {
    const auto maps = build_memory_maps(model);
    const auto schedule = build_schedule(model, cfg_.devices);
    for (const auto& unit : {generate_kernels(model, maps, schedule),
                             generate_host(model, maps, schedule, cfg_.devices)}) {
      fmt::print(out_, "wrote {}\n", write_file(cfg_.outDir, unit.fileName, unit.contents).string());
    }
    return kExitOk;
  }

  // Root ports rowPtr, colIdx and values take the CSR arrays; the remaining
  // input port takes the right-hand side and the output port holds x.
  int execute(const Model& model) {
    const auto* root = model.application_root();
    std::vector<const FlowPort*> rhs;
    std::vector<const FlowPort*> solution;
    for (const auto& port : root->ports) {
      if (port.name == "rowPtr" || port.name == "colIdx" || port.name == "values") continue;
      (port.direction == Direction::Out ? solution : rhs).push_back(&port);
    }
    if (rhs.size() != 1 || solution.size() != 1 || !root->find_port("rowPtr") || !root->find_port("colIdx") ||
        !root->find_port("values")) {
      fmt::print(err_,
                 "{}: application '{}' must have in ports rowPtr, colIdx, values, one right-hand side and one "
                 "out port\n",
                 cfg_.modelPath, model.applicationRoot);
      return kExitValidation;
    }

    const auto a = load_matrix_market(read_file(cfg_.matrixPath));
    std::vector<double> b(static_cast<std::size_t>(a.n), 1.0);
    if (!cfg_.rhsPath.empty()) b = read_vector(read_file(cfg_.rhsPath));
    if (static_cast<std::int64_t>(b.size()) != a.n) {
      fmt::print(err_, "{}: rhs has {} entries, matrix has {} rows\n", cfg_.rhsPath, b.size(), a.n);
      return kExitIo;
    }
    check_sampled_symmetry(a);

    Bindings bindings;
    bindings.emplace("rowPtr", a.rowPtr);
    bindings.emplace("colIdx", a.colIdx);
    bindings.emplace("values", a.values);
    bindings.emplace(rhs.front()->name, b);
    const auto result = run_application(model, bindings, cfg_.devices, cfg_.tol, cfg_.maxIter);

    const auto summary = fmt::format("iters={} relres={:.6e} converged={}\n", result.iterations,
                                     result.conditionValue.value_or(0.0), result.converged);
    fmt::print(out_, "{}", summary);
    if (!cfg_.outDir.empty() && cfg_.outDir != ".") {
      const auto& x = std::get<std::vector<double>>(result.outputs.at(solution.front()->name));
      write_file(cfg_.outDir, file_stem(model) + "_summary.txt", summary);
      write_file(cfg_.outDir, file_stem(model) + "_solution.txt", write_vector(x));
    }
    if (!result.converged) {
      fmt::print(err_, "{}: no convergence after {} iterations\n", cfg_.modelPath, result.iterations);
      return kExitNumeric;
    }
    return kExitOk;
  }

  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Model-driven OpenCL generation toolchain", "gmodel"};
  app.require_subcommand(1);

  auto addModel = [&](CLI::App* sub) {
    sub->add_option("model", cfg.modelPath, "Model file (.gmodel)")->required();
  };
  auto addOut = [&](CLI::App* sub) { sub->add_option("--out", cfg.outDir, "Output directory"); };
  auto addDevices = [&](CLI::App* sub) {
    sub->add_option("--devices", cfg.devices, "Number of devices")->check(CLI::Range(1, 16));
  };

  auto* check = app.add_subcommand("check", "Validate a model");
  addModel(check);
  auto* map = app.add_subcommand("map", "Write the memory-map report");
  addModel(map);
  addOut(map);
  auto* codegen = app.add_subcommand("codegen", "Generate OpenCL kernel and host sources");
  addModel(codegen);
  addDevices(codegen);
  addOut(codegen);
  auto* run = app.add_subcommand("run", "Solve A x = b with the reference executor");
  addModel(run);
  addDevices(run);
  run->add_option("--matrix", cfg.matrixPath, "Matrix Market file")->required();
  run->add_option("--rhs", cfg.rhsPath, "Right-hand side, one value per line (default: ones)");
  run->add_option("--tol", cfg.tol, "Relative residual threshold")->check(CLI::PositiveNumber);
  run->add_option("--max-iter", cfg.maxIter, "Iteration cap")->check(CLI::PositiveNumber);
  run->add_option("--out", cfg.outDir, "Directory for summary and solution files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }
  for (auto* sub : {check, map, codegen, run}) {
    if (sub->parsed()) cfg.command = sub->get_name();
  }

  Driver driver(cfg, out, err);
  try {
    return driver.run();
  } catch (const Abort& a) {
    return a.code;
  } catch (const IoError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitIo;
  } catch (const MatrixMarketError& e) {
    fmt::print(err, "{}: {}\n", cfg.matrixPath, e.what());
    return kExitIo;
  } catch (const BreakdownDetected& e) {
    fmt::print(err, "error: breakdown: {}\n", e.what());
    return kExitNumeric;
  } catch (const AsymmetricMatrix& e) {
    fmt::print(err, "{}: matrix is not symmetric: {}\n", cfg.matrixPath, e.what());
    return kExitNumeric;
  } catch (const CapacityExceeded& e) {
    fmt::print(err, "{}: error: {}\n", cfg.modelPath, e.what());
    return kExitValidation;
  } catch (const Error& e) {
    fmt::print(err, "{}: error: {}\n", cfg.modelPath, e.what());
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitValidation;
  }
}

}  // namespace gmodel
