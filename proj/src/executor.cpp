#include "gmodel/executor.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "gmodel/csr.hpp"
#include "gmodel/dataflow.hpp"
#include "gmodel/error.hpp"
#include "gmodel/intrinsics.hpp"

namespace gmodel {
namespace {

std::size_t length(const Array& a) {
  return std::visit([](const auto& v) { return v.size(); }, a);
}

struct BoundTask {
  std::string path;
  const IntrinsicSpec* spec = nullptr;
  std::int64_t space = 1;  // host iteration space
  std::map<std::string, std::size_t, std::less<>> classes;
};

class Interpreter {
public:
  Interpreter(const Model& model, const Bindings& bindings) : model_(model), flow_(model) {
    storage_.reserve(flow_.class_count());
    for (std::size_t c = 0; c < flow_.class_count(); ++c) {
      const auto* port = flow_.ports()[flow_.representative(c)].port;
      const auto n = static_cast<std::size_t>(shape_total(port->shape));
      if (is_integral(port->type)) {
        storage_.emplace_back(std::vector<std::int64_t>(n, 0));
      } else {
        storage_.emplace_back(std::vector<double>(n, 0.0));
      }
    }

    const auto* root = model.application_root();
    if (!root) throw ModelError("application root is not declared");
    for (const auto& port : root->ports) {
      if (port.direction == Direction::Out) continue;
      auto it = bindings.find(port.name);
      if (it == bindings.end()) throw MissingBinding(port.name);
      auto& slot = storage_[*flow_.class_of(port.name)];
      if (it->second.index() != slot.index()) {
        throw IntrinsicShapeMismatch(fmt::format("port '{}' is {} but the binding holds {}", port.name,
                                                 to_string(port.type),
                                                 it->second.index() == 0 ? "floating-point data" : "integers"));
      }
      if (length(it->second) != length(slot)) {
        throw IntrinsicShapeMismatch(fmt::format("port '{}' expects {} elements, binding has {}", port.name,
                                                 length(slot), length(it->second)));
      }
      slot = it->second;
    }
  }

  ExecutionResult run(const Schedule& schedule) {
    ExecutionResult result;
    for (const auto& step : schedule.steps) {
      if (const auto* loop = std::get_if<LoopStep>(&step.node)) {
        const auto iterations = run_loop(*loop);
        const double cond = dbl(*flow_.class_of(loop->conditionPath))[0];
        result.iterations += iterations;
        result.converged = result.converged && cond <= loop->tol;
        result.conditionValue = cond;
      } else {
        run_step(step);
      }
    }
    for (const auto& port : model_.application_root()->ports) {
      if (port.direction == Direction::In) continue;
      result.outputs.emplace(port.name, storage_[*flow_.class_of(port.name)]);
    }
    return result;
  }

private:
  std::vector<double>& dbl(std::size_t cls) {
    if (auto* v = std::get_if<std::vector<double>>(&storage_[cls])) return *v;
    throw IntrinsicShapeMismatch(fmt::format("storage '{}' is not floating-point", flow_.class_name(cls)));
  }
  std::vector<std::int64_t>& ints(std::size_t cls) {
    if (auto* v = std::get_if<std::vector<std::int64_t>>(&storage_[cls])) return *v;
    throw IntrinsicShapeMismatch(fmt::format("storage '{}' is not integral", flow_.class_name(cls)));
  }

  const BoundTask& bind(const std::string& path, const std::string& op) {
    if (auto it = tasks_.find(path); it != tasks_.end()) return it->second;
    const auto* spec = find_intrinsic(op);
    if (!spec) throw UnknownIntrinsic(path, op);
    const auto* task = flow_.find_task(path);
    if (!task || !task->type) throw ModelError(fmt::format("schedule names unknown task '{}'", path));

    BoundTask bound{path, spec, 1, {}};
    for (const auto& ip : spec->ports) {
      auto cls = flow_.class_of(join_path(path, ip.name));
      if (!cls) throw IntrinsicShapeMismatch(fmt::format("task '{}' has no port '{}'", path, ip.name));
      bound.classes.emplace(std::string(ip.name), *cls);
    }
    bound.space = task->type->repetitionSpace
                      ? shape_total(*task->type->repetitionSpace)
                      : static_cast<std::int64_t>(length(storage_[bound.classes.at(std::string(spec->principal))]));
    return tasks_.emplace(path, std::move(bound)).first->second;
  }

  std::vector<double>& vec(const BoundTask& t, std::string_view port, std::int64_t end) {
    auto& v = dbl(t.classes.find(port)->second);
    if (static_cast<std::int64_t>(v.size()) < end) {
      throw IntrinsicShapeMismatch(fmt::format("port '{}.{}' has {} elements, iteration needs {}", t.path, port,
                                               v.size(), end));
    }
    return v;
  }

  double scalar(const BoundTask& t, std::string_view port) { return vec(t, port, 1)[0]; }

  void ratio(const BoundTask& t, std::string_view num, std::string_view den, std::string_view q) {
    const double d = scalar(t, den);
    if (!(d > 0.0)) throw BreakdownDetected(fmt::format("task '{}': denominator {} is not positive", t.path, d));
    vec(t, q, 1)[0] = scalar(t, num) / d;
  }

  // Runs one intrinsic over [begin, end); returns the partial of a reduction.
  double run_range(const BoundTask& t, std::int64_t begin, std::int64_t end) {
    const std::string_view op = t.spec->name;
    if (op == "spmv_csr") {
      auto& rowPtr = ints(t.classes.find("rowPtr")->second);
      auto& colIdx = ints(t.classes.find("colIdx")->second);
      auto& values = vec(t, "values", 0);
      auto& x = vec(t, "x", 0);
      auto& y = vec(t, "y", end);
      if (static_cast<std::int64_t>(rowPtr.size()) < end + 1) {
        throw IntrinsicShapeMismatch(fmt::format("task '{}': rowPtr too short for rows up to {}", t.path, end));
      }
      const auto nnz = static_cast<std::int64_t>(std::min(colIdx.size(), values.size()));
      const auto cols = static_cast<std::int64_t>(x.size());
      for (auto i = begin; i < end; ++i) {
        if (rowPtr[i] < 0 || rowPtr[i] > rowPtr[i + 1] || rowPtr[i + 1] > nnz) {
          throw IntrinsicShapeMismatch(fmt::format("task '{}': bad row pointer at row {}", t.path, i));
        }
        for (auto k = rowPtr[i]; k < rowPtr[i + 1]; ++k) {
          if (colIdx[k] < 0 || colIdx[k] >= cols) {
            throw IntrinsicShapeMismatch(fmt::format("task '{}': column index {} out of range", t.path, colIdx[k]));
          }
        }
      }
      spmv_csr_rows(rowPtr, colIdx, values, x, y, begin, end);
      return 0.0;
    }
    if (op == "dot_partial") {
      auto& a = vec(t, "a", end);
      auto& b = vec(t, "b", end);
      double s = 0.0;
      for (auto i = begin; i < end; ++i) s += a[i] * b[i];
      return s;
    }
    if (op == "axpy") {
      const double alpha = scalar(t, "alpha");
      auto& x = vec(t, "x", end);
      auto& y = vec(t, "y", end);
      auto& z = vec(t, "z", end);
      for (auto i = begin; i < end; ++i) z[i] = y[i] + alpha * x[i];
      return 0.0;
    }
    if (op == "scale") {
      const double alpha = scalar(t, "alpha");
      auto& x = vec(t, "x", end);
      auto& z = vec(t, "z", end);
      for (auto i = begin; i < end; ++i) z[i] = alpha * x[i];
      return 0.0;
    }
    if (op == "copy") {
      auto& x = vec(t, "x", end);
      auto& z = vec(t, "z", end);
      for (auto i = begin; i < end; ++i) z[i] = x[i];
      return 0.0;
    }
    if (op == "sub") {
      auto& a = vec(t, "a", end);
      auto& b = vec(t, "b", end);
      auto& z = vec(t, "z", end);
      for (auto i = begin; i < end; ++i) z[i] = a[i] - b[i];
      return 0.0;
    }
    if (op == "ratio") {
      ratio(t, "num", "den", "q");
      return 0.0;
    }
    if (op == "rel_norm") {
      const double sq = scalar(t, "sq");
      const double refsq = scalar(t, "refsq");
      vec(t, "r", 1)[0] = refsq > 0.0 ? std::sqrt(sq) / std::sqrt(refsq) : 0.0;
      return 0.0;
    }
    throw UnknownIntrinsic(t.path, std::string(op));
  }

  void reduce(const BoundTask& t, const std::vector<double>& partials) {
    double s = 0.0;
    for (double p : partials) s += p;
    vec(t, "s", 1)[0] = s;
  }

  void run_step(const Step& step) {
    if (const auto* host = std::get_if<HostOp>(&step.node)) {
      const auto& t = bind(host->taskPath, host->op);
      const double partial = run_range(t, 0, t.space);
      if (t.spec->reduction) reduce(t, {partial});
    } else if (const auto* dev = std::get_if<DeviceStep>(&step.node)) {
      const auto& t = bind(dev->taskPath, dev->op);
      std::vector<double> partials;
      for (const auto& launch : dev->launches) {
        partials.push_back(run_range(t, launch.range.offset, launch.range.offset + launch.range.count));
      }
      if (t.spec->reduction) reduce(t, partials);
    } else {
      run_loop(std::get<LoopStep>(step.node));
    }
  }

  std::int64_t run_loop(const LoopStep& loop) {
    const auto cond = flow_.class_of(loop.conditionPath);
    if (!cond) throw ModelError(fmt::format("loop condition '{}' not found", loop.conditionPath));
    std::int64_t iter = 0;
    while (iter < loop.maxIter && dbl(*cond)[0] > loop.tol) {
      for (const auto& step : loop.body) run_step(step);
      ++iter;
    }
    return iter;
  }

  const Model& model_;
  Dataflow flow_;
  std::vector<Array> storage_;
  std::map<std::string, BoundTask, std::less<>> tasks_;
};

}  // namespace

std::vector<SizeParam> infer_sizes(const Model& model, const Bindings& bindings) {
  std::vector<SizeParam> sizes;
  const auto* root = model.application_root();
  if (!root) return sizes;
  for (const auto& port : root->ports) {
    if (port.shape.dims.size() != 1 || !port.shape.dims[0].is_symbolic()) continue;
    auto it = bindings.find(port.name);
    if (it == bindings.end()) continue;
    const auto& dim = port.shape.dims[0];
    const auto value = static_cast<std::int64_t>(length(it->second)) - dim.offset;
    auto known = std::find_if(sizes.begin(), sizes.end(), [&](const SizeParam& s) { return s.name == dim.symbol; });
    if (known == sizes.end()) {
      if (value < 1) {
        throw IntrinsicShapeMismatch(fmt::format("binding for '{}' implies {} = {}", port.name, dim.symbol, value));
      }
      sizes.push_back({dim.symbol, value});
    } else if (known->value != value) {
      throw IntrinsicShapeMismatch(fmt::format("binding for '{}' implies {} = {}, another binding implies {}",
                                               port.name, dim.symbol, value, known->value));
    }
  }
  return sizes;
}

ExecutionResult execute_schedule(const Model& model, const Schedule& schedule, const Bindings& bindings) {
  Interpreter interpreter(model, bindings);
  return interpreter.run(schedule);
}

ExecutionResult run_application(const Model& model, const Bindings& bindings, int deviceCount,
                                std::optional<double> tol, std::optional<std::int64_t> maxIter) {
  const auto sized = rebind_sizes(model, infer_sizes(model, bindings));
  auto schedule = build_schedule(sized, deviceCount);
  override_loop_limits(schedule, tol, maxIter);
  return execute_schedule(sized, schedule, bindings);
}

}  // namespace gmodel
