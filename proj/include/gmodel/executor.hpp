#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gmodel/metamodel.hpp"
#include "gmodel/partition.hpp"

namespace gmodel {

/// Port data: float32/float64 ports hold doubles, int32/int64 ports int64s.
using Array = std::variant<std::vector<double>, std::vector<std::int64_t>>;
using Bindings = std::map<std::string, Array, std::less<>>;

struct ExecutionResult {
  /// Arrays of the application root's out and inout ports.
  Bindings outputs;
  /// Body executions summed over the top-level loops.
  std::int64_t iterations = 0;
  /// Every top-level loop stopped on its condition rather than the cap.
  bool converged = true;
  /// Final condition value of the last top-level loop.
  std::optional<double> conditionValue;
};

/// Size parameters implied by the lengths of arrays bound to 1-D root ports
/// with a symbolic extent. Throws IntrinsicShapeMismatch on inconsistent
/// lengths.
std::vector<SizeParam> infer_sizes(const Model& model, const Bindings& bindings);

/// Interprets `schedule` over simulated devices sharing the model's storage.
/// Each device step runs its launches in ascending device order; reduction
/// partials are summed on the host in that order, starting from 0.
/// Root in/inout ports are read from `bindings`; all other storage starts
/// zeroed.
///
/// Throws MissingBinding, IntrinsicShapeMismatch, BreakdownDetected,
/// UnknownIntrinsic.
ExecutionResult execute_schedule(const Model& model, const Schedule& schedule, const Bindings& bindings);

/// Sizes the model from `bindings`, schedules it on `deviceCount` devices,
/// applies loop overrides and executes it.
ExecutionResult run_application(const Model& model, const Bindings& bindings, int deviceCount,
                                std::optional<double> tol = std::nullopt,
                                std::optional<std::int64_t> maxIter = std::nullopt);

}  // namespace gmodel
