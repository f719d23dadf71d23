#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gmodel/metamodel.hpp"

namespace gmodel {

/// Contiguous slice [offset, offset + count) of a linearised repetition space.
struct WorkRange {
  std::int64_t offset = 0;
  std::int64_t count = 1;
  bool operator==(const WorkRange&) const = default;
};

struct KernelLaunch {
  std::string taskPath;
  int deviceIndex = 0;
  WorkRange range;
  std::int64_t globalSize = 1;
  std::int64_t localSize = 1;
  bool operator==(const KernelLaunch&) const = default;
};

/// Splits `totalWork` items over `deviceCount` devices. Chunk sizes differ by
/// at most one and the larger chunks come first. When there are more devices
/// than items only the first `totalWork` devices receive a range.
/// Throws std::invalid_argument on zero inputs.
std::vector<WorkRange> partition_equally(std::int64_t totalWork, int deviceCount);

/// Launch geometry for explicit work-group size: globalSize is the smallest
/// multiple of `localSize` covering each range.
std::vector<KernelLaunch> derive_launch_config(std::string_view taskPath, std::int64_t localSize,
                                               std::span<const WorkRange> ranges);

/// Work-group size for tasks allocated onto `processorPath`: the multiplicity
/// of the processing-element part nested in that processor. Throws
/// MissingGeometry when the processor has no nested processing element.
std::int64_t processing_elements_per_unit(const Model& model, std::string_view processorPath);

/// Launch geometry for the task at `taskPath`, using its task allocation.
std::vector<KernelLaunch> derive_launch_config(const Model& model, std::string_view taskPath,
                                               std::span<const WorkRange> ranges);

// --- schedule ---------------------------------------------------------------

/// Leaf task executed on the host over its whole iteration space.
struct HostOp {
  std::string taskPath;
  std::string op;
  bool operator==(const HostOp&) const = default;
};

/// Leaf task split across devices.
struct DeviceStep {
  std::string taskPath;
  std::string op;
  std::vector<KernelLaunch> launches;
  bool operator==(const DeviceStep&) const = default;
};

struct Step;

/// Repeats `body` while the scalar at `conditionPath` exceeds `tol`, at most
/// `maxIter` times.
struct LoopStep {
  std::string loopPath;
  std::vector<Step> body;
  std::string conditionPath;  // absolute port path
  double tol = 1e-10;
  std::int64_t maxIter = 1000;
  bool operator==(const LoopStep&) const;
};

struct Step {
  std::variant<HostOp, DeviceStep, LoopStep> node;
  bool operator==(const Step&) const = default;
};

struct Schedule {
  std::vector<Step> steps;
  int deviceCount = 1;
  bool operator==(const Schedule&) const = default;
};

/// Orders the application's tasks by connector dataflow (ties broken by
/// declaration order), turns repetitive device-allocated leaves into
/// partitioned DeviceSteps, host-allocated leaves into HostOps, and tasks
/// carrying a continue-condition into LoopSteps. Composite tasks without a
/// condition are inlined.
///
/// Throws CyclicTaskGraph, UnallocatedTask or MissingGeometry.
Schedule build_schedule(const Model& model, int deviceCount);

/// Overrides tolerance and/or iteration cap of every loop in the schedule.
void override_loop_limits(Schedule& schedule, std::optional<double> tol, std::optional<std::int64_t> maxIter);

}  // namespace gmodel
