#include "gmodel/partition.hpp"

#include <stdexcept>

#include <fmt/format.h>

#include "gmodel/error.hpp"

namespace gmodel {

std::vector<WorkRange> partition_equally(std::int64_t totalWork, int deviceCount) {
  if (totalWork < 1 || deviceCount < 1) {
    throw std::invalid_argument(
        fmt::format("partition_equally needs positive inputs (work={}, devices={})", totalWork, deviceCount));
  }
  const std::int64_t devices = std::min<std::int64_t>(deviceCount, totalWork);
  const std::int64_t base = totalWork / devices;
  const std::int64_t extra = totalWork % devices;

  std::vector<WorkRange> ranges;
  ranges.reserve(static_cast<std::size_t>(devices));
  std::int64_t offset = 0;
  for (std::int64_t i = 0; i < devices; ++i) {
    const std::int64_t count = base + (i < extra ? 1 : 0);
    ranges.push_back(WorkRange{offset, count});
    offset += count;
  }
  return ranges;
}

std::vector<KernelLaunch> derive_launch_config(std::string_view taskPath, std::int64_t localSize,
                                               std::span<const WorkRange> ranges) {
  if (localSize < 1) throw std::invalid_argument("work-group size must be positive");
  std::vector<KernelLaunch> launches;
  launches.reserve(ranges.size());
  for (std::size_t d = 0; d < ranges.size(); ++d) {
    const auto& r = ranges[d];
    const std::int64_t groups = (r.count + localSize - 1) / localSize;
    launches.push_back(KernelLaunch{std::string(taskPath), static_cast<int>(d), r, groups * localSize, localSize});
  }
  return launches;
}

std::int64_t processing_elements_per_unit(const Model& model, std::string_view processorPath) {
  const auto target = resolve_path(model, ComponentKind::Platform, processorPath);
  const auto* part = target.part();
  const Component* type = part && !part->inlineStereotype
                              ? model.find_component(ComponentKind::Platform, part->typeRef)
                              : nullptr;
  if (type) {
    for (const auto& inner : type->parts) {
      auto st = effective_stereotype(model, ComponentKind::Platform, inner);
      if (st && st->kind == HwKind::Processor) return inner.shaped ? shape_total(*inner.shaped) : 1;
    }
  }
  throw MissingGeometry(fmt::format("processor '{}' has no processing-element part", processorPath));
}

std::vector<KernelLaunch> derive_launch_config(const Model& model, std::string_view taskPath,
                                               std::span<const WorkRange> ranges) {
  for (const auto& link : model.allocations) {
    if (link.kind == AllocKind::Task && link.source == taskPath) {
      return derive_launch_config(taskPath, processing_elements_per_unit(model, link.target), ranges);
    }
  }
  throw UnallocatedTask(std::string(taskPath));
}

}  // namespace gmodel
