#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "gmodel/error.hpp"
#include "gmodel/partition.hpp"

namespace gmodel {

bool LoopStep::operator==(const LoopStep& other) const {
  return loopPath == other.loopPath && body == other.body && conditionPath == other.conditionPath &&
         tol == other.tol && maxIter == other.maxIter;
}

namespace {

constexpr int kMaxDepth = 64;

// Index of the part an endpoint refers to, or -1 for the component's own port.
int endpoint_part(const Component& comp, std::string_view endpoint) {
  auto segs = split_path(endpoint);
  if (segs.size() < 2) return -1;
  for (std::size_t i = 0; i < comp.parts.size(); ++i) {
    if (comp.parts[i].name == segs.front()) return static_cast<int>(i);
  }
  return -1;
}

/// Part indices of `comp` in dependency order.
std::vector<std::size_t> task_order(const Component& comp, std::string_view path) {
  const std::size_t n = comp.parts.size();
  std::set<std::pair<std::size_t, std::size_t>> edges;

  for (const auto& conn : comp.connectors) {
    const int src = endpoint_part(comp, conn.source);
    const int dst = endpoint_part(comp, conn.target);
    if (src < 0 || dst < 0) continue;
    if (src == dst) {
      throw CyclicTaskGraph(fmt::format("task '{}' feeds itself", join_path(path, comp.parts[src].name)));
    }
    edges.emplace(src, dst);
  }

  // Loop-carried storage: everything reading an own port runs before the
  // task that writes the next value back into it.
  for (const auto& port : comp.ports) {
    std::vector<std::size_t> readers;
    std::vector<std::size_t> writers;
    for (const auto& conn : comp.connectors) {
      if (conn.source == port.name) {
        if (int r = endpoint_part(comp, conn.target); r >= 0) readers.push_back(r);
      }
      if (conn.target == port.name) {
        if (int w = endpoint_part(comp, conn.source); w >= 0) writers.push_back(w);
      }
    }
    for (auto r : readers) {
      for (auto w : writers) {
        if (r != w) edges.emplace(r, w);
      }
    }
  }

  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> succ(n);
  for (const auto& [a, b] : edges) {
    succ[a].push_back(b);
    ++indegree[b];
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.insert(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const auto next = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(next);
    for (auto s : succ[next]) {
      if (--indegree[s] == 0) ready.insert(s);
    }
  }
  if (order.size() != n) {
    std::vector<std::string> stuck;
    for (std::size_t i = 0; i < n; ++i) {
      if (indegree[i] > 0) stuck.push_back(join_path(path, comp.parts[i].name));
    }
    throw CyclicTaskGraph(fmt::format("cyclic dataflow between tasks {}", fmt::join(stuck, ", ")));
  }
  return order;
}

class ScheduleBuilder {
public:
  ScheduleBuilder(const Model& model, int devices) : model_(model), devices_(devices) {}

  std::vector<Step> body(const Component& comp, const std::string& path, int depth) {
    if (depth > kMaxDepth) throw ModelError("application hierarchy is too deep or recursive");
    std::vector<Step> steps;
    for (auto idx : task_order(comp, path)) {
      const auto& part = comp.parts[idx];
      const auto childPath = join_path(path, part.name);
      const auto* type = model_.find_component(ComponentKind::Application, part.typeRef);
      if (!type) throw ModelError(fmt::format("task '{}' has unknown type '{}'", childPath, part.typeRef));

      if (type->until) {
        steps.push_back(Step{loop(*type, childPath, depth)});
      } else if (!type->parts.empty()) {
        auto inner = body(*type, childPath, depth + 1);
        std::move(inner.begin(), inner.end(), std::back_inserter(steps));
      } else {
        steps.push_back(leaf(*type, childPath));
      }
    }
    return steps;
  }

  LoopStep loop(const Component& type, const std::string& path, int depth) {
    LoopStep step;
    step.loopPath = path;
    step.body = body(type, path, depth + 1);
    step.conditionPath = join_path(path, type.until->path);
    step.tol = type.until->tol;
    step.maxIter = type.until->maxIter;
    return step;
  }

private:
  Step leaf(const Component& type, const std::string& path) {
    const AllocationLink* alloc = nullptr;
    for (const auto& link : model_.allocations) {
      if (link.kind == AllocKind::Task && link.source == path) {
        alloc = &link;
        break;
      }
    }
    if (!alloc) throw UnallocatedTask(path);
    const auto op = type.elementaryOp.value_or("");

    if (!is_device_processor(model_, alloc->target)) return Step{HostOp{path, op}};

    if (!type.repetitionSpace) throw ModelError(fmt::format("device task '{}' has no repetition space", path));
    const auto ranges = partition_equally(shape_total(*type.repetitionSpace), devices_);
    const auto localSize = processing_elements_per_unit(model_, alloc->target);
    return Step{DeviceStep{path, op, derive_launch_config(path, localSize, ranges)}};
  }

  const Model& model_;
  int devices_;
};

void override_steps(std::vector<Step>& steps, std::optional<double> tol, std::optional<std::int64_t> maxIter) {
  for (auto& step : steps) {
    if (auto* loop = std::get_if<LoopStep>(&step.node)) {
      if (tol) loop->tol = *tol;
      if (maxIter) loop->maxIter = *maxIter;
      override_steps(loop->body, tol, maxIter);
    }
  }
}

}  // namespace

Schedule build_schedule(const Model& model, int deviceCount) {
  if (deviceCount < 1) throw std::invalid_argument("device count must be positive");
  const auto* root = model.application_root();
  if (!root) throw ModelError("application root is not declared");

  ScheduleBuilder builder(model, deviceCount);
  Schedule schedule;
  schedule.deviceCount = deviceCount;
  if (root->until) {
    schedule.steps.push_back(Step{builder.loop(*root, "", 0)});
  } else {
    schedule.steps = builder.body(*root, "", 0);
  }
  return schedule;
}

void override_loop_limits(Schedule& schedule, std::optional<double> tol, std::optional<std::int64_t> maxIter) {
  override_steps(schedule.steps, tol, maxIter);
}

}  // namespace gmodel
