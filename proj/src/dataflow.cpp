#include "gmodel/dataflow.hpp"

#include <algorithm>
#include <numeric>

namespace gmodel {

std::string path_identifier(std::string_view path) {
  std::string out(path);
  std::replace(out.begin(), out.end(), '.', '_');
  return out;
}

std::string absolute_port_path(std::string_view ownerPath, std::string_view endpoint) {
  return join_path(ownerPath, endpoint);
}

Dataflow::Dataflow(const Model& model) {
  if (const auto* root = model.application_root()) {
    std::vector<const Component*> stack;
    expand(model, *root, "", stack);
  }

  // Union-find over port indices.
  std::vector<std::size_t> parent(ports_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const auto& [a, b] : links_) {
    auto ia = port_index(a);
    auto ib = port_index(b);
    if (!ia || !ib) continue;
    auto ra = find(*ia);
    auto rb = find(*ib);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }

  // Roots are the smallest index of their set, so numbering classes in port
  // order makes the representative the first port encountered.
  classOf_.assign(ports_.size(), 0);
  std::map<std::size_t, std::size_t> rootToClass;
  for (std::size_t i = 0; i < ports_.size(); ++i) {
    auto r = find(i);
    auto [it, inserted] = rootToClass.emplace(r, representative_.size());
    if (inserted) representative_.push_back(i);
    classOf_[i] = it->second;
  }
}

void Dataflow::expand(const Model& model, const Component& comp, const std::string& path,
                      std::vector<const Component*>& stack) {
  stack.push_back(&comp);
  for (const auto& port : comp.ports) {
    auto p = join_path(path, port.name);
    if (portIndex_.count(p)) continue;
    portIndex_.emplace(p, ports_.size());
    ports_.push_back(PortInstance{p, path, &comp, &port});
  }
  for (const auto& conn : comp.connectors) {
    links_.emplace_back(absolute_port_path(path, conn.source), absolute_port_path(path, conn.target));
  }
  for (const auto& part : comp.parts) {
    auto childPath = join_path(path, part.name);
    const Component* type = part.inlineStereotype
                                ? nullptr
                                : model.find_component(ComponentKind::Application, part.typeRef);
    if (taskIndex_.count(childPath)) continue;
    taskIndex_.emplace(childPath, tasks_.size());
    tasks_.push_back(TaskInstance{childPath, &part, type});
    if (type && std::find(stack.begin(), stack.end(), type) == stack.end()) {
      expand(model, *type, childPath, stack);
    }
  }
  stack.pop_back();
}

std::optional<std::size_t> Dataflow::port_index(std::string_view path) const {
  auto it = portIndex_.find(path);
  if (it == portIndex_.end()) return std::nullopt;
  return it->second;
}

const TaskInstance* Dataflow::find_task(std::string_view path) const {
  auto it = taskIndex_.find(path);
  return it == taskIndex_.end() ? nullptr : &tasks_[it->second];
}

std::optional<std::size_t> Dataflow::class_of(std::string_view portPath) const {
  auto idx = port_index(portPath);
  if (!idx) return std::nullopt;
  return classOf_[*idx];
}

std::string Dataflow::class_name(std::size_t cls) const {
  return path_identifier(ports_[representative_.at(cls)].path);
}

std::vector<std::size_t> Dataflow::members(std::size_t cls) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < classOf_.size(); ++i) {
    if (classOf_[i] == cls) out.push_back(i);
  }
  return out;
}

}  // namespace gmodel
