#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gmodel/metamodel.hpp"

namespace gmodel {

/// A flow port of one instance in the expanded application hierarchy.
struct PortInstance {
  std::string path;       // e.g. "loop.spmv.x"; root ports have no prefix
  std::string ownerPath;  // instance path of the owning component ("" = root)
  const Component* owner = nullptr;
  const FlowPort* port = nullptr;
};

/// A part instance of the application hierarchy (composite or leaf task).
struct TaskInstance {
  std::string path;
  const PartInstance* part = nullptr;
  const Component* type = nullptr;  // null when the typeRef dangles
};

/// Expanded application hierarchy and its storage classes: ports joined
/// (transitively) by connectors share one piece of storage.
///
/// Construction tolerates dangling references and cyclic type graphs so it
/// can back conformance checks on unvalidated models.
class Dataflow {
public:
  explicit Dataflow(const Model& model);

  const std::vector<PortInstance>& ports() const noexcept { return ports_; }
  const std::vector<TaskInstance>& tasks() const noexcept { return tasks_; }

  std::optional<std::size_t> port_index(std::string_view path) const;
  const TaskInstance* find_task(std::string_view path) const;

  std::size_t class_count() const noexcept { return representative_.size(); }
  std::size_t class_of(std::size_t port) const { return classOf_.at(port); }
  std::optional<std::size_t> class_of(std::string_view portPath) const;
  /// First port of the class in expansion order.
  std::size_t representative(std::size_t cls) const { return representative_.at(cls); }
  /// Identifier-safe name of the class (representative path, '.' -> '_').
  std::string class_name(std::size_t cls) const;
  std::vector<std::size_t> members(std::size_t cls) const;

private:
  void expand(const Model& model, const Component& comp, const std::string& path,
              std::vector<const Component*>& stack);

  std::vector<PortInstance> ports_;
  std::vector<TaskInstance> tasks_;
  std::map<std::string, std::size_t, std::less<>> portIndex_;
  std::map<std::string, std::size_t, std::less<>> taskIndex_;
  std::vector<std::pair<std::string, std::string>> links_;
  std::vector<std::size_t> classOf_;
  std::vector<std::size_t> representative_;
};

/// Turns a dotted path into a C identifier fragment.
std::string path_identifier(std::string_view path);

/// Resolves a connector endpoint written inside the component instance at
/// `ownerPath` to an absolute port path.
std::string absolute_port_path(std::string_view ownerPath, std::string_view endpoint);

}  // namespace gmodel
