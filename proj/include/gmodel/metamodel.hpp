#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gmodel {

/// One dimension of a Shape. A dimension is either a literal (`symbol`
/// empty) or a named size parameter plus a constant offset, e.g. `N+1`.
/// `value` always holds the resolved extent.
struct Extent {
  std::int64_t value = 1;
  std::string symbol;
  std::int64_t offset = 0;

  static Extent literal(std::int64_t v) { return Extent{v, {}, 0}; }
  bool is_symbolic() const noexcept { return !symbol.empty(); }
  bool operator==(const Extent&) const = default;
};

/// Multiplicity of a port or part instance, one entry per dimension.
struct Shape {
  std::vector<Extent> dims;

  static Shape of(std::initializer_list<std::int64_t> values);
  std::vector<std::int64_t> values() const;
  bool operator==(const Shape&) const = default;
};

/// Product of all dimensions.
std::int64_t shape_total(const Shape& shape);

enum class DataType { Float32, Float64, Int32, Int64 };

constexpr std::int64_t size_bytes(DataType t) noexcept {
  return (t == DataType::Float32 || t == DataType::Int32) ? 4 : 8;
}
constexpr bool is_integral(DataType t) noexcept {
  return t == DataType::Int32 || t == DataType::Int64;
}

enum class AddressSpace { Global, Constant, Local, Private };
enum class Direction { In, Out, InOut };
enum class HwKind { Processor, Memory, Bus };
enum class MemoryRole { HostRam, DeviceGlobal, DeviceConstant, DeviceLocal, DevicePrivate };
enum class ComponentKind { Platform, Application };
enum class PartKind { Part, Processor, Memory, Bus };
enum class AllocKind { Data, Task };

std::string_view to_string(DataType);
std::string_view to_string(AddressSpace);
std::string_view to_string(Direction);
std::string_view to_string(HwKind);
std::string_view to_string(MemoryRole);
std::string_view to_string(PartKind);
std::string_view to_string(AllocKind);

std::optional<DataType> parse_data_type(std::string_view);
std::optional<AddressSpace> parse_address_space(std::string_view);
std::optional<Direction> parse_direction(std::string_view);
std::optional<HwKind> parse_hw_kind(std::string_view);
std::optional<MemoryRole> parse_memory_role(std::string_view);

/// The only address space a memory of the given role hands out by default.
AddressSpace default_address_space(MemoryRole role) noexcept;
bool is_device_role(MemoryRole role) noexcept;

bool can_read(Direction d) noexcept;   // in, inout
bool can_write(Direction d) noexcept;  // out, inout

struct FlowPort {
  std::string name;
  Direction direction = Direction::In;
  DataType type = DataType::Float64;
  Shape shape;
  bool operator==(const FlowPort&) const = default;
};

struct HwStereotype {
  HwKind kind = HwKind::Processor;
  std::optional<MemoryRole> role;            // hwMemory only
  std::optional<std::int64_t> capacityBytes; // hwMemory only
  std::optional<std::int64_t> frequencyMHz;  // hwProcessor only
  bool operator==(const HwStereotype&) const = default;
};

struct PartInstance {
  std::string name;
  PartKind kind = PartKind::Part;
  /// Component type name; empty when `inlineStereotype` describes an
  /// elementary hardware element instead.
  std::string typeRef;
  std::optional<Shape> shaped;
  std::optional<HwStereotype> inlineStereotype;
  bool operator==(const PartInstance&) const = default;
};

/// Link between two ports inside one component. Paths are relative to the
/// owning component: `port` names one of its own ports, `part.port` a port
/// of one of its parts.
struct Connector {
  std::string source;
  std::string target;
  bool operator==(const Connector&) const = default;
};

/// Loop-termination constraint of a repetitive composite task.
struct ContinueCondition {
  std::string path;  // scalar port, relative to the loop component
  double tol = 1e-10;
  std::int64_t maxIter = 1000;
  bool operator==(const ContinueCondition&) const = default;
};

struct Component {
  std::string name;
  ComponentKind kind = ComponentKind::Platform;
  std::vector<FlowPort> ports;
  std::vector<PartInstance> parts;
  std::vector<Connector> connectors;
  std::optional<HwStereotype> stereotype;
  std::optional<Shape> repetitionSpace;
  std::optional<std::string> elementaryOp;
  std::optional<ContinueCondition> until;

  const FlowPort* find_port(std::string_view port) const;
  const PartInstance* find_part(std::string_view part) const;
  bool operator==(const Component&) const = default;
};

struct AllocationLink {
  AllocKind kind = AllocKind::Data;
  std::string source;
  std::string target;
  std::optional<AddressSpace> space;  // explicit `as <qualifier>`
  bool operator==(const AllocationLink&) const = default;
};

struct SizeParam {
  std::string name;
  std::int64_t value = 1;
  bool operator==(const SizeParam&) const = default;
};

struct Model {
  std::vector<SizeParam> sizes;
  std::vector<Component> platformComponents;
  std::vector<Component> applicationComponents;
  std::string platformRoot;
  std::string applicationRoot;
  std::vector<AllocationLink> allocations;

  const Component* find_component(ComponentKind kind, std::string_view name) const;
  const Component* platform_root() const;
  const Component* application_root() const;
  bool operator==(const Model&) const = default;
};

/// Effective hardware stereotype of a part: inline, else its type's.
std::optional<HwStereotype> effective_stereotype(const Model& model, ComponentKind side,
                                                 const PartInstance& part);

/// Recomputes every symbolic extent from `overrides` (falling back to the
/// model's declared size parameters) and updates the declared values.
Model rebind_sizes(Model model, const std::vector<SizeParam>& overrides);

// --- path resolution --------------------------------------------------------

/// Result of walking a dotted path from one of the model roots.
struct ResolvedElement {
  std::variant<const PartInstance*, const FlowPort*> element;
  /// Component that declares the element.
  const Component* owner = nullptr;
  ComponentKind side = ComponentKind::Platform;

  const PartInstance* part() const;
  const FlowPort* port() const;
};

/// Resolves `path` against the platform root, then the application root.
/// Throws NotFound carrying the longest resolvable prefix.
ResolvedElement resolve_path(const Model& model, std::string_view path);
std::optional<ResolvedElement> try_resolve_path(const Model& model, std::string_view path);

/// Resolves `path` within one side only.
ResolvedElement resolve_path(const Model& model, ComponentKind side, std::string_view path);

/// True when the processor at `processorPath` sits on a device node: the
/// top-level platform part containing it owns a deviceGlobal memory.
bool is_device_processor(const Model& model, std::string_view processorPath);

std::vector<std::string> split_path(std::string_view path);
std::string join_path(std::string_view prefix, std::string_view name);
/// `a.b.c` -> `a.b`; single segment -> empty.
std::string parent_path(std::string_view path);
/// `a.b.c` -> `c`.
std::string leaf_name(std::string_view path);

// --- conformance ------------------------------------------------------------

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string path;
  std::string message;
  bool operator==(const Diagnostic&) const = default;
};

std::string format_diagnostic(const Diagnostic& d);
bool has_errors(const std::vector<Diagnostic>& diagnostics);

/// Checks every structural rule of the metamodel. The result is sorted by
/// (path, message) and is empty iff the model conforms.
std::vector<Diagnostic> validate_conformance(const Model& model);

}  // namespace gmodel
