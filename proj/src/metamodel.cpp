#include "gmodel/metamodel.hpp"

#include <algorithm>
#include <map>

#include "gmodel/error.hpp"

namespace gmodel {

Shape Shape::of(std::initializer_list<std::int64_t> values) {
  Shape s;
  for (auto v : values) s.dims.push_back(Extent::literal(v));
  return s;
}

std::vector<std::int64_t> Shape::values() const {
  std::vector<std::int64_t> out;
  out.reserve(dims.size());
  for (const auto& d : dims) out.push_back(d.value);
  return out;
}

std::int64_t shape_total(const Shape& shape) {
  std::int64_t total = 1;
  for (const auto& d : shape.dims) total *= d.value;
  return total;
}

// --- enum spelling ----------------------------------------------------------

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::pair<E, std::string_view> (&table)[N], std::string_view s) {
  for (const auto& [e, name] : table) {
    if (name == s) return e;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view spell(const std::pair<E, std::string_view> (&table)[N], E e) {
  for (const auto& [v, name] : table) {
    if (v == e) return name;
  }
  return "?";
}

constexpr std::pair<DataType, std::string_view> kDataTypes[] = {
    {DataType::Float32, "float32"},
    {DataType::Float64, "float64"},
    {DataType::Int32, "int32"},
    {DataType::Int64, "int64"},
};
constexpr std::pair<AddressSpace, std::string_view> kSpaces[] = {
    {AddressSpace::Global, "global"},
    {AddressSpace::Constant, "constant"},
    {AddressSpace::Local, "local"},
    {AddressSpace::Private, "private"},
};
constexpr std::pair<Direction, std::string_view> kDirections[] = {
    {Direction::In, "in"},
    {Direction::Out, "out"},
    {Direction::InOut, "inout"},
};
constexpr std::pair<HwKind, std::string_view> kHwKinds[] = {
    {HwKind::Processor, "hwProcessor"},
    {HwKind::Memory, "hwMemory"},
    {HwKind::Bus, "hwBus"},
};
constexpr std::pair<MemoryRole, std::string_view> kRoles[] = {
    {MemoryRole::HostRam, "hostRam"},
    {MemoryRole::DeviceGlobal, "deviceGlobal"},
    {MemoryRole::DeviceConstant, "deviceConstant"},
    {MemoryRole::DeviceLocal, "deviceLocal"},
    {MemoryRole::DevicePrivate, "devicePrivate"},
};
constexpr std::pair<PartKind, std::string_view> kPartKinds[] = {
    {PartKind::Part, "part"},
    {PartKind::Processor, "processor"},
    {PartKind::Memory, "memory"},
    {PartKind::Bus, "bus"},
};
constexpr std::pair<AllocKind, std::string_view> kAllocKinds[] = {
    {AllocKind::Data, "data"},
    {AllocKind::Task, "task"},
};

}  // namespace

std::string_view to_string(DataType v) { return spell(kDataTypes, v); }
std::string_view to_string(AddressSpace v) { return spell(kSpaces, v); }
std::string_view to_string(Direction v) { return spell(kDirections, v); }
std::string_view to_string(HwKind v) { return spell(kHwKinds, v); }
std::string_view to_string(MemoryRole v) { return spell(kRoles, v); }
std::string_view to_string(PartKind v) { return spell(kPartKinds, v); }
std::string_view to_string(AllocKind v) { return spell(kAllocKinds, v); }

std::optional<DataType> parse_data_type(std::string_view s) { return lookup(kDataTypes, s); }
std::optional<AddressSpace> parse_address_space(std::string_view s) { return lookup(kSpaces, s); }
std::optional<Direction> parse_direction(std::string_view s) { return lookup(kDirections, s); }
std::optional<HwKind> parse_hw_kind(std::string_view s) { return lookup(kHwKinds, s); }
std::optional<MemoryRole> parse_memory_role(std::string_view s) { return lookup(kRoles, s); }

AddressSpace default_address_space(MemoryRole role) noexcept {
  switch (role) {
    case MemoryRole::HostRam:
    case MemoryRole::DeviceGlobal: return AddressSpace::Global;
    case MemoryRole::DeviceConstant: return AddressSpace::Constant;
    case MemoryRole::DeviceLocal: return AddressSpace::Local;
    case MemoryRole::DevicePrivate: return AddressSpace::Private;
  }
  return AddressSpace::Global;
}

bool is_device_role(MemoryRole role) noexcept { return role != MemoryRole::HostRam; }

bool can_read(Direction d) noexcept { return d != Direction::Out; }
bool can_write(Direction d) noexcept { return d != Direction::In; }

// --- lookups ----------------------------------------------------------------

const FlowPort* Component::find_port(std::string_view port) const {
  auto it = std::find_if(ports.begin(), ports.end(), [&](const FlowPort& p) { return p.name == port; });
  return it == ports.end() ? nullptr : &*it;
}

const PartInstance* Component::find_part(std::string_view part) const {
  auto it = std::find_if(parts.begin(), parts.end(), [&](const PartInstance& p) { return p.name == part; });
  return it == parts.end() ? nullptr : &*it;
}

const Component* Model::find_component(ComponentKind kind, std::string_view name) const {
  const auto& list = kind == ComponentKind::Platform ? platformComponents : applicationComponents;
  auto it = std::find_if(list.begin(), list.end(), [&](const Component& c) { return c.name == name; });
  return it == list.end() ? nullptr : &*it;
}

const Component* Model::platform_root() const {
  return find_component(ComponentKind::Platform, platformRoot);
}

const Component* Model::application_root() const {
  return find_component(ComponentKind::Application, applicationRoot);
}

std::optional<HwStereotype> effective_stereotype(const Model& model, ComponentKind side,
                                                 const PartInstance& part) {
  if (part.inlineStereotype) return part.inlineStereotype;
  if (const auto* type = model.find_component(side, part.typeRef)) return type->stereotype;
  return std::nullopt;
}

Model rebind_sizes(Model model, const std::vector<SizeParam>& overrides) {
  std::map<std::string, std::int64_t, std::less<>> sizes;
  for (const auto& s : model.sizes) sizes[s.name] = s.value;
  for (const auto& o : overrides) sizes[o.name] = o.value;
  for (auto& s : model.sizes) s.value = sizes[s.name];

  auto fix = [&](Shape& shape) {
    for (auto& d : shape.dims) {
      if (!d.is_symbolic()) continue;
      auto it = sizes.find(d.symbol);
      if (it != sizes.end()) d.value = it->second + d.offset;
    }
  };
  for (auto* list : {&model.platformComponents, &model.applicationComponents}) {
    for (auto& c : *list) {
      for (auto& p : c.ports) fix(p.shape);
      for (auto& p : c.parts) {
        if (p.shaped) fix(*p.shaped);
      }
      if (c.repetitionSpace) fix(*c.repetitionSpace);
    }
  }
  return model;
}

// --- paths ------------------------------------------------------------------

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  if (path.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto dot = path.find('.', start);
    out.emplace_back(path.substr(start, dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

std::string join_path(std::string_view prefix, std::string_view name) {
  if (prefix.empty()) return std::string(name);
  std::string out(prefix);
  out += '.';
  out += name;
  return out;
}

std::string parent_path(std::string_view path) {
  auto dot = path.rfind('.');
  return dot == std::string_view::npos ? std::string() : std::string(path.substr(0, dot));
}

std::string leaf_name(std::string_view path) {
  auto dot = path.rfind('.');
  return std::string(dot == std::string_view::npos ? path : path.substr(dot + 1));
}

const PartInstance* ResolvedElement::part() const {
  auto* p = std::get_if<const PartInstance*>(&element);
  return p ? *p : nullptr;
}

const FlowPort* ResolvedElement::port() const {
  auto* p = std::get_if<const FlowPort*>(&element);
  return p ? *p : nullptr;
}

namespace {

struct WalkResult {
  std::optional<ResolvedElement> found;
  std::size_t resolvedSegments = 0;
};

WalkResult walk(const Model& model, ComponentKind side, const std::vector<std::string>& segs) {
  WalkResult result;
  const Component* comp = side == ComponentKind::Platform ? model.platform_root() : model.application_root();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!comp) return result;
    const bool last = i + 1 == segs.size();
    if (const auto* part = comp->find_part(segs[i])) {
      result.resolvedSegments = i + 1;
      if (last) {
        result.found = ResolvedElement{part, comp, side};
        return result;
      }
      comp = part->inlineStereotype ? nullptr : model.find_component(side, part->typeRef);
    } else if (const auto* port = comp->find_port(segs[i])) {
      result.resolvedSegments = i + 1;
      if (last) result.found = ResolvedElement{port, comp, side};
      return result;
    } else {
      return result;
    }
  }
  return result;
}

std::string prefix_of(const std::vector<std::string>& segs, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out = join_path(out, segs[i]);
  return out;
}

}  // namespace

ResolvedElement resolve_path(const Model& model, ComponentKind side, std::string_view path) {
  auto segs = split_path(path);
  if (segs.empty()) throw NotFound(std::string(path), "");
  auto r = walk(model, side, segs);
  if (r.found) return *r.found;
  throw NotFound(std::string(path), prefix_of(segs, r.resolvedSegments));
}

ResolvedElement resolve_path(const Model& model, std::string_view path) {
  auto segs = split_path(path);
  if (segs.empty()) throw NotFound(std::string(path), "");
  auto plat = walk(model, ComponentKind::Platform, segs);
  if (plat.found) return *plat.found;
  auto app = walk(model, ComponentKind::Application, segs);
  if (app.found) return *app.found;
  const auto best = std::max(plat.resolvedSegments, app.resolvedSegments);
  throw NotFound(std::string(path), prefix_of(segs, best));
}

std::optional<ResolvedElement> try_resolve_path(const Model& model, std::string_view path) {
  try {
    return resolve_path(model, path);
  } catch (const NotFound&) {
    return std::nullopt;
  }
}

namespace {

bool subtree_has_role(const Model& model, const Component& comp, MemoryRole role, int depth) {
  if (depth > 64) return false;
  for (const auto& part : comp.parts) {
    auto st = effective_stereotype(model, ComponentKind::Platform, part);
    if (st && st->kind == HwKind::Memory && st->role == role) return true;
    if (part.inlineStereotype) continue;
    if (const auto* type = model.find_component(ComponentKind::Platform, part.typeRef)) {
      if (subtree_has_role(model, *type, role, depth + 1)) return true;
    }
  }
  return false;
}

}  // namespace

bool is_device_processor(const Model& model, std::string_view processorPath) {
  auto segs = split_path(processorPath);
  const auto* root = model.platform_root();
  if (segs.empty() || !root) return false;
  const auto* node = root->find_part(segs.front());
  if (!node) return false;
  auto st = effective_stereotype(model, ComponentKind::Platform, *node);
  if (st && st->kind == HwKind::Memory) return false;
  if (node->inlineStereotype) return false;
  const auto* type = model.find_component(ComponentKind::Platform, node->typeRef);
  return type && subtree_has_role(model, *type, MemoryRole::DeviceGlobal, 0);
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  out += ": ";
  out += d.path.empty() ? "<model>" : d.path;
  out += ": ";
  out += d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace gmodel
