#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "gmodel/dataflow.hpp"
#include "gmodel/intrinsics.hpp"
#include "gmodel/metamodel.hpp"

namespace gmodel {
namespace {

std::string describe(const FlowPort& p) {
  return fmt::format("{} {} [{}]", to_string(p.direction), to_string(p.type),
                     fmt::join(p.shape.values(), ","));
}

bool shape_valid(const Shape& s) {
  return !s.dims.empty() &&
         std::all_of(s.dims.begin(), s.dims.end(), [](const Extent& e) { return e.value >= 1; });
}

struct EndpointRef {
  const FlowPort* port = nullptr;
  bool own = false;  // port of the component itself rather than of a part
};

class Checker {
public:
  explicit Checker(const Model& model) : model_(model) {}

  std::vector<Diagnostic> run() {
    check_roots();
    for (const auto& c : model_.platformComponents) check_component(c);
    for (const auto& c : model_.applicationComponents) check_component(c);
    check_duplicate_components();
    check_cycles(ComponentKind::Platform);
    check_cycles(ComponentKind::Application);
    check_top_level_names();
    check_allocations();
    check_tasks();

    std::sort(out_.begin(), out_.end(), [](const Diagnostic& a, const Diagnostic& b) {
      return std::tie(a.path, a.message) < std::tie(b.path, b.message);
    });
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return std::move(out_);
  }

private:
  void error(std::string path, std::string message) {
    out_.push_back(Diagnostic{Severity::Error, std::move(path), std::move(message)});
  }

  void check_roots() {
    if (!model_.platform_root()) {
      error("platform", fmt::format("root component '{}' is not declared", model_.platformRoot));
    }
    if (!model_.application_root()) {
      error("application", fmt::format("root component '{}' is not declared", model_.applicationRoot));
    }
  }

  void check_duplicate_components() {
    for (const auto* list : {&model_.platformComponents, &model_.applicationComponents}) {
      std::set<std::string> seen;
      for (const auto& c : *list) {
        if (!seen.insert(c.name).second) error(c.name, "duplicate component name");
      }
    }
    for (const auto& c : model_.platformComponents) {
      if (model_.find_component(ComponentKind::Application, c.name)) {
        error(c.name, "component name used by both platform and application");
      }
    }
  }

  void check_stereotype(const HwStereotype& st, const std::string& path) {
    if (st.kind == HwKind::Memory && !st.role) error(path, "hwMemory requires a memory role");
    if (st.kind != HwKind::Memory && st.role) error(path, "memory role is only valid on hwMemory");
    if (st.capacityBytes) {
      if (st.kind != HwKind::Memory) error(path, "capacity is only valid on hwMemory");
      if (*st.capacityBytes < 1) error(path, "capacity must be positive");
    }
    if (st.frequencyMHz) {
      if (st.kind != HwKind::Processor) error(path, "frequency is only valid on hwProcessor");
      if (*st.frequencyMHz < 1) error(path, "frequency must be positive");
    }
  }

  static std::optional<HwKind> kind_for_keyword(PartKind k) {
    switch (k) {
      case PartKind::Processor: return HwKind::Processor;
      case PartKind::Memory: return HwKind::Memory;
      case PartKind::Bus: return HwKind::Bus;
      case PartKind::Part: return std::nullopt;
    }
    return std::nullopt;
  }

  void check_component(const Component& c) {
    const bool app = c.kind == ComponentKind::Application;

    std::set<std::string> portNames;
    for (const auto& p : c.ports) {
      const auto path = join_path(c.name, p.name);
      if (!portNames.insert(p.name).second) error(path, "duplicate port name");
      if (!shape_valid(p.shape)) error(path, "shape must have positive dimensions");
    }

    std::set<std::string> partNames;
    for (const auto& part : c.parts) {
      const auto path = join_path(c.name, part.name);
      if (!partNames.insert(part.name).second) error(path, "duplicate part name");
      if (portNames.count(part.name)) error(path, "part name collides with a port name");
      if (part.shaped && !shape_valid(*part.shaped)) error(path, "shape must have positive dimensions");
      if (app && part.shaped) error(path, "shaped application parts are not supported");

      if (part.inlineStereotype) {
        if (app) error(path, "application parts cannot carry a hardware stereotype");
        check_stereotype(*part.inlineStereotype, path);
      } else {
        const auto* type = model_.find_component(c.kind, part.typeRef);
        if (!type) {
          const auto other = app ? ComponentKind::Platform : ComponentKind::Application;
          if (model_.find_component(other, part.typeRef)) {
            error(path, fmt::format("part type '{}' is a {} component", part.typeRef,
                                    app ? "platform" : "application"));
          } else {
            error(path, fmt::format("unknown component type '{}'", part.typeRef));
          }
        }
      }

      if (auto expected = kind_for_keyword(part.kind)) {
        auto st = effective_stereotype(model_, c.kind, part);
        if (!st) {
          error(path, fmt::format("'{}' part has no hardware stereotype", to_string(part.kind)));
        } else if (st->kind != *expected) {
          error(path, fmt::format("'{}' part has {} stereotype", to_string(part.kind), to_string(st->kind)));
        }
      }
    }

    if (c.stereotype) {
      if (app) error(c.name, "application components cannot carry a hardware stereotype");
      check_stereotype(*c.stereotype, c.name);
    }

    if (!app) {
      if (c.elementaryOp) error(c.name, "platform components cannot deploy intrinsics");
      if (c.repetitionSpace) error(c.name, "platform components cannot have a repetition space");
      if (c.until) error(c.name, "platform components cannot have a continue-condition");
    }

    if (c.repetitionSpace && !shape_valid(*c.repetitionSpace)) {
      error(join_path(c.name, "repeat"), "shape must have positive dimensions");
    }

    if (c.elementaryOp) {
      if (!c.parts.empty()) error(c.name, "leaf task with elementaryOp cannot have parts");
      if (c.until) error(c.name, "leaf task cannot carry a continue-condition");
      check_intrinsic_ports(c);
    }

    if (c.until) check_until(c);

    for (std::size_t i = 0; i < c.connectors.size(); ++i) check_connector(c, i);
  }

  void check_intrinsic_ports(const Component& c) {
    const auto* spec = find_intrinsic(*c.elementaryOp);
    if (!spec) {
      error(join_path(c.name, "deploy"), fmt::format("unknown intrinsic '{}'", *c.elementaryOp));
      return;
    }
    for (const auto& want : spec->ports) {
      const auto* have = c.find_port(want.name);
      if (!have) {
        error(c.name, fmt::format("intrinsic '{}' requires port '{}'", spec->name, want.name));
        continue;
      }
      const auto path = join_path(c.name, have->name);
      if (have->direction != want.direction || have->type != want.type) {
        error(path, fmt::format("port must be {} {} for intrinsic '{}'", to_string(want.direction),
                                to_string(want.type), spec->name));
      }
      if (want.scalar && shape_total(have->shape) != 1) {
        error(path, fmt::format("port must be scalar for intrinsic '{}'", spec->name));
      }
    }
    for (const auto& have : c.ports) {
      auto used = std::any_of(spec->ports.begin(), spec->ports.end(),
                              [&](const IntrinsicPort& p) { return p.name == have.name; });
      if (!used) error(join_path(c.name, have.name), fmt::format("port not used by intrinsic '{}'", spec->name));
    }
  }

  // Resolves `endpoint` relative to component `c`.
  std::optional<EndpointRef> resolve_endpoint(const Component& c, const std::string& endpoint) {
    auto segs = split_path(endpoint);
    if (segs.size() == 1) {
      if (const auto* p = c.find_port(segs[0])) return EndpointRef{p, true};
      return std::nullopt;
    }
    if (segs.size() != 2) return std::nullopt;
    const auto* part = c.find_part(segs[0]);
    if (!part || part->inlineStereotype) return std::nullopt;
    const auto* type = model_.find_component(c.kind, part->typeRef);
    if (!type) return std::nullopt;
    if (const auto* p = type->find_port(segs[1])) return EndpointRef{p, false};
    return std::nullopt;
  }

  void check_connector(const Component& c, std::size_t i) {
    const auto& conn = c.connectors[i];
    const auto path = fmt::format("{}.connect[{}]", c.name, i);
    auto src = resolve_endpoint(c, conn.source);
    auto dst = resolve_endpoint(c, conn.target);
    if (!src) error(path, fmt::format("connector source '{}' does not resolve", conn.source));
    if (!dst) error(path, fmt::format("connector target '{}' does not resolve", conn.target));
    if (!src || !dst) return;

    if (src->port->type != dst->port->type) {
      error(path, fmt::format("type mismatch: {} -> {}", describe(*src->port), describe(*dst->port)));
    }
    if (src->port->shape.values() != dst->port->shape.values()) {
      error(path, fmt::format("shape mismatch: {} -> {}", describe(*src->port), describe(*dst->port)));
    }
    // Delegation: an own input feeds inward, an own output is fed from inside.
    const bool srcOk = src->own ? can_read(src->port->direction) : can_write(src->port->direction);
    const bool dstOk = dst->own ? can_write(dst->port->direction) : can_read(dst->port->direction);
    if (!srcOk || !dstOk) {
      error(path, fmt::format("direction mismatch: {} -> {}", describe(*src->port), describe(*dst->port)));
    }
  }

  void check_until(const Component& c) {
    const auto path = join_path(c.name, "until");
    const auto& u = *c.until;
    auto ref = resolve_endpoint(c, u.path);
    if (!ref) {
      error(path, fmt::format("continue-condition port '{}' does not resolve", u.path));
    } else if (ref->port->type != DataType::Float64 || shape_total(ref->port->shape) != 1) {
      error(path, "continue-condition port must be a float64 scalar");
    }
    if (!(u.tol > 0.0 && u.tol < 1.0)) error(path, "tolerance must lie in (0, 1)");
    if (u.maxIter < 1) error(path, "maxIter must be positive");
  }

  void check_cycles(ComponentKind side) {
    const auto& list = side == ComponentKind::Platform ? model_.platformComponents : model_.applicationComponents;
    for (const auto& c : list) {
      std::set<const Component*> seen;
      std::vector<const Component*> work{&c};
      bool cyclic = false;
      while (!work.empty() && !cyclic) {
        const auto* cur = work.back();
        work.pop_back();
        for (const auto& part : cur->parts) {
          if (part.inlineStereotype) continue;
          const auto* type = model_.find_component(side, part.typeRef);
          if (!type) continue;
          if (type == &c) {
            cyclic = true;
            break;
          }
          if (seen.insert(type).second) work.push_back(type);
        }
      }
      if (cyclic) error(c.name, "component instantiates itself through its parts");
    }
  }

  void check_top_level_names() {
    const auto* plat = model_.platform_root();
    const auto* app = model_.application_root();
    if (!plat || !app) return;
    auto names = [](const Component& c) {
      std::set<std::string> out;
      for (const auto& p : c.ports) out.insert(p.name);
      for (const auto& p : c.parts) out.insert(p.name);
      return out;
    };
    auto a = names(*plat);
    for (const auto& n : names(*app)) {
      if (a.count(n)) error(n, "top-level name is ambiguous between platform and application roots");
    }
  }

  void check_allocations() {
    std::set<std::pair<std::string, std::string>> dataLinks;
    std::set<std::string> taskLinks;
    for (std::size_t i = 0; i < model_.allocations.size(); ++i) {
      const auto& link = model_.allocations[i];
      const auto path = fmt::format("allocate[{}]", i);
      std::optional<ResolvedElement> src;
      std::optional<ResolvedElement> dst;
      try {
        src = resolve_path(model_, ComponentKind::Application, link.source);
      } catch (const std::exception&) {
      }
      try {
        dst = resolve_path(model_, ComponentKind::Platform, link.target);
      } catch (const std::exception&) {
      }
      if (!src) error(path, fmt::format("allocation source '{}' does not resolve", link.source));
      if (!dst) error(path, fmt::format("allocation target '{}' does not resolve", link.target));

      std::optional<HwStereotype> st;
      if (dst && dst->part()) st = effective_stereotype(model_, ComponentKind::Platform, *dst->part());

      if (link.kind == AllocKind::Data) {
        if (src && !src->port()) error(path, "data allocation source is not a port");
        if (dst && (!st || st->kind != HwKind::Memory)) {
          error(path, "allocation target not a memory");
        } else if (dst && st->role) {
          auto legal = default_address_space(*st->role);
          if (link.space && *link.space != legal) {
            error(path, fmt::format("qualifier '{}' is not legal for memory role {}", to_string(*link.space),
                                    to_string(*st->role)));
          }
          auto space = link.space.value_or(legal);
          if (space == AddressSpace::Constant && src && src->port() && src->port()->direction != Direction::In) {
            error(path, "constant-space allocation requires an 'in' port");
          }
        }
        if (!dataLinks.emplace(link.source, link.target).second) {
          error(path, "port already allocated to this memory");
        }
      } else {
        if (src && !src->part()) error(path, "task allocation source is not a task");
        if (src && src->part() && src->part()->inlineStereotype == std::nullopt) {
          const auto* type = model_.find_component(ComponentKind::Application, src->part()->typeRef);
          if (type && !type->parts.empty()) error(path, "only leaf tasks can be allocated");
        }
        if (dst && (!st || st->kind != HwKind::Processor)) error(path, "allocation target not a processor");
        if (!taskLinks.insert(link.source).second) error(path, "task allocated more than once");
      }
    }
  }

  // Instance-level rules over the expanded application hierarchy.
  void check_tasks() {
    if (!model_.application_root()) return;
    Dataflow flow(model_);

    std::set<std::string> dataAllocated;
    std::set<std::size_t> deviceClasses;
    for (const auto& link : model_.allocations) {
      if (link.kind != AllocKind::Data) continue;
      dataAllocated.insert(link.source);
      auto target = try_resolve_path(model_, link.target);
      if (!target || !target->part()) continue;
      auto st = effective_stereotype(model_, ComponentKind::Platform, *target->part());
      if (!st || !st->role || !is_device_role(*st->role)) continue;
      if (auto cls = flow.class_of(link.source)) deviceClasses.insert(*cls);
    }

    for (const auto& task : flow.tasks()) {
      if (!task.type || !task.type->parts.empty()) continue;
      if (!task.type->elementaryOp) {
        error(task.path, "leaf task has no elementaryOp");
        continue;
      }
      const AllocationLink* alloc = nullptr;
      for (const auto& link : model_.allocations) {
        if (link.kind == AllocKind::Task && link.source == task.path) {
          alloc = &link;
          break;
        }
      }
      if (!alloc || !is_device_processor(model_, alloc->target)) continue;

      const auto* spec = find_intrinsic(*task.type->elementaryOp);
      if (spec && spec->hostOnly) {
        error(task.path, fmt::format("host-only intrinsic '{}' allocated to a device", spec->name));
      }
      if (!task.type->repetitionSpace) error(task.path, "device task needs a repetition space");

      for (const auto& port : task.type->ports) {
        const auto portPath = join_path(task.path, port.name);
        if (can_read(port.direction)) {
          if (!dataAllocated.count(portPath)) error(portPath, "input port of device task has no data allocation");
        } else if (!(spec && spec->reduction && port.name == "s")) {
          auto cls = flow.class_of(portPath);
          if (!cls || !deviceClasses.count(*cls)) {
            error(portPath, "output port of device task has no device allocation");
          }
        }
      }
    }
  }

  const Model& model_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_conformance(const Model& model) { return Checker(model).run(); }

}  // namespace gmodel
