#include "gmodel/memmap.hpp"

#include <algorithm>
#include <map>

#include <fmt/format.h>

#include "gmodel/dataflow.hpp"
#include "gmodel/error.hpp"

namespace gmodel {

std::int64_t allocation_size_bytes(const DataAllocate& alloc) {
  return shape_total(alloc.dimAllocation) * size_bytes(alloc.typeAllocation);
}

std::int64_t MemoryMap::used_bytes() const {
  std::int64_t end = 0;
  for (const auto& a : dataAllocations) end = std::max(end, a.baseAddress + allocation_size_bytes(a));
  return end;
}

const DataAllocate* MemoryMap::find_port(std::string_view portPath) const {
  for (const auto& a : dataAllocations) {
    if (std::find(a.ports.begin(), a.ports.end(), portPath) != a.ports.end()) return &a;
  }
  return nullptr;
}

namespace {

std::int64_t align_up(std::int64_t offset, std::int64_t alignment) {
  return (offset + alignment - 1) / alignment * alignment;
}

struct MapBuilder {
  MemoryMap map;
  std::int64_t cursor = 0;
  std::map<std::size_t, std::size_t> byClass;  // storage class -> allocation index
};

}  // namespace

std::vector<MemoryMap> build_memory_maps(const Model& model) {
  const Dataflow flow(model);
  std::vector<MapBuilder> builders;
  std::map<std::string, std::size_t> byOwner;

  for (const auto& link : model.allocations) {
    if (link.kind != AllocKind::Data) continue;
    const auto target = resolve_path(model, ComponentKind::Platform, link.target);
    const auto source = resolve_path(model, ComponentKind::Application, link.source);
    const auto* port = source.port();
    const auto st = target.part() ? effective_stereotype(model, ComponentKind::Platform, *target.part())
                                  : std::nullopt;
    if (!port || !st || st->kind != HwKind::Memory || !st->role) {
      throw ModelError(fmt::format("invalid data allocation '{}' onto '{}'", link.source, link.target));
    }
    const MemoryRole role = *st->role;
    const auto cls = flow.class_of(link.source);
    if (!cls) throw ModelError(fmt::format("port '{}' is not part of the application hierarchy", link.source));

    auto [it, inserted] = byOwner.emplace(link.target, builders.size());
    if (inserted) {
      MapBuilder b;
      b.map.ownerPath = link.target;
      b.map.role = role;
      b.map.capacityBytes = st->capacityBytes;
      builders.push_back(std::move(b));
    }
    auto& b = builders[it->second];

    auto partPath = parent_path(link.source);
    if (partPath.empty()) partPath = model.applicationRoot;

    if (auto shared = b.byClass.find(*cls); shared != b.byClass.end()) {
      auto& alloc = b.map.dataAllocations[shared->second];
      if (std::find(alloc.associatedParts.begin(), alloc.associatedParts.end(), partPath) ==
          alloc.associatedParts.end()) {
        alloc.associatedParts.push_back(partPath);
      }
      if (std::find(alloc.ports.begin(), alloc.ports.end(), link.source) == alloc.ports.end()) {
        alloc.ports.push_back(link.source);
      }
      continue;
    }

    DataAllocate alloc;
    alloc.name = path_identifier(link.source);
    alloc.spaceAddress = link.space.value_or(default_address_space(role));
    alloc.dimAllocation = port->shape;
    alloc.typeAllocation = port->type;
    alloc.baseAddress = align_up(b.cursor, size_bytes(port->type));
    alloc.associatedParts.push_back(partPath);
    alloc.ports.push_back(link.source);

    const auto end = alloc.baseAddress + allocation_size_bytes(alloc);
    if (b.map.capacityBytes && end > *b.map.capacityBytes) {
      throw CapacityExceeded(b.map.ownerPath, end, *b.map.capacityBytes);
    }
    b.cursor = end;
    b.byClass.emplace(*cls, b.map.dataAllocations.size());
    b.map.dataAllocations.push_back(std::move(alloc));
  }

  std::vector<MemoryMap> maps;
  maps.reserve(builders.size());
  for (auto& b : builders) maps.push_back(std::move(b.map));
  return maps;
}

std::string emit_memory_map_report(const std::vector<MemoryMap>& maps) {
  std::string out;
  for (const auto& m : maps) {
    out += fmt::format("map {} used={} capacity={}\n", m.ownerPath, m.used_bytes(),
                       m.capacityBytes ? std::to_string(*m.capacityBytes) : std::string("-"));
    for (const auto& a : m.dataAllocations) {
      out += fmt::format("  {} space={} base={} dim=[{}] type={} size={} parts={}\n", a.name,
                         to_string(a.spaceAddress), a.baseAddress, fmt::join(a.dimAllocation.values(), ","),
                         to_string(a.typeAllocation), allocation_size_bytes(a), fmt::join(a.associatedParts, ","));
    }
  }
  return out;
}

}  // namespace gmodel
