#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gmodel/metamodel.hpp"

namespace gmodel {

/// One variable placed in a memory region.
struct DataAllocate {
  std::string name;
  AddressSpace spaceAddress = AddressSpace::Global;
  std::int64_t baseAddress = 0;  // byte offset from the start of the region
  Shape dimAllocation;
  DataType typeAllocation = DataType::Float64;
  /// Parts sharing this storage, in link order.
  std::vector<std::string> associatedParts;
  /// Port paths mapped onto this allocation, in link order.
  std::vector<std::string> ports;

  bool operator==(const DataAllocate&) const = default;
};

/// Allocations of one memory instance, ascending by base address.
struct MemoryMap {
  std::string ownerPath;
  MemoryRole role = MemoryRole::DeviceGlobal;
  std::optional<std::int64_t> capacityBytes;
  std::vector<DataAllocate> dataAllocations;

  /// End of the highest allocation.
  std::int64_t used_bytes() const;
  /// Allocation holding `portPath`, if any.
  const DataAllocate* find_port(std::string_view portPath) const;
  bool operator==(const MemoryMap&) const = default;
};

std::int64_t allocation_size_bytes(const DataAllocate& alloc);

/// Memory-mapping transformation: one map per memory targeted by at least
/// one data allocation, in order of first use. Allocations are packed in link
/// order from offset 0, each base rounded up to its element size; a port
/// connected to one already placed in the same memory joins that allocation.
///
/// Requires a conformant model. Throws CapacityExceeded when a memory with a
/// declared capacity overflows.
std::vector<MemoryMap> build_memory_maps(const Model& model);

/// Line-oriented report:
///
///     map <owner> used=<bytes> capacity=<bytes|->
///       <name> space=<q> base=<n> dim=[..] type=<t> size=<bytes> parts=<a,b>
std::string emit_memory_map_report(const std::vector<MemoryMap>& maps);

}  // namespace gmodel
