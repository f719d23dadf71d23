#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gmodel/memmap.hpp"
#include "gmodel/metamodel.hpp"
#include "gmodel/partition.hpp"

namespace gmodel {

struct GeneratedUnit {
  std::string fileName;
  std::string contents;
  bool operator==(const GeneratedUnit&) const = default;
};

/// OpenCL C kernel file, one `__kernel` per distinct device task.
/// Throws UnknownIntrinsic, or ModelError when a kernel parameter has no
/// usable device allocation.
GeneratedUnit generate_kernels(const Model& model, const std::vector<MemoryMap>& maps, const Schedule& schedule);

/// C host program driving the kernels on `deviceCount` devices of one context.
GeneratedUnit generate_host(const Model& model, const std::vector<MemoryMap>& maps, const Schedule& schedule,
                            int deviceCount);

/// 64-bit FNV-1a of the canonical model text, as 16 hex digits.
std::string model_digest(const Model& model);

/// Kernel entry-point name per device task path, in schedule order.
std::vector<std::pair<std::string, std::string>> kernel_names(const Schedule& schedule);

/// Lower-cased application root name used for output files.
std::string file_stem(const Model& model);

/// OpenCL keyword for an address space ("" for private).
std::string_view address_space_keyword(AddressSpace space);

}  // namespace gmodel
