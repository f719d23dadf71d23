#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gmodel/codegen.hpp"
#include "gmodel/dataflow.hpp"
#include "gmodel/intrinsics.hpp"

namespace gmodel::detail {

enum class ParamKind {
  Pointer,  // __global / __constant / __local array
  Value,    // private scalar passed by value
  Partial,  // per-group reduction output
  Count,
};

struct KernelParam {
  ParamKind kind = ParamKind::Pointer;
  std::string name;
  std::string portPath;
  AddressSpace space = AddressSpace::Global;
  DataType type = DataType::Float64;
  bool readOnly = false;
  const DataAllocate* alloc = nullptr;
  std::size_t storageClass = 0;
};

struct KernelInfo {
  std::string taskPath;
  std::string name;
  const IntrinsicSpec* spec = nullptr;
  std::vector<KernelParam> params;
};

std::string c_type(DataType t);

/// First device step per task path, in schedule order.
std::vector<const DeviceStep*> device_steps(const Schedule& schedule);

/// Binds every intrinsic port of each device task to its device allocation.
std::vector<KernelInfo> describe_kernels(const Model& model, const Dataflow& flow,
                                         const std::vector<MemoryMap>& maps, const Schedule& schedule);

}  // namespace gmodel::detail
