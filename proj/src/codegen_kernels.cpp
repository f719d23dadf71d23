#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>

#include "codegen_common.hpp"
#include "gmodel/dsl.hpp"
#include "gmodel/error.hpp"

namespace gmodel {

std::string_view address_space_keyword(AddressSpace space) {
  switch (space) {
    case AddressSpace::Global: return "__global";
    case AddressSpace::Constant: return "__constant";
    case AddressSpace::Local: return "__local";
    case AddressSpace::Private: return "";
  }
  return "";
}

std::string model_digest(const Model& model) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : serialize_model(model)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

std::string file_stem(const Model& model) {
  std::string stem = model.applicationRoot.empty() ? "model" : model.applicationRoot;
  std::transform(stem.begin(), stem.end(), stem.begin(), [](unsigned char c) { return std::tolower(c); });
  return stem;
}

std::vector<std::pair<std::string, std::string>> kernel_names(const Schedule& schedule) {
  std::vector<std::pair<std::string, std::string>> names;
  std::set<std::string> used;
  for (const auto* step : detail::device_steps(schedule)) {
    const auto base = "k_" + path_identifier(leaf_name(step->taskPath));
    auto name = base;
    for (int n = 2; used.count(name); ++n) name = fmt::format("{}_{}", base, n);
    used.insert(name);
    names.emplace_back(step->taskPath, name);
  }
  return names;
}

namespace detail {

std::string c_type(DataType t) {
  switch (t) {
    case DataType::Float32: return "float";
    case DataType::Float64: return "double";
    case DataType::Int32: return "int";
    case DataType::Int64: return "long";
  }
  return "double";
}

namespace {

void collect(const std::vector<Step>& steps, std::vector<const DeviceStep*>& out, std::set<std::string>& seen) {
  for (const auto& step : steps) {
    if (const auto* dev = std::get_if<DeviceStep>(&step.node)) {
      if (seen.insert(dev->taskPath).second) out.push_back(dev);
    } else if (const auto* loop = std::get_if<LoopStep>(&step.node)) {
      collect(loop->body, out, seen);
    }
  }
}

const DataAllocate* device_allocation(const Dataflow& flow, const std::vector<MemoryMap>& maps,
                                      const std::string& portPath, std::size_t cls) {
  for (const auto& map : maps) {
    if (!is_device_role(map.role)) continue;
    if (const auto* a = map.find_port(portPath)) return a;
  }
  for (const auto& map : maps) {
    if (!is_device_role(map.role)) continue;
    for (const auto& a : map.dataAllocations) {
      if (!a.ports.empty() && flow.class_of(a.ports.front()) == cls) return &a;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<const DeviceStep*> device_steps(const Schedule& schedule) {
  std::vector<const DeviceStep*> out;
  std::set<std::string> seen;
  collect(schedule.steps, out, seen);
  return out;
}

std::vector<KernelInfo> describe_kernels(const Model& model, const Dataflow& flow,
                                         const std::vector<MemoryMap>& maps, const Schedule& schedule) {
  (void)model;
  std::vector<KernelInfo> kernels;
  const auto names = kernel_names(schedule);
  for (const auto& [taskPath, name] : names) {
    const auto* task = flow.find_task(taskPath);
    if (!task || !task->type) throw ModelError(fmt::format("schedule names unknown task '{}'", taskPath));
    const auto op = task->type->elementaryOp.value_or("");
    const auto* spec = find_intrinsic(op);
    if (!spec) throw UnknownIntrinsic(taskPath, op);
    if (spec->hostOnly) throw ModelError(fmt::format("host-only intrinsic '{}' scheduled on a device", op));

    KernelInfo info{taskPath, name, spec, {}};
    for (const auto& ip : spec->ports) {
      KernelParam param;
      param.name = std::string(ip.name);
      param.portPath = join_path(taskPath, ip.name);
      param.type = ip.type;
      if (spec->reduction && ip.name == "s") {
        param.kind = ParamKind::Partial;
        info.params.push_back(std::move(param));
        continue;
      }
      const auto cls = flow.class_of(param.portPath);
      if (!cls) throw ModelError(fmt::format("port '{}' not found", param.portPath));
      param.storageClass = *cls;
      param.alloc = device_allocation(flow, maps, param.portPath, *cls);
      if (!param.alloc) throw ModelError(fmt::format("port '{}' has no device allocation", param.portPath));
      param.space = param.alloc->spaceAddress;
      param.readOnly = ip.direction == Direction::In;
      if (param.space == AddressSpace::Private) {
        if (!ip.scalar) throw ModelError(fmt::format("array port '{}' cannot live in private memory", param.portPath));
        param.kind = ParamKind::Value;
      }
      if (ip.name == "scratch" && param.space != AddressSpace::Local) {
        throw ModelError(fmt::format("reduction scratch '{}' must be in local memory", param.portPath));
      }
      info.params.push_back(std::move(param));
    }
    KernelParam count;
    count.kind = ParamKind::Count;
    count.name = "count";
    info.params.push_back(std::move(count));
    kernels.push_back(std::move(info));
  }
  return kernels;
}

}  // namespace detail

namespace {

using detail::KernelInfo;
using detail::KernelParam;
using detail::ParamKind;

std::string declare(const KernelParam& p) {
  switch (p.kind) {
    case ParamKind::Value: return fmt::format("const {} {}", detail::c_type(p.type), p.name);
    case ParamKind::Partial: return fmt::format("__global double* {}", "partial");
    case ParamKind::Count: return "const ulong count";
    case ParamKind::Pointer: break;
  }
  const auto kw = address_space_keyword(p.space);
  const bool addConst = p.readOnly && p.space != AddressSpace::Constant;
  return fmt::format("{} {}{}* {}", kw, addConst ? "const " : "", detail::c_type(p.type), p.name);
}

// Scalar operand as seen inside the kernel body.
std::string scalar(const KernelInfo& k, std::string_view name) {
  for (const auto& p : k.params) {
    if (p.name == name) return p.kind == ParamKind::Value ? p.name : p.name + "[0]";
  }
  return std::string(name);
}

std::string body(const KernelInfo& k) {
  const std::string_view op = k.spec->name;
  const std::string head =
      "  const size_t gid = get_global_id(0) - get_global_offset(0);\n";
  const std::string guard = "  if (gid >= count) return;\n";
  const std::string index = "  const size_t i = get_global_id(0);\n";

  if (op == "spmv_csr") {
    return head + guard + index +
           "  double acc = 0.0;\n"
           "  for (int k = rowPtr[i]; k < rowPtr[i + 1]; ++k) {\n"
           "    acc += values[k] * x[colIdx[k]];\n"
           "  }\n"
           "  y[i] = acc;\n";
  }
  if (op == "dot_partial") {
    // every work-item must reach the barrier before the range guard
    return head +
           "  const size_t lid = get_local_id(0);\n"
           "  scratch[lid] = gid < count ? a[get_global_id(0)] * b[get_global_id(0)] : 0.0;\n"
           "  barrier(CLK_LOCAL_MEM_FENCE);\n" +
           guard +
           "  if (lid == 0) {\n"
           "    double acc = 0.0;\n"
           "    for (size_t j = 0; j < get_local_size(0); ++j) {\n"
           "      acc += scratch[j];\n"
           "    }\n"
           "    partial[get_group_id(0)] = acc;\n"
           "  }\n";
  }
  if (op == "axpy") return head + guard + index + fmt::format("  z[i] = y[i] + {} * x[i];\n", scalar(k, "alpha"));
  if (op == "scale") return head + guard + index + fmt::format("  z[i] = {} * x[i];\n", scalar(k, "alpha"));
  if (op == "copy") return head + guard + index + "  z[i] = x[i];\n";
  if (op == "sub") return head + guard + index + "  z[i] = a[i] - b[i];\n";
  throw UnknownIntrinsic(k.taskPath, std::string(op));
}

}  // namespace

GeneratedUnit generate_kernels(const Model& model, const std::vector<MemoryMap>& maps, const Schedule& schedule) {
  const Dataflow flow(model);
  const auto kernels = detail::describe_kernels(model, flow, maps, schedule);

  GeneratedUnit unit;
  unit.fileName = file_stem(model) + "_kernels.cl";
  auto& out = unit.contents;
  out = fmt::format("/* {}: generated from application {}, model digest {} */\n", unit.fileName,
                    model.applicationRoot, model_digest(model));
  if (kernels.empty()) return unit;

  out += "\n#pragma OPENCL EXTENSION cl_khr_fp64 : enable\n";
  for (const auto& k : kernels) {
    out += fmt::format("\n/* {}: {} */\n", k.taskPath, k.spec->name);
    out += fmt::format("__kernel void {}(\n", k.name);
    for (std::size_t i = 0; i < k.params.size(); ++i) {
      out += "    " + declare(k.params[i]) + (i + 1 < k.params.size() ? ",\n" : ")\n");
    }
    out += "{\n" + body(k) + "}\n";
  }
  return unit;
}

}  // namespace gmodel
