#include <algorithm>
#include <map>
#include <set>

#include <fmt/format.h>

#include "codegen_common.hpp"
#include "gmodel/error.hpp"

namespace gmodel {
namespace {

using detail::KernelInfo;
using detail::KernelParam;
using detail::ParamKind;

struct Buffer {
  std::string name;
  const DataAllocate* alloc = nullptr;
  std::size_t storageClass = 0;
};

class HostWriter {
public:
  HostWriter(const Model& model, const std::vector<MemoryMap>& maps, const Schedule& schedule, int devices)
      : model_(model), schedule_(schedule), devices_(devices), flow_(model),
        kernels_(detail::describe_kernels(model, flow_, maps, schedule)) {
    for (const auto& map : maps) {
      if (!is_device_role(map.role)) continue;
      for (const auto& a : map.dataAllocations) {
        if (a.spaceAddress != AddressSpace::Global && a.spaceAddress != AddressSpace::Constant) continue;
        if (a.ports.empty()) continue;
        const auto cls = flow_.class_of(a.ports.front());
        if (!cls) continue;
        buffers_.push_back(Buffer{"buf_" + a.name, &a, *cls});
        bufferOf_.emplace(*cls, buffers_.size() - 1);
      }
    }
    for (const auto& k : kernels_) {
      kernelOf_[k.taskPath] = &k;
      for (const auto& p : k.params) {
        if (p.kind == ParamKind::Pointer && !p.readOnly && p.space != AddressSpace::Local) {
          deviceWritten_.insert(p.storageClass);
        }
        if (p.kind == ParamKind::Value) scalar(p.portPath);
      }
    }
    collect_scalars(schedule.steps);
  }

  std::string run() {
    const auto* root = model_.application_root();
    if (!root) throw ModelError("application root is not declared");
    const auto stem = file_stem(model_);

    out_ = fmt::format("/* {}_host.c: generated from application {}, model digest {} */\n", stem,
                       model_.applicationRoot, model_digest(model_));
    out_ += "#include <math.h>\n#include <stdlib.h>\n\n#include <CL/cl.h>\n\n";
    out_ += fmt::format("#define NUM_DEVICES {}\n\n", devices_);
    out_ += "#define CHECK(call) \\\n"
            "  do { \\\n"
            "    if ((err = (call)) != CL_SUCCESS) { \\\n"
            "      status = -1; \\\n"
            "      goto cleanup; \\\n"
            "    } \\\n"
            "  } while (0)\n\n";
    helpers();

    std::vector<std::string> args{"const char* kernelSource"};
    for (const auto& port : root->ports) {
      const auto t = detail::c_type(port.type);
      switch (port.direction) {
        case Direction::In: args.push_back(fmt::format("const {}* in_{}", t, port.name)); break;
        case Direction::Out: args.push_back(fmt::format("{}* out_{}", t, port.name)); break;
        case Direction::InOut: args.push_back(fmt::format("{}* io_{}", t, port.name)); break;
      }
    }
    out_ += fmt::format("int {}_run({})\n{{\n", stem, fmt::join(args, ", "));
    declarations();
    setup(*root);
    line(1, "/* schedule */");
    steps(schedule_.steps, 1);
    if (schedule_.steps.empty() || !std::holds_alternative<DeviceStep>(schedule_.steps.back().node)) {
      line(1, "finish_all(queue);");
    }
    outputs(*root);
    cleanup();
    out_ += "}\n";
    return out_;
  }

private:
  void line(int depth, std::string_view text) {
    out_.append(static_cast<std::size_t>(depth) * 2, ' ');
    out_ += text;
    out_ += '\n';
  }

  std::size_t class_of(const std::string& portPath) const {
    auto cls = flow_.class_of(portPath);
    if (!cls) throw ModelError(fmt::format("port '{}' not found", portPath));
    return *cls;
  }

  void scalar(const std::string& portPath) {
    const auto cls = class_of(portPath);
    if (std::find(scalars_.begin(), scalars_.end(), cls) == scalars_.end()) scalars_.push_back(cls);
  }

  std::string host_var(std::size_t cls) const { return "h_" + flow_.class_name(cls); }

  DataType class_type(std::size_t cls) const {
    return flow_.ports()[flow_.representative(cls)].port->type;
  }

  const Buffer* buffer(std::size_t cls) const {
    auto it = bufferOf_.find(cls);
    return it == bufferOf_.end() ? nullptr : &buffers_[it->second];
  }

  void collect_scalars(const std::vector<Step>& list) {
    for (const auto& step : list) {
      if (const auto* host = std::get_if<HostOp>(&step.node)) {
        const auto* task = flow_.find_task(host->taskPath);
        if (!task || !task->type) throw ModelError(fmt::format("schedule names unknown task '{}'", host->taskPath));
        for (const auto& port : task->type->ports) {
          if (shape_total(port.shape) != 1) {
            throw ModelError(fmt::format("host task '{}' has array port '{}'", host->taskPath, port.name));
          }
          scalar(join_path(host->taskPath, port.name));
        }
      } else if (const auto* dev = std::get_if<DeviceStep>(&step.node)) {
        if (const auto* k = kernelOf_.at(dev->taskPath); k->spec->reduction) {
          scalar(join_path(dev->taskPath, "s"));
        }
      } else if (const auto* loop = std::get_if<LoopStep>(&step.node)) {
        scalar(loop->conditionPath);
        collect_scalars(loop->body);
      }
    }
  }

  void helpers() {
    out_ += "static cl_int enqueue_range(cl_command_queue queue, cl_kernel kernel, cl_uint countArg, cl_int partialArg,\n"
            "                            cl_mem partial, size_t offset, size_t count, size_t globalSize,\n"
            "                            size_t localSize)\n"
            "{\n"
            "  cl_ulong n = (cl_ulong)count;\n"
            "  cl_int err = clSetKernelArg(kernel, countArg, sizeof(cl_ulong), &n);\n"
            "  if (err == CL_SUCCESS && partialArg >= 0) {\n"
            "    err = clSetKernelArg(kernel, (cl_uint)partialArg, sizeof(cl_mem), &partial);\n"
            "  }\n"
            "  if (err != CL_SUCCESS) return err;\n"
            "  return clEnqueueNDRangeKernel(queue, kernel, 1, &offset, &globalSize, &localSize, 0, NULL, NULL);\n"
            "}\n\n";
    if (has_reduction()) {
      out_ += "static double reduce_partials(cl_command_queue queue, cl_mem partial, size_t groups, double* staging)\n"
              "{\n"
              "  double sum = 0.0;\n"
              "  clEnqueueReadBuffer(queue, partial, CL_TRUE, 0, groups * sizeof(double), staging, 0, NULL, NULL);\n"
              "  for (size_t g = 0; g < groups; ++g) sum += staging[g];\n"
              "  return sum;\n"
              "}\n\n";
    }
    out_ += "static void finish_all(cl_command_queue* queue)\n"
            "{\n"
            "  for (int d = 0; d < NUM_DEVICES; ++d) clFinish(queue[d]);\n"
            "}\n\n";
  }

  bool has_reduction() const {
    return std::any_of(kernels_.begin(), kernels_.end(), [](const KernelInfo& k) { return k.spec->reduction; });
  }

  // Work-groups per device of a reduction kernel.
  std::vector<std::int64_t> groups(const KernelInfo& k) const {
    for (const auto* step : detail::device_steps(schedule_)) {
      if (step->taskPath != k.taskPath) continue;
      std::vector<std::int64_t> g;
      for (const auto& launch : step->launches) g.push_back(launch.globalSize / launch.localSize);
      return g;
    }
    return {};
  }

  void declarations() {
    line(1, "int status = 0;");
    line(1, "cl_int err = CL_SUCCESS;");
    line(1, "cl_platform_id platform = NULL;");
    line(1, "cl_device_id devices[NUM_DEVICES];");
    line(1, "cl_uint found = 0;");
    line(1, "cl_context context = NULL;");
    line(1, "cl_command_queue queue[NUM_DEVICES] = {NULL};");
    line(1, "cl_program program = NULL;");
    for (const auto& k : kernels_) line(1, fmt::format("cl_kernel {} = NULL;", k.name));
    for (const auto& b : buffers_) line(1, fmt::format("cl_mem {} = NULL;", b.name));
    for (const auto& k : kernels_) {
      if (k.spec->reduction) line(1, fmt::format("cl_mem red_{}[NUM_DEVICES] = {{NULL}};", k.name));
    }
    if (has_reduction()) line(1, "double* staging = NULL;");
    line(1, "void* zeros = NULL;");
    for (auto cls : scalars_) {
      line(1, fmt::format("{} {} = 0;", detail::c_type(class_type(cls)), host_var(cls)));
    }
    out_ += '\n';
  }

  std::optional<std::string> root_source(const Component& root, std::size_t cls) const {
    for (const auto& port : root.ports) {
      if (port.direction == Direction::Out) continue;
      if (flow_.class_of(port.name) == cls) {
        return (port.direction == Direction::In ? "in_" : "io_") + port.name;
      }
    }
    return std::nullopt;
  }

  void setup(const Component& root) {
    line(1, "CHECK(clGetPlatformIDs(1, &platform, NULL));");
    line(1, "CHECK(clGetDeviceIDs(platform, CL_DEVICE_TYPE_GPU, NUM_DEVICES, devices, &found));");
    line(1, "if (found < NUM_DEVICES) {");
    line(2, "status = -1;");
    line(2, "goto cleanup;");
    line(1, "}");
    line(1, "context = clCreateContext(NULL, NUM_DEVICES, devices, NULL, NULL, &err);");
    line(1, "CHECK(err);");
    line(1, "for (int d = 0; d < NUM_DEVICES; ++d) {");
    line(2, "queue[d] = clCreateCommandQueue(context, devices[d], 0, &err);");
    line(2, "CHECK(err);");
    line(1, "}");
    line(1, "program = clCreateProgramWithSource(context, 1, &kernelSource, NULL, &err);");
    line(1, "CHECK(err);");
    line(1, "CHECK(clBuildProgram(program, NUM_DEVICES, devices, NULL, NULL, NULL));");
    for (const auto& k : kernels_) {
      line(1, fmt::format("{} = clCreateKernel(program, \"{}\", &err);", k.name, k.name));
      line(1, "CHECK(err);");
    }
    out_ += '\n';

    line(1, "/* device buffers */");
    std::int64_t largest = 0;
    for (const auto& b : buffers_) {
      const auto bytes = allocation_size_bytes(*b.alloc);
      largest = std::max(largest, bytes);
      const auto* flags = b.alloc->spaceAddress == AddressSpace::Constant ? "CL_MEM_READ_ONLY" : "CL_MEM_READ_WRITE";
      line(1, fmt::format("{} = clCreateBuffer(context, {}, {}, NULL, &err);", b.name, flags, bytes));
      line(1, "CHECK(err);");
    }
    std::int64_t maxGroups = 0;
    for (const auto& k : kernels_) {
      if (!k.spec->reduction) continue;
      const auto g = groups(k);
      for (std::size_t d = 0; d < g.size(); ++d) {
        maxGroups = std::max(maxGroups, g[d]);
        line(1, fmt::format("red_{}[{}] = clCreateBuffer(context, CL_MEM_READ_WRITE, {}, NULL, &err);", k.name, d,
                            g[d] * 8));
        line(1, "CHECK(err);");
      }
    }
    if (has_reduction()) {
      line(1, fmt::format("staging = malloc({} * sizeof(double));", maxGroups));
      line(1, "if (!staging) {");
      line(2, "status = -1;");
      line(2, "goto cleanup;");
      line(1, "}");
    }
    out_ += '\n';

    line(1, "/* inputs */");
    line(1, fmt::format("zeros = calloc({}, 1);", std::max<std::int64_t>(largest, 1)));
    line(1, "if (!zeros) {");
    line(2, "status = -1;");
    line(2, "goto cleanup;");
    line(1, "}");
    for (const auto& b : buffers_) {
      const auto src = root_source(root, b.storageClass);
      line(1, fmt::format("CHECK(clEnqueueWriteBuffer(queue[0], {}, CL_TRUE, 0, {}, {}, 0, NULL, NULL));", b.name,
                          allocation_size_bytes(*b.alloc), src.value_or("zeros")));
    }
    for (auto cls : scalars_) {
      if (auto src = root_source(root, cls)) line(1, fmt::format("{} = {}[0];", host_var(cls), *src));
    }
    out_ += '\n';

    line(1, "/* fixed kernel arguments */");
    for (const auto& k : kernels_) {
      for (std::size_t i = 0; i < k.params.size(); ++i) {
        const auto& p = k.params[i];
        if (p.kind != ParamKind::Pointer) continue;
        if (p.space == AddressSpace::Local) {
          line(1, fmt::format("CHECK(clSetKernelArg({}, {}, {}, NULL));", k.name, i,
                              allocation_size_bytes(*p.alloc)));
        } else {
          line(1, fmt::format("CHECK(clSetKernelArg({}, {}, sizeof(cl_mem), &buf_{}));", k.name, i, p.alloc->name));
        }
      }
    }
    out_ += '\n';
  }

  // Host copy of a device-produced value before the host reads it.
  void fetch(std::size_t cls, int depth) {
    if (!deviceWritten_.count(cls)) return;
    if (const auto* b = buffer(cls)) {
      line(depth, fmt::format("CHECK(clEnqueueReadBuffer(queue[0], {}, CL_TRUE, 0, {}, &{}, 0, NULL, NULL));",
                              b->name, size_bytes(class_type(cls)), host_var(cls)));
    }
  }

  void publish(std::size_t cls, int depth) {
    if (const auto* b = buffer(cls)) {
      line(depth, fmt::format("CHECK(clEnqueueWriteBuffer(queue[0], {}, CL_TRUE, 0, {}, &{}, 0, NULL, NULL));",
                              b->name, size_bytes(class_type(cls)), host_var(cls)));
    }
  }

  void steps(const std::vector<Step>& list, int depth) {
    for (const auto& step : list) {
      if (const auto* dev = std::get_if<DeviceStep>(&step.node)) {
        device_step(*dev, depth);
      } else if (const auto* host = std::get_if<HostOp>(&step.node)) {
        host_op(*host, depth);
      } else {
        loop(std::get<LoopStep>(step.node), depth);
      }
    }
  }

  void device_step(const DeviceStep& step, int depth) {
    const auto& k = *kernelOf_.at(step.taskPath);
    line(depth, fmt::format("/* {}: {} */", step.taskPath, step.op));
    int countArg = 0;
    int partialArg = -1;
    for (std::size_t i = 0; i < k.params.size(); ++i) {
      const auto& p = k.params[i];
      if (p.kind == ParamKind::Count) countArg = static_cast<int>(i);
      if (p.kind == ParamKind::Partial) partialArg = static_cast<int>(i);
      if (p.kind == ParamKind::Value) {
        fetch(p.storageClass, depth);
        line(depth, fmt::format("CHECK(clSetKernelArg({}, {}, sizeof({}), &{}));", k.name, i,
                                detail::c_type(p.type), host_var(p.storageClass)));
      }
    }
    for (const auto& launch : step.launches) {
      const auto partial = partialArg >= 0 ? fmt::format("red_{}[{}]", k.name, launch.deviceIndex) : "NULL";
      line(depth, fmt::format("CHECK(enqueue_range(queue[{}], {}, {}, {}, {}, {}, {}, {}, {}));", launch.deviceIndex,
                              k.name, countArg, partialArg, partial, launch.range.offset, launch.range.count,
                              launch.globalSize, launch.localSize));
    }
    line(depth, "finish_all(queue);");
    if (k.spec->reduction) {
      const auto cls = class_of(join_path(step.taskPath, "s"));
      line(depth, fmt::format("{} = 0.0;", host_var(cls)));
      for (const auto& launch : step.launches) {
        line(depth, fmt::format("{} += reduce_partials(queue[{}], red_{}[{}], {}, staging);", host_var(cls),
                                launch.deviceIndex, k.name, launch.deviceIndex,
                                launch.globalSize / launch.localSize));
      }
      publish(cls, depth);
    }
  }

  void host_op(const HostOp& step, int depth) {
    line(depth, fmt::format("/* {}: {} (host) */", step.taskPath, step.op));
    const auto* task = flow_.find_task(step.taskPath);
    auto v = [&](std::string_view port) { return host_var(class_of(join_path(step.taskPath, port))); };
    for (const auto& port : task->type->ports) {
      if (can_read(port.direction)) fetch(class_of(join_path(step.taskPath, port.name)), depth);
    }

    std::string result;
    if (step.op == "ratio") {
      line(depth, fmt::format("if (!({} > 0.0)) {{", v("den")));
      line(depth + 1, "status = -2;");
      line(depth + 1, "goto cleanup;");
      line(depth, "}");
      line(depth, fmt::format("{} = {} / {};", v("q"), v("num"), v("den")));
      result = "q";
    } else if (step.op == "rel_norm") {
      line(depth, fmt::format("{} = {} > 0.0 ? sqrt({}) / sqrt({}) : 0.0;", v("r"), v("refsq"), v("sq"), v("refsq")));
      result = "r";
    } else if (step.op == "copy") {
      line(depth, fmt::format("{} = {};", v("z"), v("x")));
      result = "z";
    } else if (step.op == "scale") {
      line(depth, fmt::format("{} = {} * {};", v("z"), v("alpha"), v("x")));
      result = "z";
    } else if (step.op == "axpy") {
      line(depth, fmt::format("{} = {} + {} * {};", v("z"), v("y"), v("alpha"), v("x")));
      result = "z";
    } else if (step.op == "sub") {
      line(depth, fmt::format("{} = {} - {};", v("z"), v("a"), v("b")));
      result = "z";
    } else if (find_intrinsic(step.op)) {
      throw ModelError(fmt::format("intrinsic '{}' of task '{}' cannot run on the host", step.op, step.taskPath));
    } else {
      throw UnknownIntrinsic(step.taskPath, step.op);
    }
    publish(class_of(join_path(step.taskPath, result)), depth);
  }

  void loop(const LoopStep& step, int depth) {
    const auto counter = fmt::format("iter_{}", loops_++);
    const auto cond = class_of(step.conditionPath);
    line(depth, fmt::format("/* {}: until {} < {} */", step.loopPath.empty() ? model_.applicationRoot : step.loopPath,
                            step.conditionPath, step.tol));
    fetch(cond, depth);
    line(depth, fmt::format("long {} = 0;", counter));
    line(depth, fmt::format("while ({} < {} && {} > {}) {{", counter, step.maxIter, host_var(cond), step.tol));
    steps(step.body, depth + 1);
    fetch(cond, depth + 1);
    line(depth + 1, fmt::format("++{};", counter));
    line(depth, "}");
  }

  void outputs(const Component& root) {
    out_ += '\n';
    line(1, "/* outputs */");
    for (const auto& port : root.ports) {
      if (port.direction == Direction::In) continue;
      const auto cls = class_of(port.name);
      const auto dst = (port.direction == Direction::Out ? "out_" : "io_") + port.name;
      if (const auto* b = buffer(cls)) {
        line(1, fmt::format("CHECK(clEnqueueReadBuffer(queue[0], {}, CL_TRUE, 0, {}, {}, 0, NULL, NULL));", b->name,
                            allocation_size_bytes(*b->alloc), dst));
      } else if (std::find(scalars_.begin(), scalars_.end(), cls) != scalars_.end()) {
        line(1, fmt::format("{}[0] = {};", dst, host_var(cls)));
      } else {
        throw ModelError(fmt::format("output port '{}' has no device buffer or host value", port.name));
      }
    }
    out_ += '\n';
  }

  void cleanup() {
    out_ += "cleanup:\n";
    if (has_reduction()) line(1, "free(staging);");
    line(1, "free(zeros);");
    for (const auto& k : kernels_) {
      if (!k.spec->reduction) continue;
      line(1, "for (int d = 0; d < NUM_DEVICES; ++d) {");
      line(2, fmt::format("if (red_{0}[d]) clReleaseMemObject(red_{0}[d]);", k.name));
      line(1, "}");
    }
    for (const auto& b : buffers_) line(1, fmt::format("if ({0}) clReleaseMemObject({0});", b.name));
    for (const auto& k : kernels_) line(1, fmt::format("if ({0}) clReleaseKernel({0});", k.name));
    line(1, "if (program) clReleaseProgram(program);");
    line(1, "for (int d = 0; d < NUM_DEVICES; ++d) {");
    line(2, "if (queue[d]) clReleaseCommandQueue(queue[d]);");
    line(1, "}");
    line(1, "if (context) clReleaseContext(context);");
    line(1, "return status;");
  }

  const Model& model_;
  const Schedule& schedule_;
  int devices_;
  Dataflow flow_;
  std::vector<KernelInfo> kernels_;
  std::map<std::string, const KernelInfo*> kernelOf_;
  std::vector<Buffer> buffers_;
  std::map<std::size_t, std::size_t> bufferOf_;
  std::set<std::size_t> deviceWritten_;
  std::vector<std::size_t> scalars_;
  int loops_ = 0;
  std::string out_;
};

}  // namespace

GeneratedUnit generate_host(const Model& model, const std::vector<MemoryMap>& maps, const Schedule& schedule,
                            int deviceCount) {
  if (deviceCount < 1) throw std::invalid_argument("device count must be positive");
  if (deviceCount != schedule.deviceCount) {
    throw ModelError(fmt::format("schedule was built for {} devices, not {}", schedule.deviceCount, deviceCount));
  }
  HostWriter writer(model, maps, schedule, deviceCount);
  return GeneratedUnit{file_stem(model) + "_host.c", writer.run()};
}

}  // namespace gmodel
