#include <doctest.h>

#include <regex>

#include "gmodel/codegen.hpp"
#include "gmodel/error.hpp"
#include "support/codegen_scan.hpp"
#include "support/fixtures.hpp"
#include "support/model_gen.hpp"

using namespace gmodel;
using namespace gmodel::testing;

namespace {

struct Generated {
  GeneratedUnit kernels;
  GeneratedUnit host;
};

Generated generate(const Model& m, int devices) {
  const auto maps = build_memory_maps(m);
  const auto s = build_schedule(m, devices);
  return {generate_kernels(m, maps, s), generate_host(m, maps, s, devices)};
}

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

const char* kCopyApp = R"(application App {
  size N = 100
  component Copy {
    port x in float64 [N]
    port z out float64 [N]
    repeat [N]
    deploy copy
  }
  component App {
    port a in float64 [N]
    port r out float64 [N]
    part k : Copy
    connect a -> k.x
    connect k.z -> r
  }
}
)";

}  // namespace

TEST_CASE("spmv kernel signature") {
  const auto g = generate(load_cg_model(), 1);
  CHECK(g.kernels.fileName == "cg_kernels.cl");
  CHECK(g.host.fileName == "cg_host.c");
  const auto& k = g.kernels.contents;
  const auto at = k.find("__kernel void k_spmv(");
  REQUIRE(at != std::string::npos);
  const auto sig = k.substr(at, k.find('{', at) - at);
  CHECK(sig.find("__global const double* values") != std::string::npos);
  CHECK(sig.find("__global const int* rowPtr") != std::string::npos);
  CHECK(sig.find("__global double* y") != std::string::npos);
  CHECK(sig.find("const ulong count") != std::string::npos);
  CHECK(count_of(k, "if (gid >= count) return;") == count_of(k, "__kernel void"));
}

TEST_CASE("one kernel per device task") {
  const auto m = load_cg_model();
  int deviceTasks = 0;
  for (const auto& link : m.allocations) deviceTasks += link.kind == AllocKind::Task && link.target == "device.c";
  const auto g = generate(m, 2);
  const auto kernels = scan_kernels(g.kernels.contents);
  CHECK(static_cast<int>(kernels.size()) == deviceTasks);
  CHECK(kernels.front().name == "k_initr");
  for (const auto& name : scan_created_kernels(g.host.contents)) {
    CHECK(std::any_of(kernels.begin(), kernels.end(), [&](const ScannedKernel& k) { return k.name == name; }));
  }
  CHECK(scan_created_kernels(g.host.contents).size() == kernels.size());
}

TEST_CASE("private scalars are passed by value") {
  const auto g = generate(load_cg_model(), 1);
  const auto at = g.kernels.contents.find("__kernel void k_updx(");
  REQUIRE(at != std::string::npos);
  CHECK(g.kernels.contents.find("    const double alpha,", at) != std::string::npos);
  CHECK(g.kernels.contents.find("__local double* scratch") != std::string::npos);
}

TEST_CASE("address-space keywords follow the memory maps") {
  const auto m = load_cg_model();
  const auto maps = build_memory_maps(m);
  const auto s = build_schedule(m, 4);
  CHECK(qualifier_mismatches(m, maps, s, generate_kernels(m, maps, s).contents).empty());
}

TEST_CASE("constant-space parameter") {
  const auto m = small_model(kCopyApp, "allocate task k onto device.cu\nallocate data k.x onto device.cmem\n"
                                       "allocate data k.z onto device.global\n");
  REQUIRE(validate_conformance(m).empty());
  const auto g = generate(m, 1);
  CHECK(g.kernels.contents.find("__constant double* x") != std::string::npos);
  CHECK(g.host.contents.find("clCreateBuffer(context, CL_MEM_READ_ONLY") != std::string::npos);
  const auto maps = build_memory_maps(m);
  CHECK(qualifier_mismatches(m, maps, build_schedule(m, 1), g.kernels.contents).empty());
}

TEST_CASE("empty schedule gives the header only") {
  const auto m = load_cg_model();
  const auto unit = generate_kernels(m, build_memory_maps(m), Schedule{});
  CHECK(count_of(unit.contents, "\n") == 1);
  CHECK(unit.contents.rfind("/* cg_kernels.cl: generated from application CG, model digest ", 0) == 0);
  CHECK(unit.contents.find(model_digest(m)) != std::string::npos);
}

TEST_CASE("one enqueue per step on one device") {
  const auto g = generate(load_cg_model(), 1);
  const auto enqueues = scan_enqueues(g.host.contents);
  CHECK(enqueues.size() == 11);
  for (const auto& [kernel, calls] : enqueues) {
    INFO(kernel);
    REQUIRE(calls.size() == 1);
    CHECK(calls[0].offset == 0);
    CHECK(calls[0].count == 132651);
    CHECK(calls[0].globalSize == 132656);
    CHECK(calls[0].localSize == 8);
  }
  CHECK(count_of(g.host.contents, "while (iter_") == 1);
}

TEST_CASE("four devices split every step") {
  const auto g = generate(load_cg_model(), 4);
  const auto enqueues = scan_enqueues(g.host.contents);
  for (const auto& [kernel, calls] : enqueues) {
    INFO(kernel);
    REQUIRE(calls.size() == 4);
    std::vector<std::int64_t> offsets;
    for (std::size_t d = 0; d < calls.size(); ++d) {
      CHECK(calls[d].device == static_cast<int>(d));
      offsets.push_back(calls[d].offset);
    }
    CHECK(offsets == std::vector<std::int64_t>{0, 33163, 66326, 99489});
    CHECK(calls[3].count == 33162);
  }
  CHECK(g.host.contents.find("#define NUM_DEVICES 4") != std::string::npos);
}

TEST_CASE("straight-line host code without loops") {
  const auto m = small_model(kCopyApp, "allocate task k onto device.cu\nallocate data a onto device.global\n"
                                       "allocate data k.x onto device.global\nallocate data r onto device.global\n"
                                       "allocate data a onto host.ram\nallocate data r onto host.ram\n");
  REQUIRE(validate_conformance(m).empty());
  const auto g = generate(m, 2);
  CHECK(g.host.contents.find("while (iter_") == std::string::npos);
  CHECK(count_of(g.host.contents, "enqueue_range(queue[") == 2);
  CHECK(g.host.contents.find("int app_run(const char* kernelSource, const double* in_a, double* out_r)") !=
        std::string::npos);
}

TEST_CASE("generated text is well formed") {
  for (int devices : {1, 2, 4}) {
    const auto g = generate(load_cg_model(), devices);
    CHECK(balanced(g.kernels.contents));
    CHECK(balanced(g.host.contents));
    CHECK(bad_identifiers(g.kernels.contents).empty());
    CHECK(bad_identifiers(g.host.contents).empty());
  }
}

TEST_CASE("one buffer per device-side allocation") {
  const auto m = load_cg_model();
  const auto maps = build_memory_maps(m);
  const auto g = generate(m, 4);
  CHECK(count_buffer_creations(g.host.contents) == count_device_buffers(maps));
  CHECK(count_device_buffers(maps) == 9);
}

TEST_CASE("generation is deterministic") {
  const auto a = generate(load_cg_model(), 4);
  const auto b = generate(load_cg_model(), 4);
  CHECK(a.kernels == b.kernels);
  CHECK(a.host == b.host);
}

TEST_CASE("device count must match the schedule") {
  const auto m = load_cg_model();
  const auto maps = build_memory_maps(m);
  CHECK_THROWS_AS(generate_host(m, maps, build_schedule(m, 2), 4), ModelError);
}

TEST_CASE("unknown intrinsic in a hand-built schedule") {
  auto m = load_cg_model();
  const auto maps = build_memory_maps(m);
  const auto s = build_schedule(m, 1);
  for (auto& c : m.applicationComponents) {
    if (c.name == "Copy") c.elementaryOp = "fft";
  }
  CHECK_THROWS_AS(generate_kernels(m, maps, s), UnknownIntrinsic);
}

TEST_CASE("kernel names are unique") {
  Schedule s;
  s.steps.push_back(Step{DeviceStep{"a.k", "copy", {}}});
  s.steps.push_back(Step{DeviceStep{"b.k", "copy", {}}});
  s.steps.push_back(Step{DeviceStep{"a.k", "copy", {}}});
  const auto names = kernel_names(s);
  REQUIRE(names.size() == 2);
  CHECK(names[0].second == "k_k");
  CHECK(names[1].second == "k_k_2");
}

TEST_CASE("keywords per address space") {
  CHECK(address_space_keyword(AddressSpace::Global) == "__global");
  CHECK(address_space_keyword(AddressSpace::Constant) == "__constant");
  CHECK(address_space_keyword(AddressSpace::Local) == "__local");
  CHECK(address_space_keyword(AddressSpace::Private).empty());
}

TEST_CASE("outputs match the golden files") {
  const auto m = load_cg_model();
  const auto g = generate(m, 4);
  CHECK(g.kernels.contents == read_text(source_path("tests/golden/cg_kernels.cl")));
  CHECK(g.host.contents == read_text(source_path("tests/golden/cg_host_d4.c")));
  CHECK(emit_memory_map_report(build_memory_maps(m)) == read_text(source_path("tests/golden/cg_memmap.txt")));
}
