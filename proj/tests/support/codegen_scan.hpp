#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmodel/memmap.hpp"
#include "gmodel/partition.hpp"

namespace gmodel::testing {

struct ScannedParam {
  std::string keyword;  // __global, __constant, __local or empty
  std::string name;
};

struct ScannedKernel {
  std::string name;
  std::vector<ScannedParam> params;
};

/// `__kernel void name(...)` signatures in order of appearance.
std::vector<ScannedKernel> scan_kernels(const std::string& text);

struct ScannedEnqueue {
  int device = 0;
  std::int64_t offset = 0;
  std::int64_t count = 0;
  std::int64_t globalSize = 0;
  std::int64_t localSize = 0;
};

/// enqueue_range calls grouped by kernel name.
std::map<std::string, std::vector<ScannedEnqueue>> scan_enqueues(const std::string& host);

/// Kernel names passed to clCreateKernel.
std::vector<std::string> scan_created_kernels(const std::string& host);

/// Number of `buf_* = clCreateBuffer(` statements.
int count_buffer_creations(const std::string& host);

/// Braces, brackets and parentheses balance outside comments.
bool balanced(const std::string& text);

/// Words that look like identifiers but are malformed (e.g. `9abc`).
std::vector<std::string> bad_identifiers(const std::string& text);

/// Compares each kernel parameter's address-space keyword with the
/// qualifier of the DataAllocate backing its port. Returns mismatches.
std::vector<std::string> qualifier_mismatches(const Model& model, const std::vector<MemoryMap>& maps,
                                              const Schedule& schedule, const std::string& kernels);

/// Device-side DataAllocates in the global or constant space.
int count_device_buffers(const std::vector<MemoryMap>& maps);

}  // namespace gmodel::testing
