#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmodel/memmap.hpp"
#include "gmodel/metamodel.hpp"

namespace gmodel::testing {

/// Conformant model with a host plus one GPU-like device, a random set of
/// intrinsic leaf tasks (optionally grouped one level down), random extra
/// root ports and random data/task allocations. Memory capacities are set
/// at random when `capacities` is true, so packing may overflow.
Model random_model(std::uint64_t seed, bool capacities = true);

/// Memories of the random platform: host.ram, gpu.global, gpu.c.local,
/// gpu.c.p.priv and, when present, gpu.cmem.
std::vector<std::string> random_model_memories(const Model& model);

/// Copy of `model` with every memory capacity removed.
Model without_capacities(Model model);

/// Checks non-overlap, alignment, the padding bound and sharing of
/// directly connected ports. Empty string when all hold.
std::string check_memory_maps(const Model& model, const std::vector<MemoryMap>& maps);

/// Loads models/cg.gmodel from the source tree.
Model load_cg_model();
std::string source_path(const std::string& relative);
std::string read_text(const std::string& path);

}  // namespace gmodel::testing
