#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmodel/metamodel.hpp"

namespace gmodel::testing {

struct Mutation {
  std::string description;
  Model model;
  /// Diagnostic paths that count as pointing at the mutated element: the
  /// path itself or anything below it.
  std::vector<std::string> loci;
};

/// Applies one random single-field change that breaks exactly one
/// structural rule of `base` (which must conform).
Mutation mutate_one_field(const Model& base, std::uint64_t seed);

bool is_localized(const std::vector<Diagnostic>& diagnostics, const std::vector<std::string>& loci);

}  // namespace gmodel::testing
