#pragma once

#include <span>
#include <string_view>

#include "gmodel/metamodel.hpp"

namespace gmodel {

/// Port a leaf task must declare to deploy an intrinsic.
struct IntrinsicPort {
  std::string_view name;
  Direction direction;
  DataType type;
  /// Scalar ports must have shape total 1.
  bool scalar = false;
};

/// Deployment table entry: the fixed semantics behind `deploy <name>`.
struct IntrinsicSpec {
  std::string_view name;
  std::span<const IntrinsicPort> ports;
  /// Port whose length defines the iteration space when the task has no
  /// repetition space of its own.
  std::string_view principal;
  bool hostOnly = false;
  /// Produces a scalar by summing per-device partials on the host.
  bool reduction = false;
};

/// Looks up an intrinsic by name; nullptr when unknown.
const IntrinsicSpec* find_intrinsic(std::string_view name);
std::span<const IntrinsicSpec> intrinsic_table();

}  // namespace gmodel
