#include "gmodel/intrinsics.hpp"

#include <array>

namespace gmodel {
namespace {

using D = Direction;
using T = DataType;

constexpr std::array kSpmvPorts{
    IntrinsicPort{"rowPtr", D::In, T::Int32},
    IntrinsicPort{"colIdx", D::In, T::Int32},
    IntrinsicPort{"values", D::In, T::Float64},
    IntrinsicPort{"x", D::In, T::Float64},
    IntrinsicPort{"y", D::Out, T::Float64},
};
constexpr std::array kDotPorts{
    IntrinsicPort{"a", D::In, T::Float64},
    IntrinsicPort{"b", D::In, T::Float64},
    IntrinsicPort{"scratch", D::InOut, T::Float64},
    IntrinsicPort{"s", D::Out, T::Float64, true},
};
constexpr std::array kAxpyPorts{
    IntrinsicPort{"alpha", D::In, T::Float64, true},
    IntrinsicPort{"x", D::In, T::Float64},
    IntrinsicPort{"y", D::In, T::Float64},
    IntrinsicPort{"z", D::Out, T::Float64},
};
constexpr std::array kScalePorts{
    IntrinsicPort{"alpha", D::In, T::Float64, true},
    IntrinsicPort{"x", D::In, T::Float64},
    IntrinsicPort{"z", D::Out, T::Float64},
};
constexpr std::array kCopyPorts{
    IntrinsicPort{"x", D::In, T::Float64},
    IntrinsicPort{"z", D::Out, T::Float64},
};
constexpr std::array kSubPorts{
    IntrinsicPort{"a", D::In, T::Float64},
    IntrinsicPort{"b", D::In, T::Float64},
    IntrinsicPort{"z", D::Out, T::Float64},
};
constexpr std::array kRatioPorts{
    IntrinsicPort{"num", D::In, T::Float64, true},
    IntrinsicPort{"den", D::In, T::Float64, true},
    IntrinsicPort{"q", D::Out, T::Float64, true},
};
constexpr std::array kRelNormPorts{
    IntrinsicPort{"sq", D::In, T::Float64, true},
    IntrinsicPort{"refsq", D::In, T::Float64, true},
    IntrinsicPort{"r", D::Out, T::Float64, true},
};

constexpr std::array kTable{
    IntrinsicSpec{"spmv_csr", kSpmvPorts, "y"},
    IntrinsicSpec{"dot_partial", kDotPorts, "a", false, true},
    IntrinsicSpec{"axpy", kAxpyPorts, "z"},
    IntrinsicSpec{"scale", kScalePorts, "z"},
    IntrinsicSpec{"copy", kCopyPorts, "z"},
    IntrinsicSpec{"sub", kSubPorts, "z"},
    IntrinsicSpec{"ratio", kRatioPorts, "q", true},
    IntrinsicSpec{"rel_norm", kRelNormPorts, "r", true},
};

}  // namespace

std::span<const IntrinsicSpec> intrinsic_table() { return kTable; }

const IntrinsicSpec* find_intrinsic(std::string_view name) {
  for (const auto& spec : kTable) {
    if (spec.name == name) return &spec;
  }
  return nullptr;
}

}  // namespace gmodel
