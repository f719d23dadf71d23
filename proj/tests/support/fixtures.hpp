#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "gmodel/dsl.hpp"

namespace gmodel::testing {

inline Model parse_or_throw(std::string_view text) {
  auto parsed = parse_model(text);
  if (!parsed) throw std::runtime_error(parsed.errors().front().message());
  return std::move(parsed).model();
}

// Host with two cores and RAM, plus a device of 16 compute units with 8
// processing elements each, local/global/constant/private memories.
inline constexpr std::string_view kSmallPlatform = R"(platform Sys {
  component Pe : hwProcessor {
    memory priv : hwMemory role=devicePrivate
  }
  component Cu : hwProcessor {
    processor pe : Pe shaped [8]
    memory local : hwMemory role=deviceLocal capacity=16384
  }
  component Dev {
    processor cu : Cu shaped [16]
    memory global : hwMemory role=deviceGlobal
    memory cmem : hwMemory role=deviceConstant
  }
  component Host {
    processor cpu : hwProcessor shaped [2]
    memory ram : hwMemory role=hostRam
  }
  component Sys {
    part host : Host
    part device : Dev
  }
}
)";

inline Model small_model(std::string_view application, std::string_view allocations = "") {
  return parse_or_throw(std::string(kSmallPlatform) + std::string(application) + std::string(allocations));
}

}  // namespace gmodel::testing
