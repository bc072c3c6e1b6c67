#include "kgsplit/model.hpp"

#include <string>

#include "kgsplit/errors.hpp"

namespace kgsplit {

void ModelParams::validate() const {
  if (!std::isfinite(m) || !std::isfinite(lambda)) {
    throw ContractViolation("ModelParams: m and lambda must be finite");
  }
  if (m < 0.0) {
    throw ContractViolation("ModelParams: m must be nonnegative, got " + std::to_string(m));
  }
}

std::string_view to_string(ZeroModePolicy policy) {
  switch (policy) {
    case ZeroModePolicy::DropZeroMode:
      return "drop-zero-mode";
    case ZeroModePolicy::Strict:
      return "strict";
  }
  return "unknown";
}

ZeroModePolicy parse_zero_mode_policy(std::string_view text) {
  if (text == "drop-zero-mode") return ZeroModePolicy::DropZeroMode;
  if (text == "strict") return ZeroModePolicy::Strict;
  throw ConfigError("unknown zero-mode policy '" + std::string(text) + "'");
}

}  // namespace kgsplit
