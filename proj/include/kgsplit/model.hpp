#pragma once

#include <cmath>
#include <string>
#include <string_view>

namespace kgsplit {

/// Treatment of the k = 0 mode of <grad>^alpha when m = 0 (the symbol
/// |k|^alpha is undefined there for alpha < 0). For m > 0 the zero mode is
/// always included with factor m^(alpha/2).
enum class ZeroModePolicy {
  DropZeroMode,  ///< zero mode multiplied by 0 (sum over k != 0)
  Strict,        ///< SingularOperator if the zero mode is nonzero and alpha < 0
};

/// Parameters of z_tt = Lap z - m z + lambda z^3.
struct ModelParams {
  double m = 1.0;
  double lambda = -1.0;
  ZeroModePolicy zero_mode = ZeroModePolicy::DropZeroMode;

  /// Throws ContractViolation unless m >= 0 and both values are finite.
  void validate() const;
};

/// The Japanese bracket symbol (m + |k|^2)^(alpha/2).
struct BracketSymbol {
  double m;
  double exponent;

  double operator()(double k_squared) const {
    return std::pow(m + k_squared, exponent / 2.0);
  }
  bool singular_at_zero() const { return m == 0.0 && exponent < 0.0; }
};

std::string_view to_string(ZeroModePolicy policy);
ZeroModePolicy parse_zero_mode_policy(std::string_view text);

}  // namespace kgsplit
