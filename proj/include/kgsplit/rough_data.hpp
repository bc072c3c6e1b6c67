#pragma once

#include <cstdint>
#include <string_view>
#include <utility>

#include "kgsplit/field.hpp"
#include "kgsplit/model.hpp"
#include "kgsplit/schemes.hpp"

namespace kgsplit {

/// Random initial data with power-law spectrum
///   u0_k = <k>^{-s - d/2 - epsilon} (f_k + i g_k),   f_k, g_k ~ U[0, 1),
/// rescaled so that ||u0||_{H^norm_index} = 1.
struct RoughDataSpec {
  double s = 1.0;
  double epsilon = 0.0;
  double norm_index = 0.5;
  std::uint64_t seed = 0;
  TorusGrid grid{{64, 64}};
  ModelParams params;
};

/// Name of the random source recorded in manifests.
inline constexpr std::string_view kRngName = "mt19937_64/u53";

/// Uniform double in [0, 1) from the top 53 bits of one mt19937_64 output.
/// std::mt19937_64 is specified bit-exactly by the standard, so the stream
/// is identical on every platform.
double uniform_u53(std::uint64_t raw) noexcept;

/// Draws f_k then g_k for every wavevector, visiting the lattice in
/// lexicographic order of (k_1, ..., k_d) with each k_j ascending from
/// -N_j/2 to N_j/2 - 1 (k_d varies fastest).
StateU generate(const RoughDataSpec& spec);

/// u = z0 + i <grad>^{-1} z1. Both inputs must be real in physical space.
StateU u_from_z(const SpectralField& z0, const SpectralField& z1,
                const ModelParams& params);

/// (z, z_t) = (Re u, <grad> Im u), both physical and real.
std::pair<SpectralField, SpectralField> z_from_u(const StateU& state);

}  // namespace kgsplit
