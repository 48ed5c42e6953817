// Deterministic initial-data generation: seeded spectral profiles with the
// data norm ||u0||_{H1} + ||u1||_{L2} scaled exactly to a requested
// amplitude.

#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>

#include "liewave/fourier.hpp"

namespace liewave {

enum class DataProfile { Zero, SingleMode, Random };

const char* data_profile_name(DataProfile profile);
DataProfile data_profile_from_name(std::string_view name);

struct DataSpec {
  std::uint64_t seed = 0;
  DataProfile profile = DataProfile::Random;
  // Target for ||u0||_{H1} + ||u1||_{L2}; 0 leaves the raw draw unscaled.
  double amplitude = 1.0;
  // Coefficient standard deviation decays like (1 + lambda^2)^{-r/2}.
  double decay_exponent = 2.0;
  // SingleMode: the populated mode (level in [0] for SU2Central).
  std::array<int, 3> mode_index{1, 0, 0};
  // If set, the u0 coefficient of the zero mode is pinned to this value
  // (before amplitude scaling), guaranteeing zero-mode content.
  std::optional<double> zero_mode;
};

// Both components are deterministic in (seed, basis).  Random draws are
// Gaussian with Hermitian symmetry enforced mode-pair-wise, so synthesized
// samples are real.  SingleMode populates u0 with a real cosine-type
// combination of the requested mode and leaves u1 = 0.
std::pair<SpectralField, SpectralField> generate_data(
    const DataSpec& spec, const std::shared_ptr<const ModeBasis>& basis);

// A single random real field with spectral decay exponent r; used for
// norm-inequality ensembles.
SpectralField random_field(std::uint64_t seed, double decay_exponent,
                           const std::shared_ptr<const ModeBasis>& basis);

}  // namespace liewave
