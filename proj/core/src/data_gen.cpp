#include "liewave/data_gen.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace liewave {

const char* data_profile_name(DataProfile profile) {
  switch (profile) {
    case DataProfile::Zero:
      return "zero";
    case DataProfile::SingleMode:
      return "single_mode";
    case DataProfile::Random:
      return "random";
  }
  throw std::logic_error("unknown data profile");
}

DataProfile data_profile_from_name(std::string_view name) {
  if (name == "zero") return DataProfile::Zero;
  if (name == "single_mode") return DataProfile::SingleMode;
  if (name == "random") return DataProfile::Random;
  throw std::invalid_argument("unknown data profile '" + std::string(name) +
                              "' (expected zero|single_mode|random)");
}

namespace {

// Portable Gaussian stream: mt19937_64 + Box-Muller, so identical seeds give
// identical draws on every platform (std::normal_distribution does not
// promise that).
class GaussStream {
 public:
  explicit GaussStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log() finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  double uniform() { return (engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

bool is_canonical_torus_index(const std::array<int, 3>& k) {
  const std::array<int, 3> neg{-k[0], -k[1], -k[2]};
  return !(k < neg);  // zero mode and the lexicographically larger half
}

// Hermitian-symmetric Gaussian draw with per-mode standard deviation
// (1 + lambda^2)^{-r/2}; consumed in enumeration order so the stream is
// reproducible.
void fill_random(SpectralField& field, GaussStream& gauss,
                 double decay_exponent) {
  const ModeBasis& basis = field.basis();
  const bool torus = basis.group().is_torus();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const Mode& mode = basis.mode(i);
    const double sigma =
        std::pow(1.0 + mode.eigenvalue_sq, -decay_exponent / 2.0);
    if (!torus) {
      field[i] = {sigma * gauss.next(), 0.0};
      continue;
    }
    if (!is_canonical_torus_index(mode.index)) continue;
    if (i == basis.zero_mode()) {
      field[i] = {sigma * gauss.next(), 0.0};
      continue;
    }
    const std::complex<double> z{gauss.next() / std::numbers::sqrt2,
                                 gauss.next() / std::numbers::sqrt2};
    field[i] = sigma * z;
    field[basis.conjugate_position(i)] = sigma * std::conj(z);
  }
}

}  // namespace

SpectralField random_field(std::uint64_t seed, double decay_exponent,
                           const std::shared_ptr<const ModeBasis>& basis) {
  GaussStream gauss(seed);
  SpectralField field(basis);
  fill_random(field, gauss, decay_exponent);
  return field;
}

std::pair<SpectralField, SpectralField> generate_data(
    const DataSpec& spec, const std::shared_ptr<const ModeBasis>& basis) {
  if (spec.amplitude < 0.0)
    throw std::invalid_argument("amplitude must be >= 0");
  SpectralField u0(basis);
  SpectralField u1(basis);

  switch (spec.profile) {
    case DataProfile::Zero:
      break;
    case DataProfile::SingleMode: {
      const std::size_t i = basis->position(spec.mode_index);
      if (basis->group().is_torus() && i != basis->zero_mode()) {
        u0[i] = {0.5, 0.0};
        u0[basis->conjugate_position(i)] = {0.5, 0.0};  // cos(k.x)
      } else {
        u0[i] = {1.0, 0.0};
      }
      break;
    }
    case DataProfile::Random: {
      GaussStream gauss(spec.seed);
      fill_random(u0, gauss, spec.decay_exponent);
      fill_random(u1, gauss, spec.decay_exponent);
      break;
    }
  }

  if (spec.zero_mode)
    u0[basis->zero_mode()] = {*spec.zero_mode, 0.0};

  if (spec.amplitude > 0.0) {
    const double norm = sobolev_norm(u0, 1.0) + plancherel_l2_norm(u1);
    if (norm > 0.0) {
      const double s = spec.amplitude / norm;
      u0 = s * u0;
      u1 = s * u1;
    }
  }
  return {std::move(u0), std::move(u1)};
}

}  // namespace liewave
