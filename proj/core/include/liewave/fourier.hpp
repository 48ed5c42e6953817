// Scalar-per-mode spectral fields, analysis/synthesis against quadrature
// grids, and Plancherel-based L2/Sobolev norms.
//
// Every operator applied downstream (Laplace-Beltrami, the mode propagators,
// the Duhamel multipliers) acts on each representation block as a scalar
// multiple of the identity, so a field is stored as one complex scalar per
// mode: the diagonal entry a of its (scalar-matrix) Fourier coefficient.
// With d the representation dimension,
//
//   f(x)            = sum_m  d_m a_m chi_m(x),
//   ||f||_{L2}^2    = sum_m  d_m^2 |a_m|^2,
//   ||f||_{Hdot^s}^2 = sum_m d_m^2 lambda_m^{2s} |a_m|^2.
//
// For tori d = 1 and a_m is the classical Fourier coefficient.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "liewave/groups.hpp"

namespace liewave {

class SpectralField {
 public:
  SpectralField() = default;
  explicit SpectralField(std::shared_ptr<const ModeBasis> basis);
  SpectralField(std::shared_ptr<const ModeBasis> basis,
                std::vector<std::complex<double>> coeffs);

  bool empty() const { return basis_ == nullptr; }
  const ModeBasis& basis() const { return *basis_; }
  const std::shared_ptr<const ModeBasis>& basis_ptr() const { return basis_; }
  const GroupSpec& group() const { return basis_->group(); }
  int truncation() const { return basis_->truncation(); }

  std::size_t size() const { return coeffs_.size(); }
  std::complex<double>& operator[](std::size_t i) { return coeffs_[i]; }
  const std::complex<double>& operator[](std::size_t i) const {
    return coeffs_[i];
  }
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  std::vector<std::complex<double>>& coeffs() { return coeffs_; }

 private:
  std::shared_ptr<const ModeBasis> basis_;
  std::vector<std::complex<double>> coeffs_;
};

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& f);

// Plancherel weight d^2 of one mode.
double plancherel_weight(const Mode& mode);

// sqrt(sum d^2 |a|^2); equals the quadrature L2 norm of the synthesized
// samples for band-limited fields.
double plancherel_l2_norm(const SpectralField& field);

// Homogeneous Sobolev seminorm sqrt(sum d^2 lambda^{2s} |a|^2) and the full
// norm ||f||_{L2} + ||f||_{Hdot^s} (a sum of the two norms, not a sqrt of a
// sum of squares).
double sobolev_seminorm(const SpectralField& field, double s);
double sobolev_norm(const SpectralField& field, double s);

// Largest violation of the realness invariant: for tori the worst
// |a(k) - conj(a(-k))|, for SU2Central the worst |Im a|.
double hermitian_defect(const SpectralField& field);

// Quadrature norms of spatial samples.
double quadrature_l2_norm(const QuadratureGrid& grid,
                          std::span<const double> samples);
double quadrature_lq_norm(const QuadratureGrid& grid,
                          std::span<const double> samples, double q);

// Analysis/synthesis engine bound to one (basis, grid) pair.  Torus grids
// are handled by FFTs, the SU(2) class-angle grid by a dense character
// matrix.  Thread-safe; plans and scratch buffers are guarded internally.
class Transform {
 public:
  Transform(std::shared_ptr<const ModeBasis> basis, QuadratureGrid grid);
  ~Transform();

  Transform(const Transform&) = delete;
  Transform& operator=(const Transform&) = delete;

  const ModeBasis& basis() const;
  const std::shared_ptr<const ModeBasis>& basis_ptr() const;
  const QuadratureGrid& grid() const;

  // Quadrature approximation of the Fourier coefficients of real samples;
  // exact for fields band-limited to the basis truncation.  Rejects sample
  // vectors whose length does not match the grid.
  SpectralField analyze(std::span<const double> samples) const;

  // Pointwise sums d a chi(x) over stored modes.  The imaginary residue of
  // the sum must stay below 1e-12 relative (violations indicate broken
  // Hermitian symmetry and throw std::domain_error); the real part is
  // returned.
  std::vector<double> synthesize(const SpectralField& field) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Convenience: transform with the default grid for this basis.
std::unique_ptr<Transform> make_transform(
    const std::shared_ptr<const ModeBasis>& basis, int oversample = 2);

// JSON round trip: {"group", "K", "entries": [{"index", "re", "im"}]},
// stable to full double precision.
std::string field_to_json(const SpectralField& field);
SpectralField field_from_json(const std::string& text);

}  // namespace liewave
