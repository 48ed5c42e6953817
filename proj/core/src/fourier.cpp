#include "liewave/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "nlohmann/json.hpp"

namespace liewave {

namespace {

void require_same_layout(const SpectralField& a, const SpectralField& b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("operation on an empty spectral field");
  if (!(a.group() == b.group()) || a.truncation() != b.truncation())
    throw std::invalid_argument("spectral fields live on different bases");
}

}  // namespace

SpectralField::SpectralField(std::shared_ptr<const ModeBasis> basis)
    : basis_(std::move(basis)), coeffs_(basis_->size(), {0.0, 0.0}) {}

SpectralField::SpectralField(std::shared_ptr<const ModeBasis> basis,
                             std::vector<std::complex<double>> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size())
    throw std::invalid_argument(
        "coefficient count does not match the mode basis");
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_layout(a, b);
  SpectralField out(a.basis_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_layout(a, b);
  SpectralField out(a.basis_ptr());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

SpectralField operator*(double s, const SpectralField& f) {
  SpectralField out(f.basis_ptr());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = s * f[i];
  return out;
}

double plancherel_weight(const Mode& mode) {
  return double(mode.rep_dimension) * mode.rep_dimension;
}

double plancherel_l2_norm(const SpectralField& field) {
  double sum = 0.0;
  const auto& modes = field.basis().modes();
  for (std::size_t i = 0; i < field.size(); ++i)
    sum += plancherel_weight(modes[i]) * std::norm(field[i]);
  return std::sqrt(sum);
}

double sobolev_seminorm(const SpectralField& field, double s) {
  if (s < 0.0) throw std::invalid_argument("sobolev order must be >= 0");
  if (s == 0.0) return plancherel_l2_norm(field);
  double sum = 0.0;
  const auto& modes = field.basis().modes();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double lam_sq = modes[i].eigenvalue_sq;
    if (lam_sq == 0.0) continue;
    sum += plancherel_weight(modes[i]) * std::pow(lam_sq, s) *
           std::norm(field[i]);
  }
  return std::sqrt(sum);
}

double sobolev_norm(const SpectralField& field, double s) {
  return plancherel_l2_norm(field) + sobolev_seminorm(field, s);
}

double hermitian_defect(const SpectralField& field) {
  const ModeBasis& basis = field.basis();
  double worst = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (basis.group().is_torus()) {
      const std::size_t j = basis.conjugate_position(i);
      worst = std::max(worst, std::abs(field[i] - std::conj(field[j])));
    } else {
      worst = std::max(worst, std::abs(field[i].imag()));
    }
  }
  return worst;
}

double quadrature_l2_norm(const QuadratureGrid& grid,
                          std::span<const double> samples) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("sample count does not match the grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    sum += grid.weights[i] * samples[i] * samples[i];
  return std::sqrt(sum);
}

double quadrature_lq_norm(const QuadratureGrid& grid,
                          std::span<const double> samples, double q) {
  if (samples.size() != grid.size())
    throw std::invalid_argument("sample count does not match the grid");
  if (q < 1.0) throw std::invalid_argument("q must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    sum += grid.weights[i] * std::pow(std::abs(samples[i]), q);
  return std::pow(sum, 1.0 / q);
}

// ---------------------------------------------------------------------------
// Transform

struct Transform::Impl {
  std::shared_ptr<const ModeBasis> basis;
  QuadratureGrid grid;

  // Torus path: c2c FFT over the tensor grid, one bin per mode.
  mutable std::mutex mutex;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  fftw_complex* buf_in = nullptr;
  fftw_complex* buf_out = nullptr;
  std::vector<std::size_t> mode_bins;

  // SU(2) path: dense character matrix, row per mode.
  std::vector<double> characters;  // [mode * npoints + point]

  ~Impl() {
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
    if (buf_in) fftw_free(buf_in);
    if (buf_out) fftw_free(buf_out);
  }
};

Transform::Transform(std::shared_ptr<const ModeBasis> basis,
                     QuadratureGrid grid)
    : impl_(std::make_unique<Impl>()) {
  if (!(grid.group == basis->group()))
    throw std::invalid_argument("grid and basis groups differ");
  if (grid.truncation < basis->truncation())
    throw std::invalid_argument(
        "grid truncation is below the basis truncation");
  impl_->basis = std::move(basis);
  impl_->grid = std::move(grid);
  const ModeBasis& mb = *impl_->basis;
  const QuadratureGrid& g = impl_->grid;

  if (mb.group().is_torus()) {
    const int rank = mb.group().coordinate_rank();
    for (int i = 0; i < rank; ++i)
      if (g.shape[i] <= 2 * mb.truncation())
        throw std::invalid_argument("grid too coarse for the basis");
    const std::size_t total = g.size();
    impl_->buf_in = fftw_alloc_complex(total);
    impl_->buf_out = fftw_alloc_complex(total);
    int dims[3] = {g.shape[0], g.shape[1], g.shape[2]};
    impl_->forward = fftw_plan_dft(rank, dims, impl_->buf_in, impl_->buf_out,
                                   FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->backward = fftw_plan_dft(rank, dims, impl_->buf_in, impl_->buf_out,
                                    FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->forward || !impl_->backward)
      throw std::runtime_error("FFTW plan creation failed");

    impl_->mode_bins.resize(mb.size());
    for (std::size_t m = 0; m < mb.size(); ++m) {
      const auto& k = mb.mode(m).index;
      std::size_t flat = 0;
      for (int i = 0; i < rank; ++i) {
        const int n = g.shape[i];
        const int bin = ((k[i] % n) + n) % n;
        flat = flat * n + bin;
      }
      impl_->mode_bins[m] = flat;
    }
  } else {
    const std::size_t npts = g.size();
    impl_->characters.resize(mb.size() * npts);
    for (std::size_t m = 0; m < mb.size(); ++m)
      for (std::size_t p = 0; p < npts; ++p)
        impl_->characters[m * npts + p] =
            evaluate_basis(mb.group(), mb.mode(m), g.points[p]).real();
  }
}

Transform::~Transform() = default;

const ModeBasis& Transform::basis() const { return *impl_->basis; }
const std::shared_ptr<const ModeBasis>& Transform::basis_ptr() const {
  return impl_->basis;
}
const QuadratureGrid& Transform::grid() const { return impl_->grid; }

SpectralField Transform::analyze(std::span<const double> samples) const {
  const QuadratureGrid& g = impl_->grid;
  if (samples.size() != g.size())
    throw std::invalid_argument(
        "analyze: got " + std::to_string(samples.size()) +
        " samples for a grid of size " + std::to_string(g.size()));
  SpectralField field(impl_->basis);

  if (impl_->basis->group().is_torus()) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i) {
      impl_->buf_in[i][0] = samples[i];
      impl_->buf_in[i][1] = 0.0;
    }
    fftw_execute(impl_->forward);
    const double scale = 1.0 / static_cast<double>(total);
    for (std::size_t m = 0; m < field.size(); ++m) {
      const auto* c = impl_->buf_out[impl_->mode_bins[m]];
      field[m] = {c[0] * scale, c[1] * scale};
    }
  } else {
    const std::size_t npts = g.size();
    const auto& modes = impl_->basis->modes();
    for (std::size_t m = 0; m < field.size(); ++m) {
      double acc = 0.0;
      const double* row = impl_->characters.data() + m * npts;
      for (std::size_t p = 0; p < npts; ++p)
        acc += g.weights[p] * samples[p] * row[p];
      field[m] = {acc / modes[m].rep_dimension, 0.0};
    }
  }
  return field;
}

std::vector<double> Transform::synthesize(const SpectralField& field) const {
  if (!(field.group() == impl_->basis->group()) ||
      field.truncation() != impl_->basis->truncation())
    throw std::invalid_argument("field does not match the transform basis");
  const QuadratureGrid& g = impl_->grid;
  std::vector<double> out(g.size());
  double max_imag = 0.0;
  double max_real = 0.0;

  if (impl_->basis->group().is_torus()) {
    std::lock_guard<std::mutex> lock(impl_->mutex);
    const std::size_t total = g.size();
    for (std::size_t i = 0; i < total; ++i)
      impl_->buf_in[i][0] = impl_->buf_in[i][1] = 0.0;
    for (std::size_t m = 0; m < field.size(); ++m) {
      auto* c = impl_->buf_in[impl_->mode_bins[m]];
      c[0] = field[m].real();
      c[1] = field[m].imag();
    }
    fftw_execute(impl_->backward);
    for (std::size_t i = 0; i < total; ++i) {
      out[i] = impl_->buf_out[i][0];
      max_real = std::max(max_real, std::abs(impl_->buf_out[i][0]));
      max_imag = std::max(max_imag, std::abs(impl_->buf_out[i][1]));
    }
  } else {
    const std::size_t npts = g.size();
    const auto& modes = impl_->basis->modes();
    std::vector<std::complex<double>> acc(npts, {0.0, 0.0});
    for (std::size_t m = 0; m < field.size(); ++m) {
      const std::complex<double> weighted =
          double(modes[m].rep_dimension) * field[m];
      const double* row = impl_->characters.data() + m * npts;
      for (std::size_t p = 0; p < npts; ++p) acc[p] += weighted * row[p];
    }
    for (std::size_t p = 0; p < npts; ++p) {
      out[p] = acc[p].real();
      max_real = std::max(max_real, std::abs(acc[p].real()));
      max_imag = std::max(max_imag, std::abs(acc[p].imag()));
    }
  }

  if (max_imag > 1e-12 * std::max(1.0, max_real))
    throw std::domain_error(
        "synthesize: imaginary residue " + std::to_string(max_imag) +
        " exceeds tolerance; Hermitian symmetry is broken");
  return out;
}

std::unique_ptr<Transform> make_transform(
    const std::shared_ptr<const ModeBasis>& basis, int oversample) {
  return std::make_unique<Transform>(
      basis, quadrature_grid(basis->group(), basis->truncation(), oversample));
}

// ---------------------------------------------------------------------------
// JSON round trip

std::string field_to_json(const SpectralField& field) {
  nlohmann::json j;
  j["group"] = group_kind_name(field.group().kind);
  j["K"] = field.truncation();
  nlohmann::json entries = nlohmann::json::array();
  const int rank = field.group().coordinate_rank();
  const auto& modes = field.basis().modes();
  for (std::size_t i = 0; i < field.size(); ++i) {
    nlohmann::json entry;
    nlohmann::json index = nlohmann::json::array();
    for (int c = 0; c < rank; ++c) index.push_back(modes[i].index[c]);
    entry["index"] = index;
    entry["re"] = field[i].real();
    entry["im"] = field[i].imag();
    entries.push_back(entry);
  }
  j["entries"] = entries;
  return j.dump();
}

SpectralField field_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const GroupSpec group =
      GroupSpec::make(group_kind_from_name(j.at("group").get<std::string>()));
  const int truncation = j.at("K").get<int>();
  auto basis = make_basis(group, truncation);
  SpectralField field(basis);
  for (const auto& entry : j.at("entries")) {
    std::array<int, 3> index{0, 0, 0};
    const auto& idx = entry.at("index");
    for (std::size_t c = 0; c < idx.size() && c < 3; ++c)
      index[c] = idx[c].get<int>();
    field[basis->position(index)] = {entry.at("re").get<double>(),
                                     entry.at("im").get<double>()};
  }
  return field;
}

}  // namespace liewave
