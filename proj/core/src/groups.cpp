#include "liewave/groups.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "liewave/csv.hpp"

namespace liewave {

const char* group_kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::TorusD1:
      return "torus_d1";
    case GroupKind::TorusD2:
      return "torus_d2";
    case GroupKind::TorusD3:
      return "torus_d3";
    case GroupKind::SU2Central:
      return "su2_central";
  }
  throw std::logic_error("unknown group kind");
}

GroupKind group_kind_from_name(std::string_view name) {
  if (name == "torus_d1") return GroupKind::TorusD1;
  if (name == "torus_d2") return GroupKind::TorusD2;
  if (name == "torus_d3") return GroupKind::TorusD3;
  if (name == "su2_central") return GroupKind::SU2Central;
  throw std::invalid_argument("unknown group kind '" + std::string(name) +
                              "' (expected torus_d1|torus_d2|torus_d3|"
                              "su2_central)");
}

GroupSpec GroupSpec::make(GroupKind kind) {
  GroupSpec spec;
  spec.kind = kind;
  switch (kind) {
    case GroupKind::TorusD1:
      spec.topological_dimension = 1;
      break;
    case GroupKind::TorusD2:
      spec.topological_dimension = 2;
      break;
    case GroupKind::TorusD3:
    case GroupKind::SU2Central:
      spec.topological_dimension = 3;
      break;
  }
  return spec;
}

int GroupSpec::coordinate_rank() const {
  return is_torus() ? topological_dimension : 1;
}

namespace {

int torus_rank(const GroupSpec& group) {
  switch (group.kind) {
    case GroupKind::TorusD1:
      return 1;
    case GroupKind::TorusD2:
      return 2;
    case GroupKind::TorusD3:
      return 3;
    default:
      throw std::logic_error("not a torus");
  }
}

}  // namespace

std::vector<Mode> enumerate_modes(const GroupSpec& group, int truncation) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  std::vector<Mode> modes;
  if (group.is_torus()) {
    const int d = torus_rank(group);
    std::array<int, 3> k{0, 0, 0};
    const int lo = -truncation;
    const int hi = truncation;
    for (int k0 = lo; k0 <= hi; ++k0) {
      k[0] = k0;
      for (int k1 = (d > 1 ? lo : 0); k1 <= (d > 1 ? hi : 0); ++k1) {
        k[1] = k1;
        for (int k2 = (d > 2 ? lo : 0); k2 <= (d > 2 ? hi : 0); ++k2) {
          k[2] = k2;
          Mode m;
          m.index = k;
          m.eigenvalue_sq = double(k[0]) * k[0] + double(k[1]) * k[1] +
                            double(k[2]) * k[2];
          m.rep_dimension = 1;
          modes.push_back(m);
        }
      }
    }
  } else {
    for (int level = 0; level <= truncation; ++level) {
      Mode m;
      m.index = {level, 0, 0};
      m.eigenvalue_sq = double(level) * (level + 2);
      m.rep_dimension = level + 1;
      modes.push_back(m);
    }
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    if (a.eigenvalue_sq != b.eigenvalue_sq)
      return a.eigenvalue_sq < b.eigenvalue_sq;
    return a.index < b.index;
  });
  return modes;
}

ModeBasis::ModeBasis(GroupSpec group, int truncation)
    : group_(group),
      truncation_(truncation),
      modes_(enumerate_modes(group, truncation)) {
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    lookup_.emplace(modes_[i].index, i);
    if (modes_[i].eigenvalue_sq == 0.0) zero_mode_ = i;
  }
}

std::size_t ModeBasis::position(const std::array<int, 3>& index) const {
  auto it = lookup_.find(index);
  if (it == lookup_.end())
    throw std::out_of_range("mode (" + std::to_string(index[0]) + "," +
                            std::to_string(index[1]) + "," +
                            std::to_string(index[2]) +
                            ") is not in the basis at truncation " +
                            std::to_string(truncation_));
  return it->second;
}

bool ModeBasis::contains(const std::array<int, 3>& index) const {
  return lookup_.count(index) != 0;
}

std::size_t ModeBasis::conjugate_position(std::size_t i) const {
  if (!group_.is_torus()) return i;
  const auto& k = modes_[i].index;
  return position({-k[0], -k[1], -k[2]});
}

std::shared_ptr<const ModeBasis> make_basis(GroupSpec group, int truncation) {
  return std::make_shared<ModeBasis>(group, truncation);
}

int next_fast_size(int n) {
  if (n < 1) return 1;
  for (int m = n;; ++m) {
    int r = m;
    for (int f : {2, 3, 5, 7})
      while (r % f == 0) r /= f;
    if (r == 1) return m;
  }
}

QuadratureGrid quadrature_grid(const GroupSpec& group, int truncation,
                               int oversample) {
  if (truncation < 0) throw std::invalid_argument("truncation must be >= 0");
  if (oversample < 1) throw std::invalid_argument("oversample must be >= 1");

  QuadratureGrid grid;
  grid.group = group;
  grid.truncation = truncation;
  grid.oversample = oversample;

  if (group.is_torus()) {
    const int d = torus_rank(group);
    // Exactness for products of two modes needs > 2K points per axis; the
    // oversampling multiplies the per-axis count before FFT-size rounding.
    const int n = next_fast_size(oversample * (2 * truncation + 1));
    grid.shape = {1, 1, 1};
    for (int i = 0; i < d; ++i) grid.shape[i] = n;
    const std::size_t total = static_cast<std::size_t>(grid.shape[0]) *
                              grid.shape[1] * grid.shape[2];
    grid.points.resize(total);
    grid.weights.assign(total, 1.0 / static_cast<double>(total));
    const double h = 2.0 * std::numbers::pi / n;
    std::size_t flat = 0;
    for (int i0 = 0; i0 < grid.shape[0]; ++i0)
      for (int i1 = 0; i1 < grid.shape[1]; ++i1)
        for (int i2 = 0; i2 < grid.shape[2]; ++i2)
          grid.points[flat++] = {i0 * h, d > 1 ? i1 * h : 0.0,
                                 d > 2 ? i2 * h : 0.0};
  } else {
    // Gauss-Chebyshev (second kind) in x = cos(theta): nodes
    // theta_i = i pi / (N+1), weights 2 sin^2(theta_i)/(N+1).  Exact for
    // class polynomials of character degree <= 2N-1 >= 2K.
    const int n = oversample * (truncation + 1);
    grid.shape = {n, 1, 1};
    grid.points.resize(n);
    grid.weights.resize(n);
    const double step = std::numbers::pi / (n + 1);
    for (int i = 0; i < n; ++i) {
      const double theta = (i + 1) * step;
      const double s = std::sin(theta);
      grid.points[i] = {theta, 0.0, 0.0};
      grid.weights[i] = 2.0 * s * s / (n + 1);
    }
  }
  return grid;
}

std::complex<double> evaluate_basis(const GroupSpec& group, const Mode& mode,
                                    const std::array<double, 3>& point) {
  if (group.is_torus()) {
    const double phase = mode.index[0] * point[0] + mode.index[1] * point[1] +
                         mode.index[2] * point[2];
    return {std::cos(phase), std::sin(phase)};
  }
  // Character chi_k(theta) = U_k(cos theta) by the Chebyshev recurrence;
  // stable at the endpoints where sin((k+1)theta)/sin(theta) is 0/0.
  const int level = mode.index[0];
  const double x = std::cos(point[0]);
  double um1 = 1.0;  // U_0
  if (level == 0) return {um1, 0.0};
  double u = 2.0 * x;  // U_1
  for (int j = 2; j <= level; ++j) {
    const double next = 2.0 * x * u - um1;
    um1 = u;
    u = next;
  }
  return {u, 0.0};
}

void write_mode_table_csv(const ModeBasis& basis, std::ostream& out) {
  CsvWriter csv({"index", "eigenvalue_sq", "rep_dimension"});
  const int rank = basis.group().coordinate_rank();
  for (const Mode& m : basis.modes()) {
    std::string index = std::to_string(m.index[0]);
    for (int i = 1; i < rank; ++i) index += " " + std::to_string(m.index[i]);
    csv.cell(index)
        .cell(m.eigenvalue_sq)
        .cell(static_cast<std::int64_t>(m.rep_dimension));
    csv.end_row();
  }
  csv.write(out);
}

}  // namespace liewave
