// Mode tables, Laplace-Beltrami eigenvalues and quadrature grids for the
// supported compact groups.
//
// Supported groups: the tori T^1, T^2, T^3 and SU(2) restricted to central
// (conjugation-invariant) functions.  In all four cases one scalar
// coefficient per irreducible mode is enough:
//
//   torus        basis e^{ik.x},  eigenvalue |k|^2,          dimension 1
//   SU(2) class  character chi_k(theta) = sin((k+1)theta)/sin(theta),
//                eigenvalue k(k+2),                          dimension k+1
//
// The SU(2) eigenvalues use the round unit-3-sphere normalization of the
// metric; rescaling the metric rescales every eigenvalue by one common
// factor and changes nothing qualitative downstream.  Haar measure is
// normalized to total mass 1 throughout.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <string_view>
#include <vector>

namespace liewave {

enum class GroupKind { TorusD1, TorusD2, TorusD3, SU2Central };

const char* group_kind_name(GroupKind kind);
GroupKind group_kind_from_name(std::string_view name);

struct GroupSpec {
  GroupKind kind = GroupKind::TorusD1;
  int topological_dimension = 1;  // 1, 2, 3 for the tori; 3 for SU(2)

  static GroupSpec make(GroupKind kind);

  bool is_torus() const { return kind != GroupKind::SU2Central; }
  // Number of coordinates a grid point carries: d for T^d, 1 for the SU(2)
  // class angle theta.
  int coordinate_rank() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

// One irreducible mode.  For tori `index` is the frequency vector (trailing
// entries zero); for SU2Central `index[0]` is the nonnegative level.
struct Mode {
  std::array<int, 3> index{0, 0, 0};
  double eigenvalue_sq = 0.0;
  int rep_dimension = 1;
};

// All modes with max-norm frequency <= K (tori) or level <= K (SU2Central),
// sorted by eigenvalue then lexicographic index.  Always contains exactly
// one mode with eigenvalue 0.
std::vector<Mode> enumerate_modes(const GroupSpec& group, int truncation);

// Immutable mode table with index lookup.  Shared between fields, grids and
// transforms via shared_ptr.
class ModeBasis {
 public:
  ModeBasis(GroupSpec group, int truncation);

  const GroupSpec& group() const { return group_; }
  int truncation() const { return truncation_; }
  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const Mode& mode(std::size_t i) const { return modes_[i]; }

  // Position of a mode by its index tuple; throws std::out_of_range if the
  // mode is not part of this table.
  std::size_t position(const std::array<int, 3>& index) const;
  bool contains(const std::array<int, 3>& index) const;

  // Position of the unique eigenvalue-zero mode.
  std::size_t zero_mode() const { return zero_mode_; }

  // Position of the conjugate mode (-k for tori, identity for SU2Central).
  std::size_t conjugate_position(std::size_t i) const;

 private:
  GroupSpec group_;
  int truncation_;
  std::vector<Mode> modes_;
  std::map<std::array<int, 3>, std::size_t> lookup_;
  std::size_t zero_mode_ = 0;
};

std::shared_ptr<const ModeBasis> make_basis(GroupSpec group, int truncation);

// Spatial quadrature rule with weights summing to 1 (normalized Haar
// measure).  Tori use uniform tensor grids on [0, 2pi)^d; SU2Central uses a
// Gauss-Chebyshev rule in the class angle with weight density sin^2(theta),
// the Weyl integration measure.
struct QuadratureGrid {
  GroupSpec group;
  int truncation = 0;
  int oversample = 1;
  std::array<int, 3> shape{1, 1, 1};  // points per axis; {n,1,1} for SU(2)
  std::vector<std::array<double, 3>> points;
  std::vector<double> weights;

  std::size_t size() const { return weights.size(); }
};

// Builds a grid exact for products of any two basis functions at the given
// truncation.  `oversample` is the linear oversampling factor used to keep
// pointwise nonlinearities from aliasing back into the resolved band; the
// default 2 is alias-free for quadratic nonlinearities.
QuadratureGrid quadrature_grid(const GroupSpec& group, int truncation,
                               int oversample = 2);

// Basis function value at a grid point: e^{ik.x} for tori, the (real)
// character value for SU2Central.  Endpoint-safe for theta -> 0, pi.
std::complex<double> evaluate_basis(const GroupSpec& group, const Mode& mode,
                                    const std::array<double, 3>& point);

// Smallest 2^a 3^b 5^c 7^d >= n; used to keep torus grid sizes FFT-friendly.
int next_fast_size(int n);

// CSV export of the mode table (columns: index, eigenvalue_sq, rep_dimension).
void write_mode_table_csv(const ModeBasis& basis, std::ostream& out);

}  // namespace liewave
