// Mild-solution machinery for the semilinear problem with |u|^p forcing:
// the integral operator N, the weighted X(T) norm, Picard iteration, and
// the amplitude-threshold search.
//
//   N u(t) = S(t)(u0, u1) + \int_0^t S(t-s) (0, |u(s)|^p) ds
//
// with S the exact mode-wise solution operator.  The s-integral is a
// composite trapezoid on the uniform snapshot grid, accumulated through the
// semigroup recurrence
//
//   J_{n+1} = S(dt) ( J_n + (dt/2) F_n ) + (dt/2) F_{n+1},
//
// which reproduces the composite trapezoid sum at every snapshot while
// costing O(steps) instead of O(steps^2).  The linear part is evaluated in
// closed form per snapshot, so zeroing the nonlinearity reproduces the
// homogeneous evolution exactly.

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "liewave/fourier.hpp"
#include "liewave/linear.hpp"
#include "liewave/propagator.hpp"

namespace liewave {

// Signals non-finite samples or coefficients during a semilinear run.
class BlowupError : public std::runtime_error {
 public:
  explicit BlowupError(double time);
  double time() const { return time_; }

 private:
  double time_;
};

struct SemilinearConfig {
  double p = 2.0;             // nonlinearity exponent, > 1
  double horizon = 30.0;      // T
  double dt = 30.0 / 1024.0;  // snapshot spacing; must divide T
  double picard_tol = 1e-10;
  int picard_max_iter = 50;
  // 0 selects the default: 2 for p <= 2, 3 for p <= 3, ceil((p+1)/2) above.
  int dealias_oversample = 0;
  // Testing hook: forces the source term to exactly zero.
  bool disable_nonlinearity = false;

  int effective_oversample() const;
  std::size_t steps() const;  // snapshots - 1
  void validate() const;
};

// Uniformly spaced snapshots of (u_hat, u_t_hat) starting at t = 0.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(std::shared_ptr<const ModeBasis> basis, EvolutionParams params,
             double dt, std::size_t snapshots);

  bool empty() const { return u_.empty(); }
  const std::shared_ptr<const ModeBasis>& basis_ptr() const { return basis_; }
  const ModeBasis& basis() const { return *basis_; }
  const EvolutionParams& params() const { return params_; }
  double dt() const { return dt_; }
  std::size_t snapshots() const { return u_.size(); }
  double time_at(std::size_t i) const { return dt_ * static_cast<double>(i); }
  double horizon() const { return time_at(snapshots() - 1); }

  std::vector<std::complex<double>>& u(std::size_t i) { return u_[i]; }
  const std::vector<std::complex<double>>& u(std::size_t i) const {
    return u_[i];
  }
  std::vector<std::complex<double>>& ut(std::size_t i) { return ut_[i]; }
  const std::vector<std::complex<double>>& ut(std::size_t i) const {
    return ut_[i];
  }

  SpectralField u_field(std::size_t i) const;
  SpectralField ut_field(std::size_t i) const;
  EvolutionState state_at(std::size_t i) const;
  Norms3 norms_at(std::size_t i) const;

 private:
  std::shared_ptr<const ModeBasis> basis_;
  std::optional<EvolutionParams> params_opt_;
  double dt_ = 0.0;
  std::vector<std::vector<std::complex<double>>> u_;
  std::vector<std::vector<std::complex<double>>> ut_;

  const EvolutionParams& params_ref() const { return *params_opt_; }
};

// Pseudospectral |u|^p: synthesize on the (oversampled) grid, apply
// x -> |x|^p pointwise, analyze back to the basis truncation.  |x| below
// 1e-300 maps to 0 so fractional exponents never hit log(0).  Throws
// BlowupError on non-finite samples.
SpectralField nonlinearity(const SpectralField& u, double p,
                           const Transform& transform);

// Exact homogeneous trajectory sampled on the snapshot grid.
Trajectory linear_trajectory(const SpectralField& u0, const SpectralField& u1,
                             const EvolutionParams& params,
                             const SemilinearConfig& config);

// One application of the integral operator N to a trajectory.  The
// transform must be built on the trajectory basis with the configured
// oversampling.  Throws BlowupError (with the offending time) if any
// intermediate stops being finite.
Trajectory apply_n(const Trajectory& u_traj, const SpectralField& u0,
                   const SpectralField& u1, const EvolutionParams& params,
                   const SemilinearConfig& config, const Transform& transform);

// sup over snapshots of xt_weight(t)^{-1} (||u|| + ||(-L)^{1/2}u|| + ||u_t||).
double xt_norm(const Trajectory& traj);
double xt_distance(const Trajectory& a, const Trajectory& b);
// Same sup with the raw envelope t e^{-bt/2} in the critical regime (the
// t = 0 snapshot is excluded there); reported alongside the regularized
// norm so both weightings are visible.
double xt_norm_raw_weight(const Trajectory& traj);

struct PicardReport {
  Trajectory trajectory;
  std::vector<double> distances;            // ||u^{j+1} - u^j||_X
  std::vector<double> contraction_factors;  // rho_j
  int iterations = 0;
  bool converged = false;
  bool blew_up = false;
  double blowup_time = 0.0;
  double xt_norm_final = 0.0;
  double xt_norm_final_raw = 0.0;
};

// Picard iteration u^0 = linear solution, u^{j+1} = N u^{j}, stopping when
// the X(T) distance drops below picard_tol.  Divergence (three consecutive
// contraction factors >= 1, or blow-up) is reported, not thrown.
PicardReport picard_iterate(const SpectralField& u0, const SpectralField& u1,
                            const EvolutionParams& params,
                            const SemilinearConfig& config);

// Checkpoint of a running Picard iteration (trajectory + counters), JSON,
// round-trip exact.
struct PicardCheckpoint {
  Trajectory trajectory;
  int iteration = 0;
  std::vector<double> distances;
};
std::string picard_checkpoint_to_json(const PicardCheckpoint& checkpoint);
PicardCheckpoint picard_checkpoint_from_json(
    const std::string& text, const std::shared_ptr<const ModeBasis>& basis,
    const EvolutionParams& params);
// Continues a checkpointed iterate to convergence under the same data.
PicardReport picard_resume(const PicardCheckpoint& checkpoint,
                           const SpectralField& u0, const SpectralField& u1,
                           const EvolutionParams& params,
                           const SemilinearConfig& config);

struct EpsilonProbe {
  double scale = 0.0;
  bool converged = false;
  int iterations = 0;
};
struct EpsilonReport {
  double epsilon0 = 0.0;  // largest tested scale that converged
  std::vector<EpsilonProbe> probes;
};

// Locates the smallness threshold empirically: grows the data scale by
// `growth_factor` until Picard stops converging, then bisects the bracket.
// Scales multiply the given data, whose own size sets the unit.  Throws
// std::invalid_argument for zero data and std::runtime_error if even the
// smallest probe diverges.
EpsilonReport estimate_epsilon0(const SpectralField& u0,
                                const SpectralField& u1,
                                const EvolutionParams& params,
                                const SemilinearConfig& config,
                                double growth_factor = 2.0,
                                int bisection_rounds = 6);

}  // namespace liewave
