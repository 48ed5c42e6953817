// Closed-form scalar propagators for the damped mode ODE
//
//   w'' + lambda^2 w + b w' + m^2 w = 0,   w(0) = w0,  w'(0) = w1,
//
// the decay envelope d_{b,m^2}(t), and the Duhamel source multiplier.
//
// With Delta = b^2/4 - m^2 - lambda^2 the fundamental pair is
//
//   G0(t) = cosh(sqrt(Delta) t) | 1 | cos(sqrt(-Delta) t)
//   G1(t) = sinh(sqrt(Delta) t)/sqrt(Delta) | t | sin(sqrt(-Delta) t)/sqrt(-Delta)
//
// for Delta > 0 | = 0 | < 0, G0 = dG1/dt, and
//
//   w(t)  = e^{-bt/2} [ G0 w0 + G1 (w1 + (b/2) w0) ]
//   w'(t) = e^{-bt/2} [ G0 w1 - G1 ((b/2) w1 + (lambda^2 + m^2) w0) ].
//
// The degenerate branch is a neighborhood, not a point: for
// |Delta| <= 1e-8 max(1, b^2/4) both G's are evaluated by their even Taylor
// series in Delta t^2, since sinh(x)/x and sin(x)/x lose all significance
// as the branch point is approached through the closed forms.

#pragma once

#include <complex>
#include <vector>

#include "liewave/groups.hpp"

namespace liewave {

enum class Regime { Underdamped, Critical, Overdamped };
enum class ModeRegime { Hyperbolic, Degenerate, Oscillatory };

const char* regime_name(Regime r);

// Damping b and mass-squared m^2 with the cached discriminant base
// b^2/4 - m^2.  b must be positive.  m_sq = 0 lies outside the decaying
// regime (the overdamped envelope degenerates to 1) and is accepted only so
// blow-up probes can be run; every CLI entry point insists on m_sq > 0.
class EvolutionParams {
 public:
  EvolutionParams(double b, double m_sq);

  double b() const { return b_; }
  double m_sq() const { return m_sq_; }
  double discriminant_base() const { return disc_; }
  Regime regime() const;

  friend bool operator==(const EvolutionParams&, const EvolutionParams&) =
      default;

 private:
  double b_;
  double m_sq_;
  double disc_;
};

// |Delta| threshold below which the degenerate Taylor branch is used.
double degenerate_tolerance(const EvolutionParams& params);

ModeRegime classify_mode(const EvolutionParams& params, double lambda_sq);

// Decay envelope:
//   e^{-bt/2}                            b^2 <  4 m^2
//   t e^{-bt/2}                          b^2 == 4 m^2
//   e^{(-b/2 + sqrt(b^2/4 - m^2)) t}     b^2 >  4 m^2
// In the critical regime the formula vanishes at t = 0; there the function
// returns the regularized weight value xt_weight(0) = 1 instead, so that it
// can serve directly as a norm weight (see xt_weight).
double decay_function(double t, const EvolutionParams& params);

// Weight used by the X(T) norm: equals decay_function except in the
// critical regime, where max(t, 1) e^{-bt/2} replaces t e^{-bt/2} (an
// equivalent norm on bounded time intervals that stays away from 0).
double xt_weight(double t, const EvolutionParams& params);

// Raw fundamental solutions.  These can overflow for large sqrt(Delta) t in
// the hyperbolic branch; the solvers use the damped forms below instead.
double g0(double t, const EvolutionParams& params, double lambda_sq);
double g1(double t, const EvolutionParams& params, double lambda_sq);

// e^{-bt/2} G0 and e^{-bt/2} G1, evaluated in exponent form in the
// hyperbolic branch so they never overflow (both characteristic exponents
// -b/2 +- sqrt(Delta) are negative for m^2 > 0).
struct WeightedPropagators {
  double eg0;
  double eg1;
};
WeightedPropagators weighted_propagators(double t,
                                         const EvolutionParams& params,
                                         double lambda_sq);

// Spectral multiplier of convolution with the source fundamental solution:
// e^{-bt/2} G1.
double duhamel_multiplier(double t, const EvolutionParams& params,
                          double lambda_sq);

// Entries of the 2x2 solution operator S(t) acting on (w, w'):
//   w(t)  = a w0 + b w1
//   w'(t) = c w0 + d w1.
struct PropagatorMatrix {
  double a, b, c, d;
};
PropagatorMatrix propagator_matrix(double t, const EvolutionParams& params,
                                   double lambda_sq);

struct ModePair {
  std::complex<double> u;
  std::complex<double> ut;
};
ModePair propagate_mode(std::complex<double> u0_hat,
                        std::complex<double> u1_hat, double t,
                        const EvolutionParams& params, double lambda_sq);

// Uniform boundedness probe for the weighted Duhamel integral
//   Q(t) = d(t)^{-1} \int_0^t d(t-s) d(s)^p ds
// over t in [0, t_max], with the raw critical-branch envelope t e^{-bt/2}
// (no t = 0 regularization) as integrand.  `subdivisions` is the number of
// trapezoid panels per unit time; the report carries a once-refined value
// of the sup for stabilization checks.
struct DecayIntegralReport {
  double sup = 0.0;
  double arg_sup = 0.0;
  double sup_refined = 0.0;
  std::vector<double> times;
  std::vector<double> values;
};
DecayIntegralReport decay_integral_sup(const EvolutionParams& params, double p,
                                       double t_max, int samples,
                                       int subdivisions);

}  // namespace liewave
