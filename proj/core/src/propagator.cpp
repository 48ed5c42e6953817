#include "liewave/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace liewave {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::Underdamped:
      return "underdamped";
    case Regime::Critical:
      return "critical";
    case Regime::Overdamped:
      return "overdamped";
  }
  throw std::logic_error("unknown regime");
}

EvolutionParams::EvolutionParams(double b, double m_sq)
    : b_(b), m_sq_(m_sq), disc_(b * b / 4.0 - m_sq) {
  if (!(b > 0.0)) throw std::invalid_argument("damping b must be > 0");
  if (!(m_sq >= 0.0)) throw std::invalid_argument("m_sq must be >= 0");
}

Regime EvolutionParams::regime() const {
  if (disc_ < 0.0) return Regime::Underdamped;
  if (disc_ == 0.0) return Regime::Critical;
  return Regime::Overdamped;
}

double degenerate_tolerance(const EvolutionParams& params) {
  return 1e-8 * std::max(1.0, params.b() * params.b() / 4.0);
}

ModeRegime classify_mode(const EvolutionParams& params, double lambda_sq) {
  const double delta = params.discriminant_base() - lambda_sq;
  if (std::abs(delta) <= degenerate_tolerance(params))
    return ModeRegime::Degenerate;
  return delta > 0.0 ? ModeRegime::Hyperbolic : ModeRegime::Oscillatory;
}

namespace {

// Even Taylor expansions around the degenerate branch, x = Delta t^2:
//   G0 = sum x^n / (2n)!,   G1 = t sum x^n / (2n+1)!.
// The factorials dominate any |x| reachable under the branch tolerance, so
// the loop terminates with relative remainder below 1e-16 well inside the
// iteration cap.
struct G01 {
  double g0;
  double g1;
};

G01 taylor_g(double delta, double t) {
  const double x = delta * t * t;
  double term0 = 1.0;
  double term1 = 1.0;
  double s0 = 1.0;
  double s1 = 1.0;
  for (int n = 1; n <= 60; ++n) {
    term0 *= x / ((2.0 * n - 1.0) * (2.0 * n));
    term1 *= x / ((2.0 * n) * (2.0 * n + 1.0));
    s0 += term0;
    s1 += term1;
    if (std::abs(term0) <= 1e-17 * std::abs(s0) &&
        std::abs(term1) <= 1e-17 * std::abs(s1))
      break;
  }
  return {s0, t * s1};
}

G01 raw_g(double t, const EvolutionParams& params, double lambda_sq) {
  const double delta = params.discriminant_base() - lambda_sq;
  if (std::abs(delta) <= degenerate_tolerance(params))
    return taylor_g(delta, t);
  if (delta > 0.0) {
    const double sd = std::sqrt(delta);
    return {std::cosh(sd * t), std::sinh(sd * t) / sd};
  }
  const double om = std::sqrt(-delta);
  return {std::cos(om * t), std::sin(om * t) / om};
}

}  // namespace

double g0(double t, const EvolutionParams& params, double lambda_sq) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  return raw_g(t, params, lambda_sq).g0;
}

double g1(double t, const EvolutionParams& params, double lambda_sq) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  return raw_g(t, params, lambda_sq).g1;
}

WeightedPropagators weighted_propagators(double t,
                                         const EvolutionParams& params,
                                         double lambda_sq) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  const double delta = params.discriminant_base() - lambda_sq;
  const double damp = std::exp(-params.b() * t / 2.0);

  if (std::abs(delta) <= degenerate_tolerance(params)) {
    const G01 g = taylor_g(delta, t);
    return {damp * g.g0, damp * g.g1};
  }
  if (delta < 0.0) {
    const double om = std::sqrt(-delta);
    return {damp * std::cos(om * t), damp * std::sin(om * t) / om};
  }
  const double sd = std::sqrt(delta);
  if (sd * t < 350.0)
    return {damp * std::cosh(sd * t), damp * std::sinh(sd * t) / sd};
  // cosh/sinh would overflow; both characteristic exponents are negative
  // (sd < b/2 whenever m^2 + lambda^2 > 0), so fold the damping in first.
  const double ep = std::exp((-params.b() / 2.0 + sd) * t);
  const double em = std::exp((-params.b() / 2.0 - sd) * t);
  return {0.5 * (ep + em), 0.5 * (ep - em) / sd};
}

double duhamel_multiplier(double t, const EvolutionParams& params,
                          double lambda_sq) {
  return weighted_propagators(t, params, lambda_sq).eg1;
}

PropagatorMatrix propagator_matrix(double t, const EvolutionParams& params,
                                   double lambda_sq) {
  const WeightedPropagators w = weighted_propagators(t, params, lambda_sq);
  const double half_b = params.b() / 2.0;
  return {w.eg0 + half_b * w.eg1, w.eg1,
          -(lambda_sq + params.m_sq()) * w.eg1, w.eg0 - half_b * w.eg1};
}

ModePair propagate_mode(std::complex<double> u0_hat,
                        std::complex<double> u1_hat, double t,
                        const EvolutionParams& params, double lambda_sq) {
  const WeightedPropagators w = weighted_propagators(t, params, lambda_sq);
  const double half_b = params.b() / 2.0;
  return {w.eg0 * u0_hat + w.eg1 * (u1_hat + half_b * u0_hat),
          w.eg0 * u1_hat -
              w.eg1 * (half_b * u1_hat +
                       (lambda_sq + params.m_sq()) * u0_hat)};
}

double decay_function(double t, const EvolutionParams& params) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  switch (params.regime()) {
    case Regime::Underdamped:
      return std::exp(-params.b() * t / 2.0);
    case Regime::Critical:
      // The formula t e^{-bt/2} vanishes at t = 0; return the regularized
      // norm-weight value there so the function is usable as a weight.
      if (t == 0.0) return 1.0;
      return t * std::exp(-params.b() * t / 2.0);
    case Regime::Overdamped:
      return std::exp(
          (-params.b() / 2.0 + std::sqrt(params.discriminant_base())) * t);
  }
  throw std::logic_error("unknown regime");
}

double xt_weight(double t, const EvolutionParams& params) {
  if (t < 0.0) throw std::invalid_argument("t must be >= 0");
  if (params.regime() == Regime::Critical)
    return std::max(t, 1.0) * std::exp(-params.b() * t / 2.0);
  return decay_function(t, params);
}

DecayIntegralReport decay_integral_sup(const EvolutionParams& params, double p,
                                       double t_max, int samples,
                                       int subdivisions) {
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be > 0");
  if (samples < 2) throw std::invalid_argument("need at least 2 samples");
  if (subdivisions < 1) throw std::invalid_argument("subdivisions must be >= 1");

  // Raw envelope: in the critical regime use t e^{-bt/2} including its zero
  // at t = 0, which is what appears inside the integral.
  const bool critical = params.regime() == Regime::Critical;
  const auto raw_d = [&](double t) {
    if (critical) return t * std::exp(-params.b() * t / 2.0);
    return decay_function(t, params);
  };

  const auto ratio_at = [&](double t, int panels) {
    if (t <= 0.0) return 0.0;
    const double h = t / panels;
    double acc = 0.5 * (raw_d(t) * std::pow(raw_d(0.0), p) +
                        raw_d(0.0) * std::pow(raw_d(t), p));
    for (int i = 1; i < panels; ++i) {
      const double s = i * h;
      acc += raw_d(t - s) * std::pow(raw_d(s), p);
    }
    return acc * h / raw_d(t);
  };

  DecayIntegralReport report;
  report.times.reserve(samples + 1);
  report.values.reserve(samples + 1);
  const double step = t_max / samples;
  for (int j = 0; j <= samples; ++j) {
    const double t = j * step;
    const int panels = std::max(1, static_cast<int>(std::ceil(t * subdivisions)));
    const double q = ratio_at(t, panels);
    report.times.push_back(t);
    report.values.push_back(q);
    if (q > report.sup) {
      report.sup = q;
      report.arg_sup = t;
    }
  }
  for (int j = 0; j <= samples; ++j) {
    const double t = j * step;
    const int panels =
        std::max(1, static_cast<int>(std::ceil(t * subdivisions * 2)));
    report.sup_refined = std::max(report.sup_refined, ratio_at(t, panels));
  }
  return report;
}

}  // namespace liewave
