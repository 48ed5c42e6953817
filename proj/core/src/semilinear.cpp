#include "liewave/semilinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "nlohmann/json.hpp"

namespace liewave {

BlowupError::BlowupError(double time)
    : std::runtime_error("semilinear run stopped being finite at t = " +
                         std::to_string(time)),
      time_(time) {}

int SemilinearConfig::effective_oversample() const {
  if (dealias_oversample > 0) return dealias_oversample;
  if (p <= 2.0) return 2;
  if (p <= 3.0) return 3;
  return static_cast<int>(std::ceil((p + 1.0) / 2.0));
}

std::size_t SemilinearConfig::steps() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

void SemilinearConfig::validate() const {
  if (!(p > 1.0)) throw std::invalid_argument("nonlinearity exponent p must be > 1");
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon T must be > 0");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  const auto n = static_cast<double>(steps());
  if (n < 1.0 || std::abs(n * dt - horizon) > 1e-9 * std::max(1.0, horizon))
    throw std::invalid_argument("dt must divide the horizon T");
  if (!(picard_tol > 0.0)) throw std::invalid_argument("picard_tol must be > 0");
  if (picard_max_iter < 1)
    throw std::invalid_argument("picard_max_iter must be >= 1");
  if (dealias_oversample < 0)
    throw std::invalid_argument("dealias_oversample must be >= 0");
}

// ---------------------------------------------------------------------------
// Trajectory

Trajectory::Trajectory(std::shared_ptr<const ModeBasis> basis,
                       EvolutionParams params, double dt,
                       std::size_t snapshots)
    : basis_(std::move(basis)), params_opt_(params), dt_(dt) {
  if (snapshots < 1) throw std::invalid_argument("trajectory needs snapshots");
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
  u_.assign(snapshots,
            std::vector<std::complex<double>>(basis_->size(), {0.0, 0.0}));
  ut_ = u_;
}

SpectralField Trajectory::u_field(std::size_t i) const {
  return SpectralField(basis_, u_[i]);
}

SpectralField Trajectory::ut_field(std::size_t i) const {
  return SpectralField(basis_, ut_[i]);
}

EvolutionState Trajectory::state_at(std::size_t i) const {
  return EvolutionState(u_field(i), ut_field(i), time_at(i), params_ref());
}

Norms3 Trajectory::norms_at(std::size_t i) const {
  double l2 = 0.0, h1 = 0.0, ut = 0.0;
  const auto& modes = basis_->modes();
  for (std::size_t m = 0; m < modes.size(); ++m) {
    const double w = plancherel_weight(modes[m]);
    l2 += w * std::norm(u_[i][m]);
    h1 += w * modes[m].eigenvalue_sq * std::norm(u_[i][m]);
    ut += w * std::norm(ut_[i][m]);
  }
  return {std::sqrt(l2), std::sqrt(h1), std::sqrt(ut)};
}

// ---------------------------------------------------------------------------
// Nonlinearity

namespace {

// |x|^p with underflow guard; fractional exponents go through exp(p log|x|).
double abs_pow(double x, double p) {
  const double a = std::abs(x);
  if (a < 1e-300) return 0.0;
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  return std::exp(p * std::log(a));
}

const double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

SpectralField nonlinearity(const SpectralField& u, double p,
                           const Transform& transform) {
  std::vector<double> samples = transform.synthesize(u);
  bool finite = true;
  for (double& x : samples) {
    x = abs_pow(x, p);
    finite = finite && std::isfinite(x);
  }
  if (!finite) throw BlowupError(kNaN);
  return transform.analyze(samples);
}

// ---------------------------------------------------------------------------
// Linear part and the operator N

Trajectory linear_trajectory(const SpectralField& u0, const SpectralField& u1,
                             const EvolutionParams& params,
                             const SemilinearConfig& config) {
  config.validate();
  if (!(u0.group() == u1.group()) || u0.truncation() != u1.truncation())
    throw std::invalid_argument("u0 and u1 live on different bases");
  const std::size_t snapshots = config.steps() + 1;
  Trajectory traj(u0.basis_ptr(), params, config.dt, snapshots);
  const auto& modes = u0.basis().modes();
  for (std::size_t n = 0; n < snapshots; ++n) {
    const double t = traj.time_at(n);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const ModePair pair =
          propagate_mode(u0[m], u1[m], t, params, modes[m].eigenvalue_sq);
      traj.u(n)[m] = pair.u;
      traj.ut(n)[m] = pair.ut;
    }
  }
  return traj;
}

Trajectory apply_n(const Trajectory& u_traj, const SpectralField& u0,
                   const SpectralField& u1, const EvolutionParams& params,
                   const SemilinearConfig& config,
                   const Transform& transform) {
  config.validate();
  if (u_traj.empty()) throw std::invalid_argument("empty input trajectory");
  if (u_traj.snapshots() != config.steps() + 1 ||
      std::abs(u_traj.dt() - config.dt) > 1e-12 * config.dt)
    throw std::invalid_argument("trajectory does not cover [0, T] on the dt grid");
  if (!(u_traj.basis().group() == u0.group()) ||
      u_traj.basis().truncation() != u0.truncation())
    throw std::invalid_argument("trajectory and data bases differ");
  if (!(params == u_traj.params()))
    throw std::invalid_argument("trajectory was built for different parameters");

  const auto& basis = u_traj.basis();
  const auto& modes = basis.modes();
  const std::size_t n_modes = modes.size();
  const std::size_t snapshots = u_traj.snapshots();
  const double dt = config.dt;
  const double half_dt = 0.5 * dt;

  const auto source = [&](std::size_t j) -> std::vector<std::complex<double>> {
    if (config.disable_nonlinearity)
      return std::vector<std::complex<double>>(n_modes, {0.0, 0.0});
    try {
      return nonlinearity(u_traj.u_field(j), config.p, transform).coeffs();
    } catch (const BlowupError&) {
      throw BlowupError(u_traj.time_at(j));
    }
  };

  // One-step solution operators per mode, reused by the prefix recurrence.
  std::vector<PropagatorMatrix> step(n_modes);
  for (std::size_t m = 0; m < n_modes; ++m)
    step[m] = propagator_matrix(dt, params, modes[m].eigenvalue_sq);

  Trajectory out(u_traj.basis_ptr(), params, dt, snapshots);
  for (std::size_t m = 0; m < n_modes; ++m) {
    out.u(0)[m] = u0[m];
    out.ut(0)[m] = u1[m];
  }

  // Running trapezoid prefix J_n = sum over the grid of S(t_n - s) F(s).
  std::vector<std::complex<double>> ju(n_modes, {0.0, 0.0});
  std::vector<std::complex<double>> jut(n_modes, {0.0, 0.0});
  std::vector<std::complex<double>> f_prev = source(0);

  for (std::size_t n = 1; n < snapshots; ++n) {
    const double t = out.time_at(n);
    std::vector<std::complex<double>> f_cur = source(n);
    double mag = 0.0;
    for (std::size_t m = 0; m < n_modes; ++m) {
      // J_{n} = S(dt) (J_{n-1} + dt/2 F_{n-1}) + dt/2 F_n, F = (0, f).
      const std::complex<double> a = ju[m];
      const std::complex<double> b = jut[m] + half_dt * f_prev[m];
      const PropagatorMatrix& s = step[m];
      ju[m] = s.a * a + s.b * b;
      jut[m] = s.c * a + s.d * b + half_dt * f_cur[m];

      const ModePair lin =
          propagate_mode(u0[m], u1[m], t, params, modes[m].eigenvalue_sq);
      out.u(n)[m] = lin.u + ju[m];
      out.ut(n)[m] = lin.ut + jut[m];
      mag += std::norm(out.u(n)[m]) + std::norm(out.ut(n)[m]);
    }
    if (!std::isfinite(mag)) throw BlowupError(t);
    f_prev = std::move(f_cur);
  }
  return out;
}

// ---------------------------------------------------------------------------
// X(T) norms

namespace {

double xt_sup(const Trajectory& traj, bool raw_weight) {
  const bool critical = traj.params().regime() == Regime::Critical;
  double sup = 0.0;
  for (std::size_t n = 0; n < traj.snapshots(); ++n) {
    const double t = traj.time_at(n);
    double w;
    if (raw_weight && critical) {
      if (n == 0) continue;  // raw critical weight vanishes at t = 0
      w = t * std::exp(-traj.params().b() * t / 2.0);
    } else {
      w = xt_weight(t, traj.params());
    }
    sup = std::max(sup, traj.norms_at(n).sum() / w);
  }
  return sup;
}

}  // namespace

double xt_norm(const Trajectory& traj) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  return xt_sup(traj, false);
}

double xt_norm_raw_weight(const Trajectory& traj) {
  if (traj.empty()) throw std::invalid_argument("empty trajectory");
  return xt_sup(traj, true);
}

double xt_distance(const Trajectory& a, const Trajectory& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty trajectory");
  if (a.snapshots() != b.snapshots() || a.dt() != b.dt() ||
      !(a.basis().group() == b.basis().group()) ||
      a.basis().truncation() != b.basis().truncation())
    throw std::invalid_argument("trajectories are not comparable");
  const auto& modes = a.basis().modes();
  double sup = 0.0;
  for (std::size_t n = 0; n < a.snapshots(); ++n) {
    double l2 = 0.0, h1 = 0.0, ut = 0.0;
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const double w = plancherel_weight(modes[m]);
      l2 += w * std::norm(a.u(n)[m] - b.u(n)[m]);
      h1 += w * modes[m].eigenvalue_sq * std::norm(a.u(n)[m] - b.u(n)[m]);
      ut += w * std::norm(a.ut(n)[m] - b.ut(n)[m]);
    }
    const double sum = std::sqrt(l2) + std::sqrt(h1) + std::sqrt(ut);
    sup = std::max(sup, sum / xt_weight(a.time_at(n), a.params()));
  }
  return sup;
}

// ---------------------------------------------------------------------------
// Picard iteration

namespace {

PicardReport picard_loop(Trajectory current, const SpectralField& u0,
                         const SpectralField& u1,
                         const EvolutionParams& params,
                         const SemilinearConfig& config, int start_iteration,
                         std::vector<double> distances) {
  PicardReport report;
  const std::unique_ptr<Transform> transform =
      make_transform(u0.basis_ptr(), config.effective_oversample());

  report.distances = std::move(distances);
  for (std::size_t j = 1; j < report.distances.size(); ++j)
    report.contraction_factors.push_back(report.distances[j] /
                                         report.distances[j - 1]);
  report.iterations = start_iteration;

  for (int j = start_iteration; j < config.picard_max_iter; ++j) {
    Trajectory next;
    try {
      next = apply_n(current, u0, u1, params, config, *transform);
    } catch (const BlowupError& e) {
      report.blew_up = true;
      report.blowup_time = e.time();
      break;
    }
    const double dist = xt_distance(next, current);
    report.distances.push_back(dist);
    if (report.distances.size() >= 2) {
      const std::size_t k = report.distances.size() - 1;
      report.contraction_factors.push_back(report.distances[k] /
                                           report.distances[k - 1]);
    }
    current = std::move(next);
    report.iterations = j + 1;
    if (!std::isfinite(dist)) {
      report.blew_up = true;
      report.blowup_time = current.horizon();
      break;
    }
    if (dist < config.picard_tol) {
      report.converged = true;
      break;
    }
    const auto& f = report.contraction_factors;
    if (f.size() >= 3 && f[f.size() - 1] >= 1.0 && f[f.size() - 2] >= 1.0 &&
        f[f.size() - 3] >= 1.0)
      break;  // three straight non-contracting steps: diverging
  }

  report.trajectory = std::move(current);
  report.xt_norm_final = xt_norm(report.trajectory);
  report.xt_norm_final_raw = xt_norm_raw_weight(report.trajectory);
  return report;
}

}  // namespace

PicardReport picard_iterate(const SpectralField& u0, const SpectralField& u1,
                            const EvolutionParams& params,
                            const SemilinearConfig& config) {
  config.validate();
  Trajectory first = linear_trajectory(u0, u1, params, config);
  return picard_loop(std::move(first), u0, u1, params, config, 0, {});
}

PicardReport picard_resume(const PicardCheckpoint& checkpoint,
                           const SpectralField& u0, const SpectralField& u1,
                           const EvolutionParams& params,
                           const SemilinearConfig& config) {
  config.validate();
  if (checkpoint.trajectory.empty())
    throw std::invalid_argument("checkpoint holds no trajectory");
  return picard_loop(checkpoint.trajectory, u0, u1, params, config,
                     checkpoint.iteration, checkpoint.distances);
}

// ---------------------------------------------------------------------------
// Checkpoints

std::string picard_checkpoint_to_json(const PicardCheckpoint& checkpoint) {
  const Trajectory& traj = checkpoint.trajectory;
  if (traj.empty()) throw std::invalid_argument("checkpoint holds no trajectory");
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "picard_checkpoint";
  j["group"] = group_kind_name(traj.basis().group().kind);
  j["K"] = traj.basis().truncation();
  j["b"] = traj.params().b();
  j["m_sq"] = traj.params().m_sq();
  j["dt"] = traj.dt();
  j["iteration"] = checkpoint.iteration;
  j["distances"] = checkpoint.distances;
  nlohmann::json snaps = nlohmann::json::array();
  for (std::size_t n = 0; n < traj.snapshots(); ++n) {
    nlohmann::json u = nlohmann::json::array();
    nlohmann::json ut = nlohmann::json::array();
    for (std::size_t m = 0; m < traj.basis().size(); ++m) {
      u.push_back(traj.u(n)[m].real());
      u.push_back(traj.u(n)[m].imag());
      ut.push_back(traj.ut(n)[m].real());
      ut.push_back(traj.ut(n)[m].imag());
    }
    snaps.push_back({{"u", std::move(u)}, {"ut", std::move(ut)}});
  }
  j["snapshots"] = std::move(snaps);
  return j.dump();
}

PicardCheckpoint picard_checkpoint_from_json(
    const std::string& text, const std::shared_ptr<const ModeBasis>& basis,
    const EvolutionParams& params) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("kind").get<std::string>() != "picard_checkpoint")
    throw std::runtime_error("not a picard checkpoint document");
  if (j.at("group").get<std::string>() !=
          group_kind_name(basis->group().kind) ||
      j.at("K").get<int>() != basis->truncation())
    throw std::runtime_error("checkpoint basis does not match");
  if (j.at("b").get<double>() != params.b() ||
      j.at("m_sq").get<double>() != params.m_sq())
    throw std::runtime_error("checkpoint parameters do not match");

  const auto& snaps = j.at("snapshots");
  PicardCheckpoint checkpoint;
  checkpoint.iteration = j.at("iteration").get<int>();
  checkpoint.distances = j.at("distances").get<std::vector<double>>();
  checkpoint.trajectory =
      Trajectory(basis, params, j.at("dt").get<double>(), snaps.size());
  Trajectory& traj = checkpoint.trajectory;
  for (std::size_t n = 0; n < snaps.size(); ++n) {
    const auto& u = snaps[n].at("u");
    const auto& ut = snaps[n].at("ut");
    if (u.size() != 2 * basis->size() || ut.size() != 2 * basis->size())
      throw std::runtime_error("checkpoint snapshot size mismatch");
    for (std::size_t m = 0; m < basis->size(); ++m) {
      traj.u(n)[m] = {u[2 * m].get<double>(), u[2 * m + 1].get<double>()};
      traj.ut(n)[m] = {ut[2 * m].get<double>(), ut[2 * m + 1].get<double>()};
    }
  }
  return checkpoint;
}

// ---------------------------------------------------------------------------
// Amplitude threshold

EpsilonReport estimate_epsilon0(const SpectralField& u0,
                                const SpectralField& u1,
                                const EvolutionParams& params,
                                const SemilinearConfig& config,
                                double growth_factor, int bisection_rounds) {
  config.validate();
  if (!(growth_factor > 1.0))
    throw std::invalid_argument("growth_factor must be > 1");
  const double base = data_norm(u0, u1);
  if (base == 0.0) throw std::invalid_argument("base data must be nonzero");

  EpsilonReport report;
  const auto probe = [&](double scale) -> bool {
    const PicardReport r =
        picard_iterate(scale * u0, scale * u1, params, config);
    report.probes.push_back({scale * base, r.converged, r.iterations});
    return r.converged;
  };

  double scale = 1.0;
  double lo = 0.0, hi = 0.0;  // converging / diverging bracket, as scales
  if (probe(scale)) {
    lo = scale;
    for (int i = 0; i < 60 && hi == 0.0; ++i) {
      scale *= growth_factor;
      if (probe(scale))
        lo = scale;
      else
        hi = scale;
    }
    if (hi == 0.0) {
      // Never found divergence; report the largest converging amplitude.
      report.epsilon0 = lo * base;
      return report;
    }
  } else {
    hi = scale;
    bool found = false;
    for (int i = 0; i < 60 && !found; ++i) {
      scale /= growth_factor;
      if (probe(scale)) {
        lo = scale;
        found = true;
      } else {
        hi = scale;
      }
    }
    if (!found)
      throw std::runtime_error(
          "even the smallest tested amplitude diverges; check the "
          "configuration");
  }

  for (int i = 0; i < bisection_rounds; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (probe(mid))
      lo = mid;
    else
      hi = mid;
  }
  report.epsilon0 = lo * base;
  return report;
}

}  // namespace liewave
