#include "orthant/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace orthant {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b - b_hat (fifth minus fourth order weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;

constexpr int kDenseProbes = 8;

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct HermiteSegment {
  double h;
  double y0, f0, y1, f1;

  double operator()(double theta) const {
    const double t2 = theta * theta, t3 = t2 * theta;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + theta;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * y0 + h10 * h * f0 + h01 * y1 + h11 * h * f1;
  }
};

template <class Pred>
double bisect(const HermiteSegment& seg, double lo, double hi, double theta_tol, Pred pred) {
  while (hi - lo > theta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (pred(seg(mid))) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

void detect_events(const HermiteSegment& seg, std::size_t j, double t_start, double t_tol, std::vector<Event>& out) {
  const double tol = kWitnessTolerance;
  const double a = seg.y0;
  if (a < -tol) return;  // already negative; re-armed once it comes back
  const double theta_tol = t_tol / seg.h;

  // First probe below -tol, if any.
  double prev_theta = 0.0;
  for (int k = 1; k <= kDenseProbes; ++k) {
    const double theta = static_cast<double>(k) / kDenseProbes;
    const double v = k == kDenseProbes ? seg.y1 : seg(theta);
    if (v < -tol) {
      const double threshold = a >= 0.0 ? 0.0 : -tol;
      const double hit = bisect(seg, prev_theta, theta, theta_tol, [&](double p) { return p < threshold; });
      out.push_back({j, t_start + hit * seg.h, EventKind::went_negative});
      return;
    }
    prev_theta = theta;
  }
  if (a > 0.0 && seg.y1 <= 0.0) {
    const double hit = bisect(seg, 0.0, 1.0, theta_tol, [](double p) { return p <= 0.0; });
    out.push_back({j, t_start + hit * seg.h, EventKind::first_zero});
  }
}

// Hairer-Norsett-Wanner starting step.
double initial_step(const ModelSpec& model, double t0, std::span<const double> y0, std::span<const double> f0,
                    double rtol, double atol, double t_end) {
  const std::size_t n = y0.size();
  double d0 = 0, d1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::fabs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / n);
  d1 = std::sqrt(d1 / n);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, t_end);
  std::vector<double> y1(n), f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + h0 * f0[i];
  evaluate_field(model, t0 + h0, y1, f1);
  double d2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::fabs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / n) / h0;
  if (!std::isfinite(d2)) return h0;
  const double dm = std::max(d1, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
  return std::min(100 * h0, h1);
}

}  // namespace

std::string_view to_string(EventKind k) noexcept {
  return k == EventKind::first_zero ? "first_zero" : "went_negative";
}

std::string_view to_string(TrajectoryStatus s) noexcept {
  switch (s) {
    case TrajectoryStatus::completed: return "completed";
    case TrajectoryStatus::blow_up: return "blow_up";
    case TrajectoryStatus::step_failure: return "step_failure";
  }
  return "?";
}

Trajectory integrate(const ModelSpec& model, std::span<const double> u0, double t_end,
                     const IntegrationOptions& options) {
  const std::size_t n = model.dimension();
  if (u0.size() != n) {
    throw Error(ErrorKind::invalid_argument,
                "initial state has " + std::to_string(u0.size()) + " entries, model has " + std::to_string(n));
  }
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::invalid_argument, "t_end must be positive");
  if (!(options.rel_tol > 0.0) || !(options.abs_tol > 0.0)) {
    throw Error(ErrorKind::invalid_argument, "tolerances must be positive");
  }
  if (!all_finite(u0)) throw Error(ErrorKind::invalid_argument, "initial state must be finite");

  const double rtol = options.rel_tol, atol = options.abs_tol, t_off = options.time_offset;
  const double h_min = 1e-14 * t_end;
  const double h_max = 0.02 * t_end;
  const double t_tol = 1e-10 * t_end;

  Trajectory traj;
  traj.time_offset = t_off;
  std::vector<double> y(u0.begin(), u0.end()), f(n);
  traj.times.push_back(0.0);
  traj.states.push_back(y);
  evaluate_field(model, t_off, y, f);
  if (!all_finite(f)) {
    traj.status = TrajectoryStatus::step_failure;
    return traj;
  }

  std::array<std::vector<double>, 7> k;
  for (auto& v : k) v.resize(n);
  std::vector<double> tmp(n), y_new(n), err(n);
  k[0] = f;

  double t = 0.0;
  double h = std::min(initial_step(model, t_off, y, f, rtol, atol, t_end), h_max);
  bool last_rejected = false;

  while (t < t_end) {
    const double step = std::min(h, t_end - t);
    auto stage = [&](int s, double c, auto&& combine) {
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + step * combine(i);
      evaluate_field(model, t_off + t + c * step, tmp, k[s]);
    };
    stage(1, c2, [&](std::size_t i) { return a21 * k[0][i]; });
    stage(2, c3, [&](std::size_t i) { return a31 * k[0][i] + a32 * k[1][i]; });
    stage(3, c4, [&](std::size_t i) { return a41 * k[0][i] + a42 * k[1][i] + a43 * k[2][i]; });
    stage(4, c5, [&](std::size_t i) { return a51 * k[0][i] + a52 * k[1][i] + a53 * k[2][i] + a54 * k[3][i]; });
    stage(5, 1.0, [&](std::size_t i) {
      return a61 * k[0][i] + a62 * k[1][i] + a63 * k[2][i] + a64 * k[3][i] + a65 * k[4][i];
    });
    for (std::size_t i = 0; i < n; ++i) {
      y_new[i] = y[i] + step * (b1 * k[0][i] + b3 * k[2][i] + b4 * k[3][i] + b5 * k[4][i] + b6 * k[5][i]);
    }
    evaluate_field(model, t_off + t + step, y_new, k[6]);

    if (!all_finite(y_new) || !all_finite(k[6])) {
      h = 0.25 * step;
      ++traj.rejected_steps;
      last_rejected = true;
      if (h < h_min) {
        traj.status = TrajectoryStatus::step_failure;
        traj.status_time = t;
        break;
      }
      continue;
    }

    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = step * (e1 * k[0][i] + e3 * k[2][i] + e4 * k[3][i] + e5 * k[4][i] + e6 * k[5][i] + e7 * k[6][i]);
      const double sc = atol + rtol * std::max(std::fabs(y[i]), std::fabs(y_new[i]));
      norm += (err[i] / sc) * (err[i] / sc);
    }
    norm = std::sqrt(norm / n);

    if (norm <= 1.0) {
      for (std::size_t j = 0; j < n; ++j) {
        detect_events({step, y[j], k[0][j], y_new[j], k[6][j]}, j, t, t_tol, traj.events);
      }
      t = (t_end - (t + step) <= 1e-12 * t_end) ? t_end : t + step;
      y = y_new;
      k[0] = k[6];
      traj.times.push_back(t);
      traj.states.push_back(y);
      traj.error_estimate += inf_norm(err);
      if (inf_norm(y) > kBlowUpThreshold) {
        traj.status = TrajectoryStatus::blow_up;
        traj.status_time = t;
        break;
      }
      double factor = norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
      if (last_rejected) factor = std::min(factor, 1.0);
      h = std::min(step * factor, h_max);
      last_rejected = false;
    } else {
      h = step * std::max(0.2, 0.9 * std::pow(norm, -0.2));
      ++traj.rejected_steps;
      last_rejected = true;
    }
    if (t < t_end && h < h_min) {
      traj.status = TrajectoryStatus::blow_up;
      traj.status_time = t;
      break;
    }
  }
  if (traj.status == TrajectoryStatus::completed) traj.status_time = t;
  std::stable_sort(traj.events.begin(), traj.events.end(),
                   [](const Event& a, const Event& b) { return a.time < b.time; });
  return traj;
}

std::optional<Crossing> first_negative_event(const Trajectory& trajectory) {
  for (const auto& e : trajectory.events) {
    if (e.kind == EventKind::went_negative) return Crossing{e.component, e.time};
  }
  return std::nullopt;
}

std::optional<Crossing> first_negative_event(const ModelSpec& model, std::span<const double> u0, double t_end,
                                             const IntegrationOptions& options) {
  return first_negative_event(integrate(model, u0, t_end, options));
}

GronwallReport gronwall_check(const ModelSpec& model, const Trajectory& trajectory, std::size_t component,
                              double m_safe) {
  if (component >= model.dimension()) {
    throw Error(ErrorKind::invalid_argument, "component " + std::to_string(component + 1) + " out of range");
  }
  if (trajectory.states.empty()) throw Error(ErrorKind::invalid_argument, "empty trajectory");
  GronwallReport rep;
  rep.component = component;
  const double u0 = trajectory.states.front()[component];
  rep.tolerance = 1e-8 * (1.0 + std::fabs(u0));
  rep.min_residual = kInfinity;
  for (std::size_t s = 0; s < trajectory.times.size(); ++s) {
    const double t = trajectory.times[s];
    const double r = trajectory.states[s][component] - std::exp(-m_safe * t) * u0;
    if (r < rep.min_residual) {
      rep.min_residual = r;
      rep.at_time = t;
    }
  }
  rep.holds = rep.min_residual >= -rep.tolerance;
  return rep;
}

Counterexample find_counterexample(const ModelSpec& model, const Certificate& certificate, double a, double t_end,
                                   const CounterexampleOptions& options) {
  if (certificate.verdict != Verdict::violated || !certificate.witness) {
    throw Error(ErrorKind::precondition, "certificate is not violated; there is no witness to perturb");
  }
  const Witness& w = *certificate.witness;
  if (w.face.side != Side::low) {
    throw Error(ErrorKind::precondition, "witness lies on a high face; the construction needs a low face");
  }
  if (w.point.size() != model.dimension()) throw Error(ErrorKind::invalid_argument, "witness dimension mismatch");
  if (!(a > 0.0)) throw Error(ErrorKind::invalid_argument, "perturbation a must be positive");

  Counterexample out;
  out.start_time = options.start_time.value_or(w.time.value_or(0.0));
  IntegrationOptions integ = options.integration;
  integ.time_offset = out.start_time;

  std::vector<Trajectory> misses;
  for (int attempt = 0; attempt <= options.max_retries; ++attempt) {
    std::vector<double> u0 = w.point;
    for (double& x : u0) x += a;
    Trajectory traj = integrate(model, u0, t_end, integ);
    if (auto hit = first_negative_event(traj)) {
      out.u0 = std::move(u0);
      out.a = a;
      out.trajectory = std::move(traj);
      out.crossing = *hit;
      out.attempts = attempt + 1;
      return out;
    }
    misses.push_back(std::move(traj));
    a /= 10.0;
  }
  throw CounterexampleNotFound("no component went negative before t_end after " +
                                   std::to_string(options.max_retries + 1) + " attempts",
                               std::move(misses));
}

}  // namespace orthant
