#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orthant/conditions.hpp"
#include "orthant/error.hpp"
#include "orthant/field.hpp"

namespace orthant {

enum class EventKind { first_zero, went_negative };
enum class TrajectoryStatus { completed, blow_up, step_failure };

std::string_view to_string(EventKind k) noexcept;
std::string_view to_string(TrajectoryStatus s) noexcept;

/// State norm above which integration stops with blow_up.
inline constexpr double kBlowUpThreshold = 1e8;

struct Event {
  std::size_t component = 0;
  double time = 0.0;
  EventKind kind = EventKind::first_zero;
};

/// Accepted-step samples of an ODE solution. Times are relative to the start
/// of integration (times.front() == 0); the field is evaluated at
/// time_offset + t.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<Event> events;
  TrajectoryStatus status = TrajectoryStatus::completed;
  double status_time = 0.0;
  double time_offset = 0.0;
  /// Sum over accepted steps of the infinity norm of the embedded error estimate.
  double error_estimate = 0.0;
  std::size_t rejected_steps = 0;
};

struct IntegrationOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double time_offset = 0.0;
};

/// Adaptive Dormand-Prince 5(4) with cubic Hermite dense output used to
/// bracket sign-change events. No state clipping is applied.
Trajectory integrate(const ModelSpec& model, std::span<const double> u0, double t_end,
                     const IntegrationOptions& options = {});

struct Crossing {
  std::size_t component = 0;
  double time = 0.0;
};

/// Earliest went_negative event, if any.
std::optional<Crossing> first_negative_event(const Trajectory& trajectory);
std::optional<Crossing> first_negative_event(const ModelSpec& model, std::span<const double> u0, double t_end,
                                             const IntegrationOptions& options = {});

struct GronwallReport {
  std::size_t component = 0;
  double min_residual = 0.0;  // min_t u_j(t) - exp(-M t) u_j(0)
  double at_time = 0.0;
  double tolerance = 0.0;     // 1e-8 (1 + |u_j(0)|)
  bool holds = true;
};

GronwallReport gronwall_check(const ModelSpec& model, const Trajectory& trajectory, std::size_t component,
                              double m_safe);

struct Counterexample {
  std::vector<double> u0;
  double a = 0.0;
  double start_time = 0.0;
  Trajectory trajectory;
  Crossing crossing;
  int attempts = 0;
};

class CounterexampleNotFound : public Error {
 public:
  CounterexampleNotFound(const std::string& message, std::vector<Trajectory> attempts)
      : Error(ErrorKind::not_found, message), attempts_(std::move(attempts)) {}
  const std::vector<Trajectory>& attempts() const noexcept { return attempts_; }

 private:
  std::vector<Trajectory> attempts_;
};

struct CounterexampleOptions {
  IntegrationOptions integration;
  /// Absolute start time; defaults to the witness time (0 for autonomous checks).
  std::optional<double> start_time;
  int max_retries = 6;
};

/// Perturbs the witness into the open orthant, u0 = witness + a (1, ..., 1),
/// and integrates until some component goes negative, dividing a by 10 on
/// each miss.
Counterexample find_counterexample(const ModelSpec& model, const Certificate& certificate, double a, double t_end,
                                   const CounterexampleOptions& options = {});

}  // namespace orthant
