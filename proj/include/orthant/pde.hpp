#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orthant/field.hpp"
#include "orthant/ode.hpp"

namespace orthant {

/// Uniform grid on (0, length). Neumann uses cell centres x_k = (k - 1/2) h
/// with h = length / m; Dirichlet uses interior nodes x_k = k h with
/// h = length / (m + 1).
struct Grid1D {
  double length = 1.0;
  std::size_t cells = 0;
  double h = 0.0;
  BoundaryCondition bc = BoundaryCondition::neumann;
  std::vector<double> nodes;
};

Grid1D make_grid(double length, std::size_t cells, BoundaryCondition bc);

/// n species by m nodes, row-major by species.
struct GridState {
  Grid1D grid;
  std::size_t species = 0;
  std::vector<double> values;
  double time = 0.0;

  std::span<double> row(std::size_t i) { return {values.data() + i * grid.cells, grid.cells}; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * grid.cells, grid.cells}; }
  double at(std::size_t i, std::size_t k) const { return values[i * grid.cells + k]; }
};

GridState make_state(const Grid1D& grid, std::size_t species, double value = 0.0);

struct Eigenpair {
  double lambda = 0.0;
  std::vector<double> phi;  // positive, h * sum(phi^2) == 1
  int iterations = 0;
  double residual = 0.0;    // ||A phi - lambda phi||_inf
};

/// Principal eigenpair of the Dirichlet operator -Delta_h by inverse power
/// iteration.
Eigenpair dirichlet_eigenpair(const Grid1D& grid);

/// Three-point second difference with reflecting (Neumann) or zero (Dirichlet)
/// ghost values.
std::vector<double> apply_laplacian(std::span<const double> row, const Grid1D& grid);

/// h^2 / (2 max_i d_i).
double cfl_limit(const ModelSpec& model, const Grid1D& grid);

/// Forward Euler in both diffusion and reaction. Throws when dt exceeds the
/// CFL limit.
GridState step_explicit(const ModelSpec& model, const GridState& state, double dt);

/// Backward Euler diffusion (tridiagonal solve per species) with explicit
/// reaction: (I - dt d_i Delta_h) u_i' = u_i + dt f_i(u).
GridState step_imex(const ModelSpec& model, const GridState& state, double dt);

enum class Scheme { explicit_euler, imex };
std::string_view to_string(Scheme s) noexcept;

/// Spatial extrema per species after one step; min_ratio holds min_k u/phi_1
/// for Dirichlet grids and is empty otherwise.
struct StepRecord {
  double time = 0.0;
  std::vector<double> min;
  std::vector<double> max;
  std::vector<double> min_ratio;
};

struct SpaceTimeTrajectory {
  Grid1D grid;
  Scheme scheme = Scheme::imex;
  double dt = 0.0;
  std::vector<std::string> names;
  std::vector<GridState> frames;
  std::vector<StepRecord> steps;  // steps.front() describes the initial state
  TrajectoryStatus status = TrajectoryStatus::completed;
  double status_time = 0.0;
  std::optional<Eigenpair> eigen;  // Dirichlet only
};

SpaceTimeTrajectory simulate_rd(const ModelSpec& model, const GridState& initial, double t_end, Scheme scheme,
                                double dt, std::size_t save_every = 1);

struct SpeciesPositivity {
  double global_min = 0.0;
  bool initially_nonnegative = true;
  bool initially_nonzero = false;
  /// Neumann: min over steps with t >= probe_time of the spatial minimum.
  std::optional<double> strict_min;
  /// Dirichlet: min over steps with t >= probe_time of min_k u / phi_1.
  std::optional<double> ratio_min;
};

struct PositivityReport {
  double probe_time = 0.0;
  std::vector<SpeciesPositivity> species;
};

/// probe_time defaults to 10 dt.
PositivityReport check_positivity_evolution(const SpaceTimeTrajectory& trajectory,
                                            std::optional<double> probe_time = std::nullopt);

/// Spatial homogeneity diagnostics. When the initial state is constant in
/// space the constant solution solves the ODE system, so the run is also
/// compared against `integrate` at the final frame.
struct HomogeneityReport {
  bool initially_constant = false;
  double max_spatial_deviation = 0.0;  // max over steps and species of max - min
  std::optional<double> ode_deviation;  // max |u(t_end, x_k) - u_ode(t_end)|
  std::vector<double> ode_final;
};

HomogeneityReport homogeneous_consistency(const ModelSpec& model, const SpaceTimeTrajectory& trajectory,
                                          const IntegrationOptions& ode = {1e-10, 1e-12, 0.0});

/// Projection a_i(t) = h sum_k u_i(t, x_k) phi_1(x_k) for Dirichlet runs and
/// the decay rates it implies.
struct DecayReport {
  std::vector<double> initial_projection;
  std::vector<double> final_projection;
  std::vector<double> observed_rate;   // -ln(a(T)/a(0)) / T
  std::vector<double> discrete_rate;   // ln(1 + dt d_i lambda_1^h) / dt
  std::vector<double> continuum_rate;  // d_i lambda_1^h
};

DecayReport dirichlet_decay(const ModelSpec& model, const SpaceTimeTrajectory& trajectory);

/// Starts the system from the constant face point (component `component`
/// set to zero), runs imex to t_probe, and returns
/// (1/t_probe) h sum_k u_i(t_probe, x_k) phi_1(x_k).
double converse_functional(const ModelSpec& model, std::size_t component, std::span<const double> face_point,
                           const Grid1D& grid, double t_probe, std::size_t steps = 100);

}  // namespace orthant
