#include "orthant/pde.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <sstream>

#include "orthant/error.hpp"
#include "orthant/tridiagonal.hpp"

namespace orthant {

namespace {

const std::vector<double>& require_diffusion(const ModelSpec& model) {
  if (!model.diffusion) throw Error(ErrorKind::precondition, "model has no diffusion coefficients `d`");
  return *model.diffusion;
}

void require_compatible(const ModelSpec& model, const GridState& state) {
  if (state.species != model.dimension()) {
    throw Error(ErrorKind::invalid_argument, "grid state has " + std::to_string(state.species) +
                                                 " species, model has " + std::to_string(model.dimension()));
  }
  if (state.values.size() != state.species * state.grid.cells) {
    throw Error(ErrorKind::invalid_argument, "grid state values do not match its dimensions");
  }
}

// reaction[i * m + k] = dt * f_i(u(x_k)).
void reaction_increments(const ModelSpec& model, const GridState& state, double dt, std::vector<double>& out) {
  const std::size_t n = state.species, m = state.grid.cells;
  out.resize(n * m);
  std::vector<double> local(n), f(n);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < n; ++i) local[i] = state.values[i * m + k];
    evaluate_field(model, state.time, local, f);
    for (std::size_t i = 0; i < n; ++i) out[i * m + k] = dt * f[i];
  }
}

bool healthy(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v) && std::fabs(v) <= kBlowUpThreshold; });
}

StepRecord record(const GridState& s, const Eigenpair* eigen) {
  StepRecord r;
  r.time = s.time;
  const std::size_t m = s.grid.cells;
  for (std::size_t i = 0; i < s.species; ++i) {
    const auto row = s.row(i);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    r.min.push_back(*lo);
    r.max.push_back(*hi);
    if (eigen) {
      double ratio = kInfinity;
      for (std::size_t k = 0; k < m; ++k) ratio = std::min(ratio, row[k] / eigen->phi[k]);
      r.min_ratio.push_back(ratio);
    }
  }
  return r;
}

}  // namespace

Grid1D make_grid(double length, std::size_t cells, BoundaryCondition bc) {
  if (!(length > 0.0) || !std::isfinite(length)) throw Error(ErrorKind::invalid_argument, "grid length must be positive");
  if (cells < 1) throw Error(ErrorKind::invalid_argument, "grid needs at least one node");
  Grid1D g;
  g.length = length;
  g.cells = cells;
  g.bc = bc;
  g.nodes.resize(cells);
  if (bc == BoundaryCondition::neumann) {
    g.h = length / static_cast<double>(cells);
    for (std::size_t k = 0; k < cells; ++k) g.nodes[k] = (static_cast<double>(k) + 0.5) * g.h;
  } else {
    g.h = length / static_cast<double>(cells + 1);
    for (std::size_t k = 0; k < cells; ++k) g.nodes[k] = static_cast<double>(k + 1) * g.h;
  }
  return g;
}

GridState make_state(const Grid1D& grid, std::size_t species, double value) {
  GridState s;
  s.grid = grid;
  s.species = species;
  s.values.assign(species * grid.cells, value);
  return s;
}

std::string_view to_string(Scheme s) noexcept { return s == Scheme::imex ? "imex" : "explicit"; }

std::vector<double> apply_laplacian(std::span<const double> row, const Grid1D& grid) {
  const std::size_t m = grid.cells;
  if (row.size() != m) throw Error(ErrorKind::invalid_argument, "row length does not match grid");
  const bool neumann = grid.bc == BoundaryCondition::neumann;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  std::vector<double> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double left = k > 0 ? row[k - 1] : (neumann ? row[0] : 0.0);
    const double right = k + 1 < m ? row[k + 1] : (neumann ? row[m - 1] : 0.0);
    out[k] = (left - 2.0 * row[k] + right) * inv_h2;
  }
  return out;
}

double cfl_limit(const ModelSpec& model, const Grid1D& grid) {
  const auto& d = require_diffusion(model);
  const double dmax = *std::max_element(d.begin(), d.end());
  return grid.h * grid.h / (2.0 * dmax);
}

GridState step_explicit(const ModelSpec& model, const GridState& state, double dt) {
  require_compatible(model, state);
  const auto& d = require_diffusion(model);
  const double limit = cfl_limit(model, state.grid);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "dt = " << dt << " violates the CFL condition; admissible range is 0 < dt <= " << limit;
    throw Error(ErrorKind::invalid_argument, msg.str());
  }
  const std::size_t n = state.species, m = state.grid.cells;
  const bool neumann = state.grid.bc == BoundaryCondition::neumann;
  const double inv_h2 = 1.0 / (state.grid.h * state.grid.h);

  std::vector<double> reaction;
  reaction_increments(model, state, dt, reaction);

  GridState next = state;
  next.time = state.time + dt;
  for (std::size_t i = 0; i < n; ++i) {
    // Convex-combination form; r <= 1/2 makes every weight nonnegative.
    const double r = std::min(dt * d[i] * inv_h2, 0.5);
    const double centre = 1.0 - 2.0 * r;
    const auto u = state.row(i);
    auto out = next.row(i);
    for (std::size_t k = 0; k < m; ++k) {
      const double left = k > 0 ? u[k - 1] : (neumann ? u[0] : 0.0);
      const double right = k + 1 < m ? u[k + 1] : (neumann ? u[m - 1] : 0.0);
      out[k] = centre * u[k] + r * (left + right) + reaction[i * m + k];
    }
  }
  return next;
}

GridState step_imex(const ModelSpec& model, const GridState& state, double dt) {
  require_compatible(model, state);
  const auto& d = require_diffusion(model);
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  const std::size_t n = state.species, m = state.grid.cells;
  const bool neumann = state.grid.bc == BoundaryCondition::neumann;
  const double inv_h2 = 1.0 / (state.grid.h * state.grid.h);

  std::vector<double> reaction;
  reaction_increments(model, state, dt, reaction);

  GridState next = state;
  next.time = state.time + dt;
  std::vector<double> lower(m), diag(m), upper(m), scratch(m);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = dt * d[i] * inv_h2;
    for (std::size_t k = 0; k < m; ++k) {
      lower[k] = k > 0 ? -r : 0.0;
      upper[k] = k + 1 < m ? -r : 0.0;
      diag[k] = 1.0 + 2.0 * r;
      if (neumann && k == 0) diag[k] -= r;
      if (neumann && k + 1 == m) diag[k] -= r;
    }
    auto rhs = next.row(i);
    const auto u = state.row(i);
    for (std::size_t k = 0; k < m; ++k) rhs[k] = u[k] + reaction[i * m + k];
    solve_tridiagonal(lower, diag, upper, rhs, scratch);
  }
  return next;
}

SpaceTimeTrajectory simulate_rd(const ModelSpec& model, const GridState& initial, double t_end, Scheme scheme,
                                double dt, std::size_t save_every) {
  require_compatible(model, initial);
  require_diffusion(model);
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw Error(ErrorKind::invalid_argument, "t_end must be positive");
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  if (save_every == 0) save_every = 1;
  if (scheme == Scheme::explicit_euler) {
    const double limit = cfl_limit(model, initial.grid);
    if (dt > limit * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "dt = " << dt << " violates the CFL condition; admissible range is 0 < dt <= " << limit;
      throw Error(ErrorKind::invalid_argument, msg.str());
    }
  }

  SpaceTimeTrajectory traj;
  traj.grid = initial.grid;
  traj.scheme = scheme;
  traj.dt = dt;
  traj.names = model.names;
  if (initial.grid.bc == BoundaryCondition::dirichlet) traj.eigen = dirichlet_eigenpair(initial.grid);
  const Eigenpair* eigen = traj.eigen ? &*traj.eigen : nullptr;

  GridState state = initial;
  state.time = 0.0;
  traj.frames.push_back(state);
  traj.steps.push_back(record(state, eigen));

  const auto total = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t s = 0; s < total; ++s) {
    const double t_next = s + 1 == total ? t_end : static_cast<double>(s + 1) * dt;
    const double step = std::min(t_next - state.time, dt);
    GridState next = scheme == Scheme::imex ? step_imex(model, state, step) : step_explicit(model, state, step);
    next.time = t_next;
    if (!healthy(next.values)) {
      traj.status = TrajectoryStatus::blow_up;
      traj.status_time = t_next;
      break;
    }
    state = std::move(next);
    traj.steps.push_back(record(state, eigen));
    if ((s + 1) % save_every == 0 || s + 1 == total) traj.frames.push_back(state);
  }
  if (traj.status == TrajectoryStatus::completed) traj.status_time = state.time;
  return traj;
}

Eigenpair dirichlet_eigenpair(const Grid1D& grid) {
  if (grid.bc != BoundaryCondition::dirichlet) {
    throw Error(ErrorKind::precondition, "principal eigenpair is defined for Dirichlet grids");
  }
  const std::size_t m = grid.cells;
  const double inv_h2 = 1.0 / (grid.h * grid.h);
  std::vector<double> lower(m, -inv_h2), diag(m, 2.0 * inv_h2), upper(m, -inv_h2), scratch(m);
  lower[0] = 0.0;
  upper[m - 1] = 0.0;

  auto apply = [&](std::span<const double> x, std::vector<double>& out) {
    out.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      out[k] = diag[k] * x[k] + (k > 0 ? lower[k] * x[k - 1] : 0.0) + (k + 1 < m ? upper[k] * x[k + 1] : 0.0);
    }
  };
  auto normalise = [&](std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    const double scale = 1.0 / std::sqrt(grid.h * s);
    for (double& v : x) v *= scale;
  };

  Eigenpair ep;
  std::vector<double> x(m, 1.0), y, ax;
  normalise(x);
  double lambda_prev = 0.0;
  double residual_prev = kInfinity;
  for (int it = 1; it <= 10000; ++it) {
    y = x;
    solve_tridiagonal(lower, diag, upper, y, scratch);
    double xy = 0.0, yy = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      xy += x[k] * y[k];
      yy += y[k] * y[k];
    }
    const double lambda = xy / yy;
    x = std::move(y);
    normalise(x);
    apply(x, ax);
    double residual = 0.0;
    for (std::size_t k = 0; k < m; ++k) residual = std::max(residual, std::fabs(ax[k] - lambda * x[k]));

    const bool lambda_converged = it > 1 && std::fabs(lambda - lambda_prev) < 1e-12 * lambda;
    const bool residual_done = residual <= 1e-12 * lambda || residual >= 0.99 * residual_prev;
    ep.lambda = lambda;
    ep.residual = residual;
    ep.iterations = it;
    if (lambda_converged && residual_done) {
      double sum = 0.0;
      for (double v : x) sum += v;
      if (sum < 0.0) {
        for (double& v : x) v = -v;
      }
      if (!std::all_of(x.begin(), x.end(), [](double v) { return v > 0.0; })) {
        throw Error(ErrorKind::numeric, "principal eigenvector has non-positive entries");
      }
      ep.phi = std::move(x);
      return ep;
    }
    lambda_prev = lambda;
    residual_prev = residual;
  }
  throw Error(ErrorKind::numeric, "inverse power iteration did not converge in 10000 iterations");
}

PositivityReport check_positivity_evolution(const SpaceTimeTrajectory& trajectory, std::optional<double> probe_time) {
  PositivityReport rep;
  rep.probe_time = probe_time.value_or(10.0 * trajectory.dt);
  if (trajectory.steps.empty()) return rep;
  const std::size_t n = trajectory.steps.front().min.size();
  const bool dirichlet = trajectory.grid.bc == BoundaryCondition::dirichlet;
  const double probe = rep.probe_time * (1.0 - 1e-12);
  rep.species.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& sp = rep.species[i];
    const auto& first = trajectory.steps.front();
    sp.initially_nonnegative = first.min[i] >= 0.0;
    sp.initially_nonzero = first.min[i] != 0.0 || first.max[i] != 0.0;
    sp.global_min = kInfinity;
    for (const auto& s : trajectory.steps) {
      sp.global_min = std::min(sp.global_min, s.min[i]);
      if (s.time < probe) continue;
      if (dirichlet) {
        sp.ratio_min = std::min(sp.ratio_min.value_or(kInfinity), s.min_ratio[i]);
      } else {
        sp.strict_min = std::min(sp.strict_min.value_or(kInfinity), s.min[i]);
      }
    }
  }
  return rep;
}

double converse_functional(const ModelSpec& model, std::size_t component, std::span<const double> face_point,
                           const Grid1D& grid, double t_probe, std::size_t steps) {
  const std::size_t n = model.dimension();
  if (grid.bc != BoundaryCondition::dirichlet) {
    throw Error(ErrorKind::precondition, "converse functional needs a Dirichlet grid");
  }
  if (model.time_dependent) throw Error(ErrorKind::precondition, "converse functional needs an autonomous model");
  if (component >= n) throw Error(ErrorKind::invalid_argument, "component out of range");
  if (face_point.size() + 1 != n) {
    throw Error(ErrorKind::invalid_argument, "face point must have n - 1 = " + std::to_string(n - 1) + " entries");
  }
  if (!(t_probe > 0.0)) throw Error(ErrorKind::invalid_argument, "t_probe must be positive");
  if (steps == 0) steps = 1;

  GridState initial = make_state(grid, n);
  for (std::size_t j = 0, p = 0; j < n; ++j) {
    const double value = j == component ? 0.0 : face_point[p++];
    auto row = initial.row(j);
    std::fill(row.begin(), row.end(), value);
  }
  const auto traj = simulate_rd(model, initial, t_probe, Scheme::imex, t_probe / static_cast<double>(steps),
                                steps);
  if (traj.status != TrajectoryStatus::completed) {
    throw Error(ErrorKind::numeric, "simulation blew up before t_probe");
  }
  const auto& phi = traj.eigen->phi;
  const auto u = traj.frames.back().row(component);
  double acc = 0.0;
  for (std::size_t k = 0; k < grid.cells; ++k) acc += u[k] * phi[k];
  return grid.h * acc / t_probe;
}

}  // namespace orthant

namespace orthant {

HomogeneityReport homogeneous_consistency(const ModelSpec& model, const SpaceTimeTrajectory& trajectory,
                                          const IntegrationOptions& ode) {
  HomogeneityReport rep;
  if (trajectory.steps.empty() || trajectory.frames.empty()) return rep;
  const auto& first = trajectory.steps.front();
  rep.initially_constant = true;
  for (std::size_t i = 0; i < first.min.size(); ++i) {
    if (first.min[i] != first.max[i]) rep.initially_constant = false;
  }
  for (const auto& s : trajectory.steps) {
    for (std::size_t i = 0; i < s.min.size(); ++i) {
      rep.max_spatial_deviation = std::max(rep.max_spatial_deviation, s.max[i] - s.min[i]);
    }
  }
  if (!rep.initially_constant || trajectory.status != TrajectoryStatus::completed) return rep;
  const auto& last = trajectory.frames.back();
  if (!(last.time > 0.0)) return rep;
  const auto ode_traj = integrate(model, first.min, last.time, ode);
  if (ode_traj.status != TrajectoryStatus::completed) return rep;
  rep.ode_final = ode_traj.states.back();
  double dev = 0.0;
  for (std::size_t i = 0; i < last.species; ++i) {
    for (double v : last.row(i)) dev = std::max(dev, std::fabs(v - rep.ode_final[i]));
  }
  rep.ode_deviation = dev;
  return rep;
}

DecayReport dirichlet_decay(const ModelSpec& model, const SpaceTimeTrajectory& trajectory) {
  if (!trajectory.eigen) throw Error(ErrorKind::precondition, "decay report needs a Dirichlet run");
  const auto& d = require_diffusion(model);
  const auto& phi = trajectory.eigen->phi;
  const double lambda = trajectory.eigen->lambda;
  const double h = trajectory.grid.h;
  auto project = [&](const GridState& s, std::size_t i) {
    double acc = 0.0;
    const auto row = s.row(i);
    for (std::size_t k = 0; k < row.size(); ++k) acc += row[k] * phi[k];
    return h * acc;
  };
  DecayReport rep;
  const auto& a = trajectory.frames.front();
  const auto& b = trajectory.frames.back();
  const double span = b.time - a.time;
  for (std::size_t i = 0; i < a.species; ++i) {
    const double p0 = project(a, i), p1 = project(b, i);
    rep.initial_projection.push_back(p0);
    rep.final_projection.push_back(p1);
    rep.observed_rate.push_back(span > 0.0 && p0 > 0.0 && p1 > 0.0 ? -std::log(p1 / p0) / span
                                                                   : std::numeric_limits<double>::quiet_NaN());
    rep.discrete_rate.push_back(std::log1p(trajectory.dt * d[i] * lambda) / trajectory.dt);
    rep.continuum_rate.push_back(d[i] * lambda);
  }
  return rep;
}

}  // namespace orthant
