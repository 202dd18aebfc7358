#include "orthant_guard.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>
#include <vector>

#include "orthant/conditions.hpp"
#include "orthant/error.hpp"
#include "orthant/expr.hpp"
#include "orthant/field.hpp"
#include "orthant/ode.hpp"
#include "orthant/pde.hpp"
#include "orthant/serialize.hpp"
#include "orthant/zoo.hpp"

struct og_model {
  orthant::ModelSpec spec;
};

struct og_certificate {
  orthant::Certificate cert;
};

struct og_trajectory {
  orthant::ModelSpec model;
  orthant::Trajectory traj;
};

struct og_counterexample {
  orthant::ModelSpec model;
  orthant::Counterexample cex;
};

struct og_pde_run {
  orthant::ModelSpec model;
  orthant::SpaceTimeTrajectory traj;
};

namespace {

using orthant::Error;
using orthant::ErrorKind;

thread_local std::string g_last_error;

og_status status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return OG_ERR_INVALID_ARGUMENT;
    case ErrorKind::parse: return OG_ERR_PARSE;
    case ErrorKind::model: return OG_ERR_MODEL;
    case ErrorKind::precondition: return OG_ERR_PRECONDITION;
    case ErrorKind::numeric: return OG_ERR_NUMERIC;
    case ErrorKind::not_found: return OG_ERR_NOT_FOUND;
    case ErrorKind::io: return OG_ERR_IO;
  }
  return OG_ERR_INTERNAL;
}

og_status fail(og_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
og_status guarded(F&& body) noexcept {
  try {
    body();
    return OG_OK;
  } catch (const Error& e) {
    return fail(status_for(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(OG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(OG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(OG_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* message) {
  if (!cond) throw Error(ErrorKind::invalid_argument, message);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  require(out != nullptr, "output pointer is null");
  *out = copy_string(s);
}

void require_dim(const orthant::ModelSpec& model, std::size_t n) {
  if (n != model.dimension()) {
    throw Error(ErrorKind::invalid_argument, "expected " + std::to_string(model.dimension()) +
                                                  " entries, got " + std::to_string(n));
  }
}

orthant::SamplingOptions sampling_from(const og_sampling* s) {
  orthant::SamplingOptions o;
  if (!s) return o;
  require(std::isfinite(s->clip) && s->clip > 0.0, "clip must be positive");
  require(s->grid_per_axis >= 2, "grid must have at least 2 nodes per axis");
  o.clip = s->clip;
  o.grid_per_axis = s->grid_per_axis;
  o.random_samples = s->random_samples;
  o.seed = s->seed;
  o.refine_iterations = static_cast<int>(s->refine_iterations);
  return o;
}

orthant::IntegrationOptions ode_from(const og_ode_options* o) {
  orthant::IntegrationOptions r;
  if (!o) return r;
  require(o->rel_tol > 0.0 && o->abs_tol > 0.0, "tolerances must be positive");
  r.rel_tol = o->rel_tol;
  r.abs_tol = o->abs_tol;
  r.time_offset = o->time_offset;
  return r;
}

og_run_status run_status(orthant::TrajectoryStatus s) {
  switch (s) {
    case orthant::TrajectoryStatus::completed: return OG_RUN_COMPLETED;
    case orthant::TrajectoryStatus::blow_up: return OG_RUN_BLOW_UP;
    case orthant::TrajectoryStatus::step_failure: return OG_RUN_STEP_FAILURE;
  }
  return OG_RUN_STEP_FAILURE;
}

og_verdict verdict_of(orthant::Verdict v) {
  switch (v) {
    case orthant::Verdict::satisfied: return OG_SATISFIED;
    case orthant::Verdict::violated: return OG_VIOLATED;
    case orthant::Verdict::marginal: return OG_MARGINAL;
  }
  return OG_MARGINAL;
}

orthant::Json model_json(const orthant::ModelSpec& m) {
  orthant::Json j;
  j["names"] = m.names;
  orthant::Json f = orthant::Json::array();
  for (const auto& e : m.f) f.push_back(e.source());
  j["f"] = std::move(f);
  j["d"] = m.diffusion ? orthant::Json(*m.diffusion) : orthant::Json(nullptr);
  j["time_dependent"] = m.time_dependent;
  j["rectangle"] = m.rectangle ? orthant::to_json(*m.rectangle) : orthant::Json(nullptr);
  if (m.pde) {
    orthant::Json p;
    p["bc"] = orthant::to_string(m.pde->bc);
    p["length"] = m.pde->length;
    p["cells"] = m.pde->cells;
    j["pde"] = std::move(p);
  } else {
    j["pde"] = nullptr;
  }
  return j;
}

std::string dump(const orthant::Json& j) { return j.dump(2); }

void validate_pde(const og_pde_options* o) {
  require(o != nullptr, "pde options are null");
  require(std::isfinite(o->length) && o->length > 0.0, "length must be positive");
  require(o->cells >= 1, "cells must be at least 1");
  require(std::isfinite(o->dt) && o->dt > 0.0, "dt must be positive");
  require(std::isfinite(o->t_end) && o->t_end > 0.0, "t_end must be positive");
}

orthant::BoundaryCondition bc_of(og_bc bc) {
  return bc == OG_BC_DIRICHLET ? orthant::BoundaryCondition::dirichlet : orthant::BoundaryCondition::neumann;
}

og_pde_run* run_pde(const og_model* model, const og_pde_options* o, const orthant::GridState& initial) {
  auto traj = orthant::simulate_rd(model->spec, initial, o->t_end,
                                   o->scheme == OG_SCHEME_EXPLICIT ? orthant::Scheme::explicit_euler
                                                                   : orthant::Scheme::imex,
                                   o->dt, o->save_every);
  return new og_pde_run{model->spec, std::move(traj)};
}

}  // namespace

extern "C" {

const char* og_version(void) { return OG_VERSION_STRING; }

const char* og_last_error(void) { return g_last_error.c_str(); }

const char* og_status_name(og_status status) {
  switch (status) {
    case OG_OK: return "ok";
    case OG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case OG_ERR_PARSE: return "parse";
    case OG_ERR_MODEL: return "model";
    case OG_ERR_PRECONDITION: return "precondition";
    case OG_ERR_NUMERIC: return "numeric";
    case OG_ERR_NOT_FOUND: return "not_found";
    case OG_ERR_IO: return "io";
    case OG_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void og_string_free(char* s) { std::free(s); }

og_status og_model_load_file(const char* path, og_model** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new og_model{orthant::load_model_file(path)};
  });
}

og_status og_model_load_string(const char* document, og_model** out) {
  return guarded([&] {
    require(document && out, "null argument");
    *out = new og_model{orthant::load_model(document)};
  });
}

og_status og_model_from_zoo(const char* name, og_model** out) {
  return guarded([&] {
    require(name && out, "null argument");
    *out = new og_model{orthant::find_model(name).model};
  });
}

og_status og_model_clone(const og_model* model, og_model** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = new og_model{model->spec};
  });
}

void og_model_free(og_model* model) { delete model; }

size_t og_model_dimension(const og_model* model) { return model ? model->spec.dimension() : 0; }

const char* og_model_variable(const og_model* model, size_t i) {
  if (!model || i >= model->spec.dimension()) return nullptr;
  return model->spec.names[i].c_str();
}

int og_model_is_time_dependent(const og_model* model) { return model && model->spec.time_dependent ? 1 : 0; }
int og_model_has_diffusion(const og_model* model) { return model && model->spec.diffusion ? 1 : 0; }
int og_model_has_rectangle(const og_model* model) { return model && model->spec.rectangle ? 1 : 0; }

og_status og_model_rectangle(const og_model* model, double* alpha, double* beta, size_t n) {
  return guarded([&] {
    require(model && alpha && beta, "null argument");
    require_dim(model->spec, n);
    if (!model->spec.rectangle) throw Error(ErrorKind::not_found, "model has no [rectangle] table");
    for (size_t i = 0; i < n; ++i) {
      alpha[i] = model->spec.rectangle->alpha[i];
      beta[i] = model->spec.rectangle->beta[i];
    }
  });
}

og_status og_model_pde_settings(const og_model* model, og_bc* bc, double* length, size_t* cells) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    if (!model->spec.pde) throw Error(ErrorKind::not_found, "model has no [pde] table");
    if (bc) *bc = model->spec.pde->bc == orthant::BoundaryCondition::dirichlet ? OG_BC_DIRICHLET : OG_BC_NEUMANN;
    if (length) *length = model->spec.pde->length;
    if (cells) *cells = model->spec.pde->cells;
  });
}

og_status og_model_diffusion(const og_model* model, double* d, size_t n) {
  return guarded([&] {
    require(model && d, "null argument");
    require_dim(model->spec, n);
    if (!model->spec.diffusion) throw Error(ErrorKind::precondition, "model has no diffusion coefficients `d`");
    for (size_t i = 0; i < n; ++i) d[i] = (*model->spec.diffusion)[i];
  });
}

og_status og_model_eval(const og_model* model, double t, const double* state, size_t n, double* out) {
  return guarded([&] {
    require(model && state && out, "null argument");
    require_dim(model->spec, n);
    orthant::evaluate_field(model->spec, t, {state, n}, {out, n});
  });
}

og_status og_model_to_toml(const og_model* model, char** out) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    emit(out, orthant::to_model_file(model->spec));
  });
}

og_status og_model_to_json(const og_model* model, char** out) {
  return guarded([&] {
    require(model != nullptr, "null argument");
    emit(out, dump(model_json(model->spec)));
  });
}

size_t og_zoo_count(void) { return orthant::list_models().size(); }

const char* og_zoo_name(size_t i) {
  const auto& zoo = orthant::list_models();
  return i < zoo.size() ? zoo[i].name.c_str() : nullptr;
}

og_status og_zoo_export(const char* name, char** out) {
  return guarded([&] {
    require(name != nullptr, "null argument");
    emit(out, orthant::export_model_file(orthant::find_model(name)));
  });
}

og_status og_zoo_to_json(char** out) {
  return guarded([&] {
    orthant::Json arr = orthant::Json::array();
    for (const auto& e : orthant::list_models()) {
      orthant::Json j;
      j["name"] = e.name;
      j["note"] = e.note;
      j["model"] = model_json(e.model);
      j["expected"] = orthant::to_string(e.expected);
      if (e.time_window) {
        j["time_interval"] = orthant::Json::array({e.time_window->t0, e.time_window->t1});
      }
      orthant::Json rects = orthant::Json::array();
      for (const auto& r : e.rectangles) {
        orthant::Json rj;
        rj["rectangle"] = orthant::to_json(r.rect);
        rj["expected"] = orthant::to_string(r.expected);
        rj["verified_by"] = r.verified_by;
        rects.push_back(std::move(rj));
      }
      j["rectangles"] = std::move(rects);
      j["verified_by"] = e.verified_by;
      arr.push_back(std::move(j));
    }
    emit(out, dump(arr));
  });
}

og_status og_estimate_lipschitz(const og_model* model, const double* lo, const double* hi, size_t n,
                                size_t grid_per_axis, size_t random_samples, uint64_t seed, double t,
                                double* out_m) {
  return guarded([&] {
    require(model && lo && hi && out_m, "null argument");
    require_dim(model->spec, n);
    const auto box = orthant::make_rectangle({lo, lo + n}, {hi, hi + n});
    *out_m = orthant::estimate_lipschitz(model->spec, box, grid_per_axis, random_samples, seed, t).M;
  });
}

og_status og_existence_horizon(double sup_norm, double f0_norm, double lipschitz, double* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = orthant::existence_horizon(sup_norm, f0_norm, lipschitz);
  });
}

void og_sampling_default(og_sampling* sampling) {
  if (!sampling) return;
  const orthant::SamplingOptions d;
  sampling->clip = d.clip;
  sampling->grid_per_axis = d.grid_per_axis;
  sampling->random_samples = d.random_samples;
  sampling->seed = d.seed;
  sampling->refine_iterations = static_cast<size_t>(d.refine_iterations);
}

og_status og_check_quasipositivity(const og_model* model, const og_sampling* sampling, og_certificate** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = new og_certificate{orthant::check_quasipositivity(model->spec, sampling_from(sampling))};
  });
}

og_status og_check_rectangle(const og_model* model, const double* alpha, const double* beta, size_t n,
                             const og_sampling* sampling, og_certificate** out) {
  return guarded([&] {
    require(model && alpha && beta && out, "null argument");
    require_dim(model->spec, n);
    const auto rect = orthant::make_rectangle({alpha, alpha + n}, {beta, beta + n});
    *out = new og_certificate{orthant::check_rectangle(model->spec, rect, sampling_from(sampling))};
  });
}

og_status og_check_nonautonomous(const og_model* model, double t0, double t1, const og_sampling* sampling,
                                 og_certificate** out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = new og_certificate{
        orthant::check_nonautonomous(model->spec, orthant::TimeWindow{t0, t1}, sampling_from(sampling))};
  });
}

void og_certificate_free(og_certificate* certificate) { delete certificate; }

og_verdict og_certificate_verdict(const og_certificate* certificate) {
  return certificate ? verdict_of(certificate->cert.verdict) : OG_MARGINAL;
}

int og_certificate_is_strict(const og_certificate* certificate) {
  return certificate && certificate->cert.strict ? 1 : 0;
}

int og_certificate_has_witness(const og_certificate* certificate) {
  return certificate && certificate->cert.witness ? 1 : 0;
}

og_status og_certificate_witness(const og_certificate* certificate, size_t* face_index, og_side* side,
                                 double* point, size_t n, double* value, double* time) {
  return guarded([&] {
    require(certificate != nullptr, "null argument");
    const auto& w = certificate->cert.witness;
    if (!w) throw Error(ErrorKind::not_found, "certificate has no witness");
    if (face_index) *face_index = w->face.index;
    if (side) *side = w->face.side == orthant::Side::low ? OG_SIDE_LOW : OG_SIDE_HIGH;
    if (point) {
      require(n == w->point.size(), "point buffer does not match the model dimension");
      for (size_t i = 0; i < n; ++i) point[i] = w->point[i];
    }
    if (value) *value = w->value;
    if (time) *time = w->time ? *w->time : std::numeric_limits<double>::quiet_NaN();
  });
}

og_status og_certificate_to_json(const og_certificate* certificate, char** out) {
  return guarded([&] {
    require(certificate != nullptr, "null argument");
    emit(out, dump(orthant::to_json(certificate->cert)));
  });
}

void og_ode_options_default(og_ode_options* options) {
  if (!options) return;
  const orthant::IntegrationOptions d;
  options->rel_tol = d.rel_tol;
  options->abs_tol = d.abs_tol;
  options->time_offset = d.time_offset;
}

og_status og_integrate(const og_model* model, const double* u0, size_t n, double t_end,
                       const og_ode_options* options, og_trajectory** out) {
  return guarded([&] {
    require(model && u0 && out, "null argument");
    require_dim(model->spec, n);
    auto traj = orthant::integrate(model->spec, {u0, n}, t_end, ode_from(options));
    *out = new og_trajectory{model->spec, std::move(traj)};
  });
}

void og_trajectory_free(og_trajectory* trajectory) { delete trajectory; }

og_run_status og_trajectory_status(const og_trajectory* trajectory, double* status_time) {
  if (!trajectory) return OG_RUN_STEP_FAILURE;
  if (status_time) *status_time = trajectory->traj.status_time;
  return run_status(trajectory->traj.status);
}

size_t og_trajectory_length(const og_trajectory* trajectory) {
  return trajectory ? trajectory->traj.times.size() : 0;
}

og_status og_trajectory_sample(const og_trajectory* trajectory, size_t index, double* time, double* state,
                               size_t n) {
  return guarded([&] {
    require(trajectory != nullptr, "null argument");
    require(index < trajectory->traj.times.size(), "sample index out of range");
    if (time) *time = trajectory->traj.times[index];
    if (state) {
      require_dim(trajectory->model, n);
      for (size_t i = 0; i < n; ++i) state[i] = trajectory->traj.states[index][i];
    }
  });
}

int og_trajectory_first_negative(const og_trajectory* trajectory, size_t* component, double* time) {
  if (!trajectory) return 0;
  const auto c = orthant::first_negative_event(trajectory->traj);
  if (!c) return 0;
  if (component) *component = c->component;
  if (time) *time = c->time;
  return 1;
}

og_status og_trajectory_min(const og_trajectory* trajectory, double* out) {
  return guarded([&] {
    require(trajectory && out, "null argument");
    double lo = orthant::kInfinity;
    for (const auto& s : trajectory->traj.states) {
      for (double v : s) lo = std::min(lo, v);
    }
    *out = lo;
  });
}

og_status og_trajectory_to_json(const og_trajectory* trajectory, char** out) {
  return guarded([&] {
    require(trajectory != nullptr, "null argument");
    emit(out, dump(orthant::to_json(trajectory->traj, trajectory->model)));
  });
}

og_status og_trajectory_to_csv(const og_trajectory* trajectory, char** out) {
  return guarded([&] {
    require(trajectory != nullptr, "null argument");
    emit(out, orthant::to_csv(trajectory->traj, trajectory->model));
  });
}

og_status og_gronwall_check(const og_trajectory* trajectory, size_t component, double m_safe,
                            double* min_residual, int* holds) {
  return guarded([&] {
    require(trajectory != nullptr, "null argument");
    const auto rep = orthant::gronwall_check(trajectory->model, trajectory->traj, component, m_safe);
    if (min_residual) *min_residual = rep.min_residual;
    if (holds) *holds = rep.holds ? 1 : 0;
  });
}

og_status og_trajectory_safe_lipschitz(const og_trajectory* trajectory, uint64_t seed, double* out) {
  return guarded([&] {
    require(trajectory && out, "null argument");
    const auto box = orthant::lipschitz_box(trajectory->traj.states);
    const std::size_t grid = trajectory->model.dimension() <= 3 ? 9 : 3;
    *out = orthant::kLipschitzSafetyFactor *
           orthant::estimate_lipschitz(trajectory->model, box, grid, 256, seed).M;
  });
}

void og_counterexample_options_default(og_counterexample_options* options) {
  if (!options) return;
  og_ode_options_default(&options->integration);
  options->has_start_time = 0;
  options->start_time = 0.0;
  options->max_retries = orthant::CounterexampleOptions{}.max_retries;
}

og_status og_find_counterexample(const og_model* model, const og_certificate* certificate, double a, double t_end,
                                 const og_counterexample_options* options, og_counterexample** out) {
  return guarded([&] {
    require(model && certificate && out, "null argument");
    orthant::CounterexampleOptions o;
    if (options) {
      o.integration = ode_from(&options->integration);
      if (options->has_start_time) o.start_time = options->start_time;
      o.max_retries = options->max_retries;
    }
    auto cex = orthant::find_counterexample(model->spec, certificate->cert, a, t_end, o);
    *out = new og_counterexample{model->spec, std::move(cex)};
  });
}

void og_counterexample_free(og_counterexample* counterexample) { delete counterexample; }

og_status og_counterexample_u0(const og_counterexample* counterexample, double* u0, size_t n) {
  return guarded([&] {
    require(counterexample && u0, "null argument");
    require_dim(counterexample->model, n);
    for (size_t i = 0; i < n; ++i) u0[i] = counterexample->cex.u0[i];
  });
}

og_status og_counterexample_crossing(const og_counterexample* counterexample, size_t* component, double* time) {
  return guarded([&] {
    require(counterexample != nullptr, "null argument");
    if (component) *component = counterexample->cex.crossing.component;
    if (time) *time = counterexample->cex.crossing.time;
  });
}

og_status og_counterexample_to_json(const og_counterexample* counterexample, char** out) {
  return guarded([&] {
    require(counterexample != nullptr, "null argument");
    emit(out, dump(orthant::to_json(counterexample->cex, counterexample->model)));
  });
}

void og_pde_options_default(const og_model* model, og_pde_options* options) {
  if (!options) return;
  orthant::PdeSettings s;
  if (model && model->spec.pde) s = *model->spec.pde;
  options->bc = s.bc == orthant::BoundaryCondition::dirichlet ? OG_BC_DIRICHLET : OG_BC_NEUMANN;
  options->length = s.length;
  options->cells = s.cells;
  options->scheme = OG_SCHEME_IMEX;
  options->dt = 1e-3;
  options->t_end = 1.0;
  options->save_every = 1;
}

og_status og_pde_simulate(const og_model* model, const og_pde_options* options, const char* const* ic,
                          size_t ic_count, og_pde_run** out) {
  return guarded([&] {
    require(model && ic && out, "null argument");
    validate_pde(options);
    const std::size_t n = model->spec.dimension();
    if (ic_count != n && ic_count != 1) {
      throw Error(ErrorKind::invalid_argument, "expected 1 or " + std::to_string(n) +
                                                    " initial-condition expressions, got " + std::to_string(ic_count));
    }
    const std::vector<std::string> vars{"x"};
    std::vector<orthant::Expression> exprs;
    for (size_t i = 0; i < ic_count; ++i) {
      require(ic[i] != nullptr, "null initial-condition expression");
      exprs.push_back(orthant::parse_expression(ic[i], vars));
    }
    const auto grid = orthant::make_grid(options->length, options->cells, bc_of(options->bc));
    auto state = orthant::make_state(grid, n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& e = exprs[ic_count == 1 ? 0 : i];
      auto row = state.row(i);
      for (std::size_t k = 0; k < grid.cells; ++k) {
        const double x = grid.nodes[k];
        row[k] = e.eval({&x, 1}, 0.0);
        if (!std::isfinite(row[k])) {
          throw Error(ErrorKind::numeric, "initial condition for `" + model->spec.names[i] +
                                              "` is not finite at x = " + orthant::format_double(x));
        }
      }
    }
    *out = run_pde(model, options, state);
  });
}

og_status og_pde_simulate_values(const og_model* model, const og_pde_options* options, const double* values,
                                 size_t count, og_pde_run** out) {
  return guarded([&] {
    require(model && values && out, "null argument");
    validate_pde(options);
    const std::size_t n = model->spec.dimension();
    require(count == n * options->cells, "initial values must hold species * cells entries");
    const auto grid = orthant::make_grid(options->length, options->cells, bc_of(options->bc));
    auto state = orthant::make_state(grid, n);
    state.values.assign(values, values + count);
    *out = run_pde(model, options, state);
  });
}

void og_pde_run_free(og_pde_run* run) { delete run; }

og_run_status og_pde_run_status(const og_pde_run* run, double* status_time) {
  if (!run) return OG_RUN_STEP_FAILURE;
  if (status_time) *status_time = run->traj.status_time;
  return run_status(run->traj.status);
}

og_status og_pde_run_global_min(const og_pde_run* run, double* out) {
  return guarded([&] {
    require(run && out, "null argument");
    double lo = orthant::kInfinity;
    for (const auto& s : run->traj.steps) {
      for (double v : s.min) lo = std::min(lo, v);
    }
    *out = lo;
  });
}

og_status og_pde_run_to_csv(const og_pde_run* run, char** out) {
  return guarded([&] {
    require(run != nullptr, "null argument");
    emit(out, orthant::to_csv(run->traj));
  });
}

og_status og_pde_run_to_json(const og_pde_run* run, size_t every, char** out) {
  return guarded([&] {
    require(run != nullptr, "null argument");
    auto j = orthant::summary_json(run->traj, every);
    j["positivity"] = orthant::to_json(orthant::check_positivity_evolution(run->traj), run->traj.names);
    j["homogeneity"] = orthant::to_json(orthant::homogeneous_consistency(run->model, run->traj));
    if (run->traj.eigen) {
      auto e = orthant::to_json(*run->traj.eigen);
      e.erase("phi1");
      j["eigenpair"] = std::move(e);
      j["decay"] = orthant::to_json(orthant::dirichlet_decay(run->model, run->traj), run->traj.names);
    }
    emit(out, dump(j));
  });
}

og_status og_dirichlet_eigenpair(double length, size_t cells, double* lambda, double* phi) {
  return guarded([&] {
    require(lambda != nullptr, "null argument");
    const auto grid = orthant::make_grid(length, cells, orthant::BoundaryCondition::dirichlet);
    const auto e = orthant::dirichlet_eigenpair(grid);
    *lambda = e.lambda;
    if (phi) {
      for (size_t k = 0; k < cells; ++k) phi[k] = e.phi[k];
    }
  });
}

og_status og_cfl_limit(const og_model* model, double length, size_t cells, og_bc bc, double* out) {
  return guarded([&] {
    require(model && out, "null argument");
    *out = orthant::cfl_limit(model->spec, orthant::make_grid(length, cells, bc_of(bc)));
  });
}

og_status og_converse_functional(const og_model* model, size_t component, const double* face_point,
                                 size_t count, double length, size_t cells, double t_probe, double* out) {
  return guarded([&] {
    require(model && out, "null argument");
    require(count == 0 || face_point != nullptr, "null face point");
    const auto grid = orthant::make_grid(length, cells, orthant::BoundaryCondition::dirichlet);
    *out = orthant::converse_functional(model->spec, component, {face_point, count}, grid, t_probe);
  });
}

}  // extern "C"
