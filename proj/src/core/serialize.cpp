#include "orthant/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace orthant {

namespace {

Json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

Json numbers(std::span<const double> xs) {
  Json arr = Json::array();
  for (double x : xs) arr.push_back(number(x));
  return arr;
}

Json face_json(Face f) {
  Json j;
  j["index"] = f.index + 1;
  j["side"] = f.side == Side::low ? "low" : "high";
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Rectangle& rect) {
  Json j;
  j["alpha"] = numbers(rect.alpha);
  j["beta"] = numbers(rect.beta);
  return j;
}

Json to_json(const Certificate& cert) {
  Json j;
  j["check"] = to_string(cert.kind);
  j["verdict"] = to_string(cert.verdict);
  j["strict"] = cert.strict;
  j["tolerance"] = kWitnessTolerance;
  Json faces = Json::array();
  for (const auto& rec : cert.faces) {
    Json f;
    f["face"] = face_json(rec.face);
    f["extremum"] = rec.face.side == Side::low ? "min" : "max";
    f["value"] = number(rec.value);
    f["location"] = numbers(rec.location);
    if (rec.time) f["time"] = number(*rec.time);
    f["samples"] = rec.samples;
    f["verdict"] = to_string(rec.verdict);
    faces.push_back(std::move(f));
  }
  j["faces"] = std::move(faces);
  if (cert.witness) {
    Json w;
    w["face"] = face_json(cert.witness->face);
    w["point"] = numbers(cert.witness->point);
    w["value"] = number(cert.witness->value);
    if (cert.witness->time) w["time"] = number(*cert.witness->time);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  Json s;
  s["clip"] = cert.sampling.clip;
  s["grid_per_axis"] = cert.sampling.grid_per_axis;
  s["random_samples"] = cert.sampling.random_samples;
  s["seed"] = cert.sampling.seed;
  s["refine_iterations"] = cert.sampling.refine_iterations;
  s["region"] = to_json(cert.region);
  if (cert.time_window) s["time_interval"] = Json::array({cert.time_window->t0, cert.time_window->t1});
  j["sampling"] = std::move(s);
  return j;
}

Json to_json(const Trajectory& traj, const ModelSpec& model) {
  Json j;
  j["names"] = model.names;
  Json status;
  status["kind"] = to_string(traj.status);
  status["time"] = traj.status_time;
  j["status"] = std::move(status);
  j["time_offset"] = traj.time_offset;
  j["error_estimate"] = traj.error_estimate;
  j["rejected_steps"] = traj.rejected_steps;
  Json events = Json::array();
  for (const auto& e : traj.events) {
    Json ev;
    ev["component"] = e.component + 1;
    ev["name"] = model.names[e.component];
    ev["time"] = e.time;
    ev["kind"] = to_string(e.kind);
    events.push_back(std::move(ev));
  }
  j["events"] = std::move(events);
  j["times"] = numbers(traj.times);
  Json states = Json::array();
  for (const auto& s : traj.states) states.push_back(numbers(s));
  j["states"] = std::move(states);
  return j;
}

Json to_json(const GronwallReport& report) {
  Json j;
  j["component"] = report.component + 1;
  j["min_residual"] = number(report.min_residual);
  j["at_time"] = report.at_time;
  j["tolerance"] = report.tolerance;
  j["holds"] = report.holds;
  return j;
}

Json to_json(const Counterexample& cex, const ModelSpec& model) {
  Json j;
  j["u0"] = numbers(cex.u0);
  j["a"] = cex.a;
  j["start_time"] = cex.start_time;
  j["attempts"] = cex.attempts;
  Json c;
  c["component"] = cex.crossing.component + 1;
  c["name"] = model.names[cex.crossing.component];
  c["time"] = cex.crossing.time;
  c["absolute_time"] = cex.start_time + cex.crossing.time;
  j["crossing"] = std::move(c);
  j["trajectory"] = to_json(cex.trajectory, model);
  return j;
}

Json to_json(const PositivityReport& report, const std::vector<std::string>& names) {
  Json j;
  j["probe_time"] = report.probe_time;
  Json species = Json::array();
  for (std::size_t i = 0; i < report.species.size(); ++i) {
    const auto& sp = report.species[i];
    Json s;
    s["name"] = i < names.size() ? names[i] : std::to_string(i + 1);
    s["global_min"] = number(sp.global_min);
    s["initially_nonnegative"] = sp.initially_nonnegative;
    s["initially_nonzero"] = sp.initially_nonzero;
    s["strict_min"] = sp.strict_min ? number(*sp.strict_min) : Json(nullptr);
    s["ratio_min"] = sp.ratio_min ? number(*sp.ratio_min) : Json(nullptr);
    species.push_back(std::move(s));
  }
  j["species"] = std::move(species);
  return j;
}

Json to_json(const Eigenpair& eigen) {
  Json j;
  j["lambda1"] = eigen.lambda;
  j["iterations"] = eigen.iterations;
  j["residual"] = eigen.residual;
  j["phi1"] = numbers(eigen.phi);
  return j;
}

Json to_json(const HomogeneityReport& report) {
  Json j;
  j["initially_constant"] = report.initially_constant;
  j["max_spatial_deviation"] = number(report.max_spatial_deviation);
  j["ode_deviation"] = report.ode_deviation ? number(*report.ode_deviation) : Json(nullptr);
  j["ode_final"] = numbers(report.ode_final);
  return j;
}

Json to_json(const DecayReport& report, const std::vector<std::string>& names) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < report.initial_projection.size(); ++i) {
    Json s;
    s["name"] = i < names.size() ? names[i] : std::to_string(i + 1);
    s["initial_projection"] = number(report.initial_projection[i]);
    s["final_projection"] = number(report.final_projection[i]);
    s["observed_rate"] = number(report.observed_rate[i]);
    s["discrete_rate"] = number(report.discrete_rate[i]);
    s["continuum_rate"] = number(report.continuum_rate[i]);
    arr.push_back(std::move(s));
  }
  return arr;
}

Json summary_json(const SpaceTimeTrajectory& traj, std::size_t every) {
  if (every == 0) every = 1;
  Json j;
  Json grid;
  grid["bc"] = to_string(traj.grid.bc);
  grid["length"] = traj.grid.length;
  grid["cells"] = traj.grid.cells;
  grid["h"] = traj.grid.h;
  j["grid"] = std::move(grid);
  j["scheme"] = to_string(traj.scheme);
  j["dt"] = traj.dt;
  j["names"] = traj.names;
  Json status;
  status["kind"] = to_string(traj.status);
  status["time"] = traj.status_time;
  j["status"] = std::move(status);
  Json steps = Json::array();
  for (std::size_t s = 0; s < traj.steps.size(); ++s) {
    if (s % every != 0 && s + 1 != traj.steps.size()) continue;
    const auto& r = traj.steps[s];
    Json rec;
    rec["t"] = r.time;
    rec["min"] = numbers(r.min);
    rec["max"] = numbers(r.max);
    if (!r.min_ratio.empty()) rec["min_ratio"] = numbers(r.min_ratio);
    steps.push_back(std::move(rec));
  }
  j["steps"] = std::move(steps);
  return j;
}

std::string to_csv(const Trajectory& traj, const ModelSpec& model) {
  std::ostringstream out;
  out << 't';
  for (const auto& name : model.names) out << ',' << name;
  out << '\n';
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    out << format_double(traj.times[s]);
    for (double v : traj.states[s]) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

std::string to_csv(const SpaceTimeTrajectory& traj) {
  std::ostringstream out;
  out << "t,x,species,value\n";
  for (const auto& frame : traj.frames) {
    for (std::size_t i = 0; i < frame.species; ++i) {
      const auto row = frame.row(i);
      for (std::size_t k = 0; k < row.size(); ++k) {
        out << format_double(frame.time) << ',' << format_double(traj.grid.nodes[k]) << ',' << traj.names[i] << ','
            << format_double(row[k]) << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace orthant
