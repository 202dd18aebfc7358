// orthant-guard command-line front end. Talks to the library only through
// the C interface in orthant_guard.h.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orthant_guard.h"

namespace {

using Json = nlohmann::ordered_json;

enum Exit : int {
  kOk = 0,
  kUsage = 1,
  kViolated = 2,
  kMarginal = 3,
  kBlowUp = 4,
  kWentNegative = 5,
  kNothingToConstruct = 6,
  kNotFound = 7,
  kStepFailure = 8,
};

// Raised for any failure that maps to exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(og_status s) {
  if (s != OG_OK) throw UsageError(og_last_error());
}

std::string take(char* s) {
  std::string out = s ? s : "";
  og_string_free(s);
  return out;
}

Json take_json(char* s) { return Json::parse(take(s)); }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using ModelPtr = std::unique_ptr<og_model, Deleter<og_model, og_model_free>>;
using CertPtr = std::unique_ptr<og_certificate, Deleter<og_certificate, og_certificate_free>>;
using TrajPtr = std::unique_ptr<og_trajectory, Deleter<og_trajectory, og_trajectory_free>>;
using CexPtr = std::unique_ptr<og_counterexample, Deleter<og_counterexample, og_counterexample_free>>;
using RunPtr = std::unique_ptr<og_pde_run, Deleter<og_pde_run, og_pde_run_free>>;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

double parse_number(const std::string& text, const std::string& what) {
  if (text == "inf" || text == "+inf") return std::numeric_limits<double>::infinity();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || !std::isfinite(v)) throw UsageError(what + ": not a number: `" + text + "`");
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    const auto b = item.find_last_not_of(" \t");
    out.push_back(parse_number(a == std::string::npos ? "" : item.substr(a, b - a + 1), what));
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + fmt_short(xs[i]);
  return s;
}

struct ZooInfo {
  std::optional<std::pair<double, double>> window;
};

std::optional<ZooInfo> zoo_info(const std::string& name) {
  char* raw = nullptr;
  check(og_zoo_to_json(&raw));
  for (const auto& e : take_json(raw)) {
    if (e["name"] != name) continue;
    ZooInfo info;
    if (e.contains("time_interval")) {
      info.window = {e["time_interval"][0].get<double>(), e["time_interval"][1].get<double>()};
    }
    return info;
  }
  return std::nullopt;
}

struct LoadedModel {
  ModelPtr handle;
  std::optional<ZooInfo> zoo;
  std::size_t n = 0;
};

LoadedModel load(const std::string& path) {
  LoadedModel m;
  og_model* raw = nullptr;
  if (path.rfind("zoo:", 0) == 0) {
    const auto name = path.substr(4);
    check(og_model_from_zoo(name.c_str(), &raw));
    m.zoo = zoo_info(name);
  } else {
    check(og_model_load_file(path.c_str(), &raw));
  }
  m.handle.reset(raw);
  m.n = og_model_dimension(raw);
  return m;
}

struct Common {
  std::string model;
  std::string format = "json";
  std::string out;
  bool timing = false;
};

struct SamplingFlags {
  double clip = 10.0;
  std::size_t grid = 17;
  std::size_t random = 512;
  std::uint64_t seed = 0;

  og_sampling get() const {
    og_sampling s;
    og_sampling_default(&s);
    s.clip = clip;
    s.grid_per_axis = grid;
    s.random_samples = random;
    s.seed = seed;
    return s;
  }

  void add(CLI::App* app) {
    app->add_option("--clip", clip, "Sampling bound B for unbounded axes")->capture_default_str();
    app->add_option("--grid", grid, "Grid nodes per free axis")->capture_default_str();
    app->add_option("--random", random, "Random samples per face")->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  void record(Json& p) const {
    p["clip"] = clip;
    p["grid"] = grid;
    p["random"] = random;
    p["seed"] = seed;
  }
};

Json report_header(const std::string& command, const Common& c) {
  Json r;
  r["schema"] = 1;
  r["tool"] = "orthant-guard";
  r["version"] = og_version();
  r["command"] = command;
  Json p;
  p["model"] = c.model;
  r["parameters"] = std::move(p);
  return r;
}

void write_output(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot open `" + c.out + "` for writing");
  f << text;
  if (!f) throw UsageError("failed writing `" + c.out + "`");
}

void finish(const Common& c, Json& report, int code, std::chrono::steady_clock::time_point start,
            const std::string& text) {
  report["exit_code"] = code;
  if (c.timing) {
    report["timing"] = {
        {"wall_seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  }
  if (c.format == "json") {
    write_output(c, report.dump(2) + "\n");
  } else {
    write_output(c, text);
  }
}

int verdict_exit(og_verdict v) {
  switch (v) {
    case OG_SATISFIED: return kOk;
    case OG_VIOLATED: return kViolated;
    case OG_MARGINAL: return kMarginal;
  }
  return kMarginal;
}

std::string certificate_text(const Json& cert) {
  std::ostringstream out;
  out << "check: " << cert["check"].get<std::string>() << "\n";
  out << "verdict: " << cert["verdict"].get<std::string>() << (cert["strict"].get<bool>() ? " (strict)" : "")
      << "\n";
  for (const auto& f : cert["faces"]) {
    out << "  face " << f["face"]["index"].get<int>() << " " << f["face"]["side"].get<std::string>() << ": "
        << f["extremum"].get<std::string>() << " = " << f["value"].dump() << " at " << f["location"].dump();
    if (f.contains("time")) out << " t = " << f["time"].dump();
    out << " [" << f["verdict"].get<std::string>() << "]\n";
  }
  if (!cert["witness"].is_null()) {
    const auto& w = cert["witness"];
    out << "witness: face " << w["face"]["index"].get<int>() << " " << w["face"]["side"].get<std::string>()
        << " point " << w["point"].dump() << " value " << w["value"].dump();
    if (w.contains("time")) out << " t = " << w["time"].dump();
    out << "\n";
  }
  return out.str();
}

struct Certified {
  CertPtr cert;
  Json parameters;
};

Certified certify(const LoadedModel& m, const SamplingFlags& sampling, bool rectangle, const std::string& alpha_s,
                  const std::string& beta_s, std::optional<double> t0, std::optional<double> t1) {
  Certified out;
  const auto s = sampling.get();
  sampling.record(out.parameters);
  og_certificate* raw = nullptr;
  if (og_model_is_time_dependent(m.handle.get())) {
    if (rectangle || !alpha_s.empty() || !beta_s.empty()) {
      throw UsageError("rectangle checks need an autonomous model");
    }
    double a = 0.0, b = 1.0;
    if (m.zoo && m.zoo->window) std::tie(a, b) = *m.zoo->window;
    if (t0) a = *t0;
    if (t1) b = *t1;
    out.parameters["t0"] = a;
    out.parameters["t1"] = b;
    check(og_check_nonautonomous(m.handle.get(), a, b, &s, &raw));
  } else if (rectangle || !alpha_s.empty() || !beta_s.empty()) {
    std::vector<double> alpha(m.n), beta(m.n);
    if (og_model_has_rectangle(m.handle.get())) {
      check(og_model_rectangle(m.handle.get(), alpha.data(), beta.data(), m.n));
    } else if (alpha_s.empty() || beta_s.empty()) {
      throw UsageError("model has no [rectangle] table; pass --alpha and --beta");
    }
    if (!alpha_s.empty()) alpha = parse_list(alpha_s, "--alpha");
    if (!beta_s.empty()) beta = parse_list(beta_s, "--beta");
    if (alpha.size() != m.n || beta.size() != m.n) {
      throw UsageError("rectangle bounds need " + std::to_string(m.n) + " entries");
    }
    Json rect;
    rect["alpha"] = alpha;
    Json b = Json::array();
    for (double v : beta) b.push_back(std::isinf(v) ? Json("inf") : Json(v));
    rect["beta"] = std::move(b);
    out.parameters["rectangle"] = std::move(rect);
    check(og_check_rectangle(m.handle.get(), alpha.data(), beta.data(), m.n, &s, &raw));
  } else {
    check(og_check_quasipositivity(m.handle.get(), &s, &raw));
  }
  out.cert.reset(raw);
  return out;
}

void merge(Json& into, const Json& from) {
  for (auto it = from.begin(); it != from.end(); ++it) into[it.key()] = it.value();
}

int trajectory_exit(const og_trajectory* t) {
  if (og_trajectory_first_negative(t, nullptr, nullptr)) return kWentNegative;
  switch (og_trajectory_status(t, nullptr)) {
    case OG_RUN_COMPLETED: return kOk;
    case OG_RUN_BLOW_UP: return kBlowUp;
    case OG_RUN_STEP_FAILURE: return kStepFailure;
  }
  return kStepFailure;
}

std::string trajectory_text(const Json& traj) {
  std::ostringstream out;
  out << "status: " << traj["status"]["kind"].get<std::string>() << " at t = " << traj["status"]["time"].dump()
      << "\n";
  out << "steps: " << traj["times"].size() << " (rejected " << traj["rejected_steps"].dump() << ")\n";
  for (const auto& e : traj["events"]) {
    out << "event: " << e["kind"].get<std::string>() << " " << e["name"].get<std::string>()
        << " at t = " << e["time"].dump() << "\n";
  }
  if (!traj["states"].empty()) out << "final state: " << traj["states"].back().dump() << "\n";
  return out.str();
}

// check

struct CheckArgs {
  Common c;
  SamplingFlags sampling;
  bool rectangle = false;
  std::string alpha, beta;
  std::optional<double> t0, t1;
};

int run_check(const CheckArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = load(a.c.model);
  auto certified = certify(m, a.sampling, a.rectangle, a.alpha, a.beta, a.t0, a.t1);
  auto report = report_header("check", a.c);
  merge(report["parameters"], certified.parameters);
  report["parameters"]["format"] = a.c.format;
  const auto cert = take_json([&] {
    char* raw = nullptr;
    check(og_certificate_to_json(certified.cert.get(), &raw));
    return raw;
  }());
  report["certificate"] = cert;
  const int code = verdict_exit(og_certificate_verdict(certified.cert.get()));
  finish(a.c, report, code, start, certificate_text(cert));
  return code;
}

// simulate

struct SimulateArgs {
  Common c;
  std::string u0;
  double t_end = 10.0;
  double rtol = 1e-8, atol = 1e-10;
  double t0 = 0.0;
};

int run_simulate(const SimulateArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = load(a.c.model);
  const auto u0 = parse_list(a.u0, "--u0");
  if (u0.size() != m.n) throw UsageError("--u0 needs " + std::to_string(m.n) + " entries");
  og_ode_options opts{a.rtol, a.atol, a.t0};
  og_trajectory* raw = nullptr;
  check(og_integrate(m.handle.get(), u0.data(), u0.size(), a.t_end, &opts, &raw));
  TrajPtr traj(raw);
  const int code = trajectory_exit(traj.get());
  if (a.c.format == "csv") {
    char* csv = nullptr;
    check(og_trajectory_to_csv(traj.get(), &csv));
    write_output(a.c, take(csv));
    return code;
  }
  auto report = report_header("simulate", a.c);
  auto& p = report["parameters"];
  p["u0"] = u0;
  p["t_end"] = a.t_end;
  p["rtol"] = a.rtol;
  p["atol"] = a.atol;
  p["t0"] = a.t0;
  p["format"] = a.c.format;
  char* tj = nullptr;
  check(og_trajectory_to_json(traj.get(), &tj));
  report["trajectory"] = take_json(tj);
  finish(a.c, report, code, start, trajectory_text(report["trajectory"]));
  return code;
}

// pde

struct PdeArgs {
  Common c;
  std::string bc;
  std::optional<std::size_t> cells;
  std::optional<double> length;
  std::string scheme = "imex";
  double dt = 1e-3;
  double t_end = 1.0;
  std::vector<std::string> ic;
  std::size_t save_every = 1;
  std::size_t every = 1;
};

std::vector<std::string> split_ic(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& s : raw) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
      if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
    }
  }
  return out;
}

std::string pde_text(const Json& summary) {
  std::ostringstream out;
  out << "grid: " << summary["grid"]["bc"].get<std::string>() << ", " << summary["grid"]["cells"].dump()
      << " cells, h = " << summary["grid"]["h"].dump() << "\n";
  out << "scheme: " << summary["scheme"].get<std::string>() << ", dt = " << summary["dt"].dump() << "\n";
  out << "status: " << summary["status"]["kind"].get<std::string>() << " at t = "
      << summary["status"]["time"].dump() << "\n";
  for (const auto& s : summary["positivity"]["species"]) {
    out << "species " << s["name"].get<std::string>() << ": global min " << s["global_min"].dump();
    if (!s["strict_min"].is_null()) out << ", min for t >= probe " << s["strict_min"].dump();
    if (!s["ratio_min"].is_null()) out << ", min u/phi1 for t >= probe " << s["ratio_min"].dump();
    out << "\n";
  }
  const auto& h = summary["homogeneity"];
  out << "homogeneity: max spatial deviation " << h["max_spatial_deviation"].dump();
  if (!h["ode_deviation"].is_null()) out << ", max deviation from ODE " << h["ode_deviation"].dump();
  out << "\n";
  if (summary.contains("decay")) {
    out << "lambda1: " << summary["eigenpair"]["lambda1"].dump() << "\n";
    for (const auto& d : summary["decay"]) {
      out << "decay " << d["name"].get<std::string>() << ": observed " << d["observed_rate"].dump()
          << ", discrete " << d["discrete_rate"].dump() << ", continuum " << d["continuum_rate"].dump() << "\n";
    }
  }
  return out.str();
}

int run_pde(const PdeArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = load(a.c.model);
  if (!og_model_has_diffusion(m.handle.get())) throw UsageError("model has no diffusion coefficients `d`");
  og_pde_options o;
  og_pde_options_default(m.handle.get(), &o);
  if (!a.bc.empty()) {
    if (a.bc == "neumann") o.bc = OG_BC_NEUMANN;
    else if (a.bc == "dirichlet") o.bc = OG_BC_DIRICHLET;
    else throw UsageError("--bc must be neumann or dirichlet");
  }
  if (a.cells) o.cells = *a.cells;
  if (a.length) o.length = *a.length;
  if (a.scheme == "imex") o.scheme = OG_SCHEME_IMEX;
  else if (a.scheme == "explicit") o.scheme = OG_SCHEME_EXPLICIT;
  else throw UsageError("--scheme must be imex or explicit");
  o.dt = a.dt;
  o.t_end = a.t_end;
  o.save_every = a.save_every;
  const auto ic = split_ic(a.ic);
  if (ic.empty()) throw UsageError("--ic is required (one expression in x per species, or one for all)");
  std::vector<const char*> ptrs;
  for (const auto& s : ic) ptrs.push_back(s.c_str());
  og_pde_run* raw = nullptr;
  check(og_pde_simulate(m.handle.get(), &o, ptrs.data(), ptrs.size(), &raw));
  RunPtr run(raw);

  double gmin = 0.0;
  check(og_pde_run_global_min(run.get(), &gmin));
  int code = kOk;
  if (gmin < -1e-8) code = kWentNegative;
  else if (og_pde_run_status(run.get(), nullptr) == OG_RUN_BLOW_UP) code = kBlowUp;

  if (a.c.format == "csv") {
    char* csv = nullptr;
    check(og_pde_run_to_csv(run.get(), &csv));
    write_output(a.c, take(csv));
    return code;
  }
  auto report = report_header("pde", a.c);
  auto& p = report["parameters"];
  p["bc"] = o.bc == OG_BC_DIRICHLET ? "dirichlet" : "neumann";
  p["cells"] = o.cells;
  p["length"] = o.length;
  p["scheme"] = a.scheme;
  p["dt"] = o.dt;
  p["t_end"] = o.t_end;
  p["ic"] = ic;
  p["save_every"] = o.save_every;
  p["every"] = a.every;
  p["format"] = a.c.format;
  char* sj = nullptr;
  check(og_pde_run_to_json(run.get(), a.every, &sj));
  report["pde"] = take_json(sj);
  finish(a.c, report, code, start, pde_text(report["pde"]));
  return code;
}

// counterexample

struct CexArgs {
  Common c;
  SamplingFlags sampling;
  double a = 0.01;
  double t_end = 10.0;
  std::optional<double> from_t0;
  std::optional<double> t0, t1;
  double rtol = 1e-8, atol = 1e-10;
};

int run_counterexample(const CexArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  const auto m = load(a.c.model);
  auto certified = certify(m, a.sampling, false, "", "", a.t0, a.t1);
  auto report = report_header("counterexample", a.c);
  auto& p = report["parameters"];
  merge(p, certified.parameters);
  p["a"] = a.a;
  p["t_end"] = a.t_end;
  p["from_t0"] = a.from_t0 ? Json(*a.from_t0) : Json(nullptr);
  p["rtol"] = a.rtol;
  p["atol"] = a.atol;
  p["format"] = a.c.format;
  char* cj = nullptr;
  check(og_certificate_to_json(certified.cert.get(), &cj));
  report["certificate"] = take_json(cj);

  const auto verdict = og_certificate_verdict(certified.cert.get());
  if (verdict != OG_VIOLATED) {
    const int code = verdict == OG_SATISFIED ? kNothingToConstruct : kMarginal;
    report["counterexample"] = nullptr;
    finish(a.c, report, code, start,
           std::string("verdict: ") + report["certificate"]["verdict"].get<std::string>() +
               "; nothing to construct\n");
    return code;
  }

  og_counterexample_options o;
  og_counterexample_options_default(&o);
  o.integration.rel_tol = a.rtol;
  o.integration.abs_tol = a.atol;
  if (a.from_t0) {
    o.has_start_time = 1;
    o.start_time = *a.from_t0;
  }
  og_counterexample* raw = nullptr;
  const og_status s = og_find_counterexample(m.handle.get(), certified.cert.get(), a.a, a.t_end, &o, &raw);
  if (s == OG_ERR_NOT_FOUND) {
    report["counterexample"] = nullptr;
    report["error"] = og_last_error();
    finish(a.c, report, kNotFound, start, std::string("no counterexample: ") + og_last_error() + "\n");
    return kNotFound;
  }
  check(s);
  CexPtr cex(raw);
  char* xj = nullptr;
  check(og_counterexample_to_json(cex.get(), &xj));
  report["counterexample"] = take_json(xj);

  const auto& x = report["counterexample"];
  std::ostringstream text;
  std::vector<double> u0 = x["u0"].get<std::vector<double>>();
  text << "u0: " << join(u0) << " (a = " << fmt_short(x["a"].get<double>()) << ", start t = "
       << fmt(x["start_time"].get<double>()) << ")\n";
  text << "went negative: " << x["crossing"]["name"].get<std::string>() << " at t = "
       << fmt(x["crossing"]["absolute_time"].get<double>()) << " (" << fmt(x["crossing"]["time"].get<double>())
       << " after the start)\n";
  finish(a.c, report, kOk, start, text.str());
  return kOk;
}

// zoo

int run_zoo_list(const Common& c) {
  char* raw = nullptr;
  check(og_zoo_to_json(&raw));
  const auto zoo = take_json(raw);
  if (c.format == "json") {
    Json r;
    r["schema"] = 1;
    r["tool"] = "orthant-guard";
    r["version"] = og_version();
    r["command"] = "zoo list";
    r["models"] = zoo;
    write_output(c, r.dump(2) + "\n");
  } else {
    std::ostringstream out;
    for (const auto& e : zoo) {
      out << e["name"].get<std::string>() << "  [" << e["expected"].get<std::string>() << "]  "
          << e["note"].get<std::string>() << "\n";
    }
    write_output(c, out.str());
  }
  return kOk;
}

int run_zoo_export(const std::string& name, const Common& c) {
  char* raw = nullptr;
  check(og_zoo_export(name.c_str(), &raw));
  write_output(c, take(raw));
  return kOk;
}

void add_common(CLI::App* app, Common& c, bool needs_model, std::vector<std::string> formats) {
  if (needs_model) {
    app->add_option("model", c.model, "Model file, or zoo:<name> for a built-in model")->required();
  }
  app->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember(formats))
      ->capture_default_str();
  app->add_option("--out", c.out, "Write output to this path instead of stdout");
  app->add_flag("--timing", c.timing, "Include wall-clock timing in JSON reports");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positivity and invariant-region checks for reaction-diffusion systems", "orthant-guard"};
  app.set_version_flag("--version", std::string(og_version()));
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Check the face conditions of a model");
  add_common(check_cmd, check_args.c, true, {"json", "text"});
  check_args.sampling.add(check_cmd);
  check_cmd->add_flag("--rectangle", check_args.rectangle, "Check the model's [rectangle] instead of the orthant");
  check_cmd->add_option("--alpha", check_args.alpha, "Rectangle lower corner, comma separated");
  check_cmd->add_option("--beta", check_args.beta, "Rectangle upper corner, comma separated (inf allowed)");
  check_cmd->add_option("--t0", check_args.t0, "Start of the time window (time-dependent models)");
  check_cmd->add_option("--t1", check_args.t1, "End of the time window (time-dependent models)");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Integrate the ODE system");
  add_common(sim_cmd, sim_args.c, true, {"json", "text", "csv"});
  sim_cmd->add_option("--u0", sim_args.u0, "Initial state, comma separated")->required();
  sim_cmd->add_option("--t-end", sim_args.t_end, "Integration horizon")->capture_default_str();
  sim_cmd->add_option("--rtol", sim_args.rtol, "Relative tolerance")->capture_default_str();
  sim_cmd->add_option("--atol", sim_args.atol, "Absolute tolerance")->capture_default_str();
  sim_cmd->add_option("--t0", sim_args.t0, "Initial time for time-dependent models")->capture_default_str();

  PdeArgs pde_args;
  auto* pde_cmd = app.add_subcommand("pde", "Simulate the reaction-diffusion system on (0, length)");
  add_common(pde_cmd, pde_args.c, true, {"json", "text", "csv"});
  pde_cmd->add_option("--bc", pde_args.bc, "neumann or dirichlet (default from the model's [pde] table)");
  pde_cmd->add_option("--cells", pde_args.cells, "Number of grid nodes");
  pde_cmd->add_option("--length", pde_args.length, "Domain length");
  pde_cmd->add_option("--scheme", pde_args.scheme, "imex or explicit")->capture_default_str();
  pde_cmd->add_option("--dt", pde_args.dt, "Time step")->capture_default_str();
  pde_cmd->add_option("--t-end", pde_args.t_end, "Final time")->capture_default_str();
  pde_cmd->add_option("--ic", pde_args.ic, "Initial condition in x; repeat per species or separate with ';'")
      ->take_all();
  pde_cmd->add_option("--save-every", pde_args.save_every, "Keep every k-th frame for CSV output")
      ->capture_default_str();
  pde_cmd->add_option("--every", pde_args.every, "Thin the JSON step summary to every k-th step")
      ->capture_default_str();

  CexArgs cex_args;
  auto* cex_cmd = app.add_subcommand("counterexample", "Build an initial state that leaves the orthant");
  add_common(cex_cmd, cex_args.c, true, {"json", "text"});
  cex_args.sampling.add(cex_cmd);
  cex_cmd->add_option("--a", cex_args.a, "Offset added to the witness point")->capture_default_str();
  cex_cmd->add_option("--t-end", cex_args.t_end, "Integration horizon")->capture_default_str();
  cex_cmd->add_option("--from-t0", cex_args.from_t0, "Start the trajectory at this time");
  cex_cmd->add_option("--t0", cex_args.t0, "Start of the check window (time-dependent models)");
  cex_cmd->add_option("--t1", cex_args.t1, "End of the check window (time-dependent models)");
  cex_cmd->add_option("--rtol", cex_args.rtol, "Relative tolerance")->capture_default_str();
  cex_cmd->add_option("--atol", cex_args.atol, "Absolute tolerance")->capture_default_str();

  auto* zoo_cmd = app.add_subcommand("zoo", "Built-in models");
  zoo_cmd->require_subcommand(1);
  Common zoo_list_c;
  zoo_list_c.format = "text";
  auto* zoo_list = zoo_cmd->add_subcommand("list", "List built-in models");
  add_common(zoo_list, zoo_list_c, false, {"json", "text"});
  Common zoo_export_c;
  std::string zoo_name;
  auto* zoo_export = zoo_cmd->add_subcommand("export", "Print a built-in model as a model file");
  zoo_export->add_option("name", zoo_name, "Model name")->required();
  zoo_export->add_option("--out", zoo_export_c.out, "Write to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check_cmd) return run_check(check_args);
    if (*sim_cmd) return run_simulate(sim_args);
    if (*pde_cmd) return run_pde(pde_args);
    if (*cex_cmd) return run_counterexample(cex_args);
    if (*zoo_list) return run_zoo_list(zoo_list_c);
    if (*zoo_export) return run_zoo_export(zoo_name, zoo_export_c);
  } catch (const UsageError& e) {
    std::cerr << "orthant-guard: error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "orthant-guard: error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
