#include "orthant/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "orthant/error.hpp"
#include "orthant/sampling.hpp"

namespace orthant {

namespace {

double face_coordinate(const Rectangle& bounds, Face face) {
  return face.side == Side::low ? bounds.alpha[face.index] : bounds.beta[face.index];
}

// Minimised by every search: f_i on low faces, -f_i on high faces.
double objective(double value, Face face) { return face.side == Side::low ? value : -value; }

std::string describe_point(std::span<const double> x, std::optional<double> t) {
  std::ostringstream out;
  out.precision(17);
  out << '(';
  for (std::size_t k = 0; k < x.size(); ++k) out << (k ? ", " : "") << x[k];
  out << ')';
  if (t) out << " at t=" << *t;
  return out.str();
}

Verdict face_verdict(double value, Face face) {
  const double v = objective(value, face);
  if (v < -kWitnessTolerance) return Verdict::violated;
  if (v < 0.0) return Verdict::marginal;
  return Verdict::satisfied;
}

// Lexicographic order on (point, time); used only to break exact ties.
bool lex_less(std::span<const double> a, double ta, std::span<const double> b, double tb) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] != b[k]) return a[k] < b[k];
  }
  return ta < tb;
}

double grid_node(double lo, double hi, std::size_t k, std::size_t count) {
  if (count <= 1) return 0.5 * (lo + hi);
  if (k + 1 == count) return hi;
  return lo + (static_cast<double>(k) / static_cast<double>(count - 1)) * (hi - lo);
}

FaceRecord check_face(const ModelSpec& model, Face face, const Rectangle& bounds, std::optional<TimeWindow> window,
                      const SamplingOptions& options) {
  const std::size_t n = model.dimension();
  const std::size_t i = face.index;
  const Expression& fi = model.f[i];

  std::vector<std::size_t> free_axes;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != i) free_axes.push_back(j);
  }
  const std::size_t dims = free_axes.size() + (window ? 1 : 0);
  const std::size_t g = std::max<std::size_t>(options.grid_per_axis, 1);
  const double grid_total = std::pow(static_cast<double>(g), static_cast<double>(dims));
  if (grid_total > 1e7) throw Error(ErrorKind::invalid_argument, "face grid exceeds 1e7 points");

  std::vector<double> x(n), best_x(n);
  x[i] = face_coordinate(bounds, face);
  double t = window ? window->t0 : 0.0;
  double best_t = t;
  double best_obj = kInfinity;
  bool have_best = false;
  std::size_t samples = 0;

  auto consider = [&] {
    const double v = fi.eval(x, t);
    if (std::isnan(v)) {
      throw Error(ErrorKind::numeric, "NaN evaluating f" + std::to_string(i + 1) + " at " +
                                          describe_point(x, window ? std::optional<double>(t) : std::nullopt));
    }
    ++samples;
    const double o = objective(v, face);
    if (!have_best || o < best_obj || (o == best_obj && lex_less(x, t, best_x, best_t))) {
      best_obj = o;
      best_x = x;
      best_t = t;
      have_best = true;
    }
  };

  const auto total = static_cast<std::size_t>(grid_total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t j : free_axes) {
      x[j] = grid_node(bounds.alpha[j], bounds.beta[j], rem % g, g);
      rem /= g;
    }
    if (window) t = grid_node(window->t0, window->t1, rem % g, g);
    consider();
  }
  if (dims > 0) {
    const std::uint64_t stream = 2 * i + (face.side == Side::high ? 1 : 0);
    for (std::size_t s = 0; s < options.random_samples; ++s) {
      for (std::size_t j : free_axes) {
        x[j] = bounds.alpha[j] + counter_uniform(options.seed, stream, s, j) * (bounds.beta[j] - bounds.alpha[j]);
      }
      if (window) t = window->t0 + counter_uniform(options.seed, stream, s, n) * (window->t1 - window->t0);
      consider();
    }
  }

  const SearchResult refined =
      refine_witness(model, face, best_x, bounds, options.refine_iterations, window, best_t);

  FaceRecord rec;
  rec.face = face;
  rec.samples = samples;
  rec.location = refined.point;
  rec.value = refined.value;
  if (window) rec.time = refined.time;
  rec.verdict = face_verdict(rec.value, face);
  return rec;
}

Certificate assemble(const ModelSpec& model, CheckKind kind, const std::vector<Face>& faces, const Rectangle& region,
                     std::optional<TimeWindow> window, const SamplingOptions& options) {
  Certificate cert;
  cert.kind = kind;
  cert.region = region;
  cert.time_window = window;
  cert.sampling = options;
  cert.dimension = model.dimension();
  cert.faces.resize(faces.size());
  parallel_for(faces.size(), [&](std::size_t k) { cert.faces[k] = check_face(model, faces[k], region, window, options); });

  bool any_violated = false;
  bool any_marginal = false;
  cert.strict = true;
  const FaceRecord* worst = nullptr;
  for (const auto& rec : cert.faces) {
    any_violated = any_violated || rec.verdict == Verdict::violated;
    any_marginal = any_marginal || rec.verdict == Verdict::marginal;
    if (!(objective(rec.value, rec.face) > 0.0)) cert.strict = false;
    if (rec.verdict == Verdict::violated &&
        (!worst || objective(rec.value, rec.face) < objective(worst->value, worst->face))) {
      worst = &rec;
    }
  }
  cert.verdict = any_violated ? Verdict::violated : any_marginal ? Verdict::marginal : Verdict::satisfied;
  if (worst) cert.witness = Witness{worst->face, worst->location, worst->value, worst->time};
  return cert;
}

void require_clip(const SamplingOptions& options) {
  if (!(options.clip > 0.0) || !std::isfinite(options.clip)) {
    throw Error(ErrorKind::invalid_argument, "clip bound B must be positive and finite");
  }
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated: return "violated";
    case Verdict::marginal: return "marginal";
  }
  return "?";
}

std::string_view to_string(CheckKind k) noexcept {
  switch (k) {
    case CheckKind::quasipositivity: return "quasipositivity";
    case CheckKind::rectangle: return "rectangle";
    case CheckKind::nonautonomous: return "nonautonomous";
  }
  return "?";
}

Certificate check_quasipositivity(const ModelSpec& model, const SamplingOptions& options) {
  if (model.time_dependent) {
    throw Error(ErrorKind::precondition, "model depends on t; use the non-autonomous check");
  }
  require_clip(options);
  const std::size_t n = model.dimension();
  std::vector<Face> faces;
  for (std::size_t i = 0; i < n; ++i) faces.push_back({i, Side::low});
  return assemble(model, CheckKind::quasipositivity, faces, Rectangle::cube(n, 0.0, options.clip), std::nullopt,
                  options);
}

Certificate check_rectangle(const ModelSpec& model, const Rectangle& rect, const SamplingOptions& options) {
  if (model.time_dependent) {
    throw Error(ErrorKind::precondition, "rectangle check requires an autonomous model");
  }
  require_clip(options);
  const std::size_t n = model.dimension();
  if (rect.dimension() != n) {
    throw Error(ErrorKind::invalid_argument, "rectangle has " + std::to_string(rect.dimension()) +
                                                 " axes, model has " + std::to_string(n));
  }
  Rectangle region = rect;
  std::vector<Face> faces;
  for (std::size_t i = 0; i < n; ++i) {
    faces.push_back({i, Side::low});
    if (std::isfinite(rect.beta[i])) {
      faces.push_back({i, Side::high});
    } else {
      region.beta[i] = rect.alpha[i] + options.clip;
    }
  }
  return assemble(model, CheckKind::rectangle, faces, region, std::nullopt, options);
}

Certificate check_nonautonomous(const ModelSpec& model, TimeWindow window, const SamplingOptions& options) {
  if (!model.time_dependent) {
    throw Error(ErrorKind::precondition, "model does not depend on t; use the autonomous check");
  }
  if (!(window.t0 < window.t1) || !std::isfinite(window.t0) || !std::isfinite(window.t1)) {
    throw Error(ErrorKind::invalid_argument, "time interval requires finite t0 < t1");
  }
  require_clip(options);
  const std::size_t n = model.dimension();
  std::vector<Face> faces;
  for (std::size_t i = 0; i < n; ++i) faces.push_back({i, Side::low});
  return assemble(model, CheckKind::nonautonomous, faces, Rectangle::cube(n, 0.0, options.clip), window, options);
}

SearchResult refine_witness(const ModelSpec& model, Face face, std::span<const double> start, const Rectangle& bounds,
                            int max_iters, std::optional<TimeWindow> window, double start_time) {
  const std::size_t n = model.dimension();
  if (start.size() != n || bounds.dimension() != n || face.index >= n) {
    throw Error(ErrorKind::invalid_argument, "refine_witness: dimension mismatch");
  }
  if (!bounds.bounded()) throw Error(ErrorKind::invalid_argument, "refine_witness requires bounded search bounds");

  const Expression& fi = model.f[face.index];
  SearchResult res;
  res.point.assign(start.begin(), start.end());
  res.point[face.index] = face_coordinate(bounds, face);
  res.time = start_time;
  double current = objective(fi.eval(res.point, res.time), face);

  // Search dimensions: free state axes, then time (index n).
  std::vector<std::size_t> dims;
  for (std::size_t j = 0; j < n; ++j) {
    if (j != face.index) dims.push_back(j);
  }
  if (window) dims.push_back(n);
  auto lo = [&](std::size_t d) { return d == n ? window->t0 : bounds.alpha[d]; };
  auto hi = [&](std::size_t d) { return d == n ? window->t1 : bounds.beta[d]; };

  std::vector<double> step(dims.size());
  for (std::size_t k = 0; k < dims.size(); ++k) step[k] = 0.25 * (hi(dims[k]) - lo(dims[k]));

  std::vector<double> cand = res.point;
  for (; res.iterations < max_iters && !dims.empty(); ++res.iterations) {
    bool improved = false;
    for (std::size_t k = 0; k < dims.size(); ++k) {
      const std::size_t d = dims[k];
      const double base = d == n ? res.time : res.point[d];
      for (double dir : {1.0, -1.0}) {
        const double moved = std::clamp(base + dir * step[k], lo(d), hi(d));
        if (moved == base) continue;
        double t = res.time;
        cand = res.point;
        if (d == n) {
          t = moved;
        } else {
          cand[d] = moved;
        }
        const double v = objective(fi.eval(cand, t), face);
        if (v < current) {
          current = v;
          res.point = cand;
          res.time = t;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      bool all_small = true;
      for (std::size_t k = 0; k < dims.size(); ++k) {
        step[k] *= 0.5;
        if (step[k] > 1e-12 * (hi(dims[k]) - lo(dims[k]))) all_small = false;
      }
      if (all_small) break;
    }
  }
  res.value = fi.eval(res.point, res.time);
  return res;
}

}  // namespace orthant
