#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "orthant/field.hpp"
#include "orthant/rectangle.hpp"

namespace orthant {

/// Face values in [-tol, 0) on a low face (or (0, tol] on a high face) are
/// reported as marginal rather than violated.
inline constexpr double kWitnessTolerance = 1e-12;

enum class Verdict { satisfied, violated, marginal };
enum class CheckKind { quasipositivity, rectangle, nonautonomous };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(CheckKind k) noexcept;

struct SamplingOptions {
  double clip = 10.0;
  std::size_t grid_per_axis = 17;
  std::size_t random_samples = 512;
  std::uint64_t seed = 0;
  /// Pattern-search sweeps spent on the worst sample of each face.
  int refine_iterations = 200;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 0.0;
};

/// Worst sampled value on one face: the minimum of f_i on a low face, the
/// maximum on a high face.
struct FaceRecord {
  Face face;
  double value = 0.0;
  std::vector<double> location;
  std::optional<double> time;
  std::size_t samples = 0;
  Verdict verdict = Verdict::satisfied;
};

struct Witness {
  Face face;
  std::vector<double> point;
  double value = 0.0;
  std::optional<double> time;
};

/// Outcome of a sampled face-condition check. `satisfied` only means no
/// sampled point violated the inequality; `violated` carries an exact witness.
struct Certificate {
  CheckKind kind = CheckKind::quasipositivity;
  Verdict verdict = Verdict::satisfied;
  /// All face extrema strictly inside (the strict form of the rectangle conditions).
  bool strict = false;
  std::vector<FaceRecord> faces;
  std::optional<Witness> witness;
  /// The bounded region actually sampled (unbounded axes clipped).
  Rectangle region;
  std::optional<TimeWindow> time_window;
  SamplingOptions sampling;
  std::size_t dimension = 0;
};

Certificate check_quasipositivity(const ModelSpec& model, const SamplingOptions& options = {});

/// Low faces require f_i >= 0, high faces (finite beta only) f_i <= 0. Axes
/// with beta = +inf are sampled on [alpha, alpha + clip].
Certificate check_rectangle(const ModelSpec& model, const Rectangle& rect, const SamplingOptions& options = {});

Certificate check_nonautonomous(const ModelSpec& model, TimeWindow window, const SamplingOptions& options = {});

struct SearchResult {
  std::vector<double> point;
  double value = 0.0;
  double time = 0.0;
  int iterations = 0;
};

/// Derivative-free coordinate pattern search on the face `face` of `bounds`
/// (which must be bounded). Low faces minimise f_i, high faces maximise it;
/// the objective never gets worse than at `start`. With a time window the
/// search also moves in t.
SearchResult refine_witness(const ModelSpec& model, Face face, std::span<const double> start,
                            const Rectangle& bounds, int max_iters,
                            std::optional<TimeWindow> window = std::nullopt, double start_time = 0.0);

}  // namespace orthant
