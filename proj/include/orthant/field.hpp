#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orthant/expr.hpp"
#include "orthant/rectangle.hpp"

namespace orthant {

enum class BoundaryCondition { neumann, dirichlet };

std::string_view to_string(BoundaryCondition bc) noexcept;

struct PdeSettings {
  BoundaryCondition bc = BoundaryCondition::neumann;
  double length = 1.0;
  std::size_t cells = 64;

  bool operator==(const PdeSettings&) const = default;
};

/// A validated n-component vector field du/dt = F(t, u), optionally with
/// diagonal diffusion coefficients for the reaction-diffusion setting.
struct ModelSpec {
  std::vector<std::string> names;
  std::vector<Expression> f;
  std::optional<std::vector<double>> diffusion;
  bool time_dependent = false;
  std::optional<Rectangle> rectangle;
  std::optional<PdeSettings> pde;

  std::size_t dimension() const noexcept { return names.size(); }
};

/// Builds and validates a model from component sources.
ModelSpec make_model(std::vector<std::string> names, const std::vector<std::string>& sources,
                     std::optional<std::vector<double>> diffusion = std::nullopt);

/// Parses the TOML model-file format (docs/model-file.md). Unknown keys are
/// rejected; errors name the offending key path.
ModelSpec load_model(std::string_view document);
ModelSpec load_model_file(const std::filesystem::path& path);

/// Serialises a model back to the model-file format; load_model inverts it.
std::string to_model_file(const ModelSpec& model);

void evaluate_field(const ModelSpec& model, double time, std::span<const double> state,
                    std::span<double> out) noexcept;
std::vector<double> evaluate_field(const ModelSpec& model, double time, std::span<const double> state);

/// Applied to sampled Lipschitz constants wherever a true upper bound is needed.
inline constexpr double kLipschitzSafetyFactor = 1.25;

struct LipschitzEstimate {
  double M = 0.0;
  Rectangle box;
  std::size_t samples = 0;
  std::string method = "sampled-fd-jacobian-row-sum-inf-norm";
};

/// Max over sampled x in `box` of max_i sum_j |df_i/dx_j(x)| using central
/// differences. Samples: the tensor grid with grid_per_axis nodes per axis
/// plus random_samples uniform points drawn from `seed`. This bounds the
/// infinity-norm Lipschitz constant from below.
LipschitzEstimate estimate_lipschitz(const ModelSpec& model, const Rectangle& box,
                                     std::size_t grid_per_axis, std::size_t random_samples,
                                     std::uint64_t seed, double time = 0.0);

/// Bounding box of `states`, extended to touch every coordinate hyperplane
/// x_i = 0 and inflated by 10% of its width per side.
Rectangle lipschitz_box(std::span<const std::vector<double>> states);

/// M / (f0_norm + 2 L M): any delta below this is a guaranteed existence time
/// for initial sup-norm M at radius 2M.
double existence_horizon(double initial_sup_norm, double f0_norm, double lipschitz);

}  // namespace orthant
