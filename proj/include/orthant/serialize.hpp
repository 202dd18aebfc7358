#pragma once

// Stable machine-readable forms. Field order is fixed (ordered_json) so that
// identical inputs serialise byte-for-byte identically. Infinite values are
// written as the string "inf".

#include <string>

#include "json.hpp"
#include "orthant/conditions.hpp"
#include "orthant/ode.hpp"
#include "orthant/pde.hpp"

namespace orthant {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const Rectangle& rect);
Json to_json(const Certificate& cert);
Json to_json(const Trajectory& traj, const ModelSpec& model);
Json to_json(const GronwallReport& report);
Json to_json(const Counterexample& cex, const ModelSpec& model);
Json to_json(const PositivityReport& report, const std::vector<std::string>& names);
Json to_json(const Eigenpair& eigen);

Json to_json(const HomogeneityReport& report);
Json to_json(const DecayReport& report, const std::vector<std::string>& names);

/// Per-step spatial minima and maxima, thinned to every `every`-th step.
Json summary_json(const SpaceTimeTrajectory& traj, std::size_t every = 1);

/// `t,<name_1>,...,<name_n>` with one row per accepted step.
std::string to_csv(const Trajectory& traj, const ModelSpec& model);

/// Long format `t,x,species,value` over the saved frames.
std::string to_csv(const SpaceTimeTrajectory& traj);

std::string format_double(double v);

}  // namespace orthant
