#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orthant/conditions.hpp"
#include "orthant/field.hpp"

namespace orthant {

struct RectangleCase {
  Rectangle rect;
  Verdict expected = Verdict::satisfied;
  std::string verified_by;
};

/// Built-in model with ground-truth verdicts. For time-dependent entries the
/// expected verdict refers to the non-autonomous check on `time_window`.
struct ZooEntry {
  std::string name;
  ModelSpec model;
  Verdict expected = Verdict::satisfied;
  std::optional<TimeWindow> time_window;
  std::vector<RectangleCase> rectangles;
  std::optional<Witness> known_witness;
  std::string note;
  std::string verified_by;
};

const std::vector<ZooEntry>& list_models();

/// Throws Error(not_found) for unknown names.
const ZooEntry& find_model(std::string_view name);

/// Model-file text for an entry; load_model accepts it unchanged.
std::string export_model_file(const ZooEntry& entry);

}  // namespace orthant
