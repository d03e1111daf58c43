#pragma once

#include "solvable/app/config.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <vector>

namespace solvable::app {

/// What one orbit point holds. Iterated orbits hold labeled states. Closed
/// orbits of x hold unordered roots, of z/w the image pair of states, and fall
/// back to the symmetric functions (y1, y2) when exact root extraction fails.
enum class EntryKind { state, roots, image, symmetric };

struct OrbitEntry {
  TimeIndex l = 0;
  EntryKind kind = EntryKind::state;
  std::vector<std::array<Scalar, 2>> values;  // two rows for image, one otherwise
  std::optional<std::array<Scalar, 2>> residual;
};

struct Orbit {
  Method method = Method::iterated;
  std::vector<OrbitEntry> entries;
};

struct Comparison {
  bool exact = true;
  bool equal = true;               // exact backend: bit-exact agreement at every l
  double max_relative_error = 0;   // floating backend
  bool within_tolerance = true;    // floating backend
  std::size_t symmetric_only = 0;  // points compared through (y1, y2) only
};

struct OrbitRecord {
  RunConfig config;
  std::vector<Orbit> orbits;
  std::optional<Comparison> comparison;  // present iff method == both
};

/// Deterministic for a fixed config. Throws ConfigError / DomainError /
/// ResourceError / ShiftExhausted with a message naming the precondition.
OrbitRecord run(const RunConfig& config);

nlohmann::ordered_json to_json(const OrbitRecord& record);
OrbitRecord record_from_json(const nlohmann::json& j);

}  // namespace solvable::app
