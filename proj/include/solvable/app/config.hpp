#pragma once

// Run configuration: which system, which backend, parameters, initial state
// and horizon. Stored on disk as JSON with every scalar written as a string in
// the Scalar text format.

#include "solvable/numerics.hpp"
#include "solvable/zsystem.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace solvable::app {

enum class SystemKind { y, x, z, w };
enum class RunMethod { iterated, closed, both };

std::string_view to_string(SystemKind kind);
std::string_view to_string(RunMethod method);
SystemKind parse_system(std::string_view text);
RunMethod parse_method(std::string_view text);

struct RunConfig {
  SystemKind system = SystemKind::y;
  BackendSpec backend = BackendSpec::exact();

  // y: alpha, beta, gamma. x: alpha, beta. z/w: alpha, beta and change, or
  // raw coefficients alone.
  std::optional<Scalar> alpha;
  std::optional<Scalar> beta;
  std::optional<Scalar> gamma;
  std::optional<std::array<Scalar, 4>> change;  // A11, A12, A21, A22
  std::optional<ZCoefficients> coefficients;
  std::optional<ShiftSequence> shift;  // w only

  std::array<Scalar, 2> initial;
  TimeIndex horizon = 0;
  RunMethod method = RunMethod::iterated;
  std::uint64_t seed = 0;
  std::size_t digit_budget = kDefaultDigitBudget;
  Tolerance tolerance;
};

/// Field-by-field equality (scalars compared by value within one backend).
bool operator==(const RunConfig& a, const RunConfig& b);

/// ConfigError naming the violated precondition.
void validate(const RunConfig& config);

nlohmann::ordered_json to_json(const RunConfig& config);
/// Parses and validates. Scalars may be strings or JSON integers.
RunConfig config_from_json(const nlohmann::json& j);

RunConfig load_config(const std::string& path);

/// Parameter objects implied by a validated config.
YParams y_params(const RunConfig& config);
XParams x_params(const RunConfig& config);
ZParams z_params(const RunConfig& config);

nlohmann::ordered_json to_json(const ShiftSequence& shift);
ShiftSequence shift_from_json(const nlohmann::json& j, const BackendSpec& backend);

}  // namespace solvable::app
