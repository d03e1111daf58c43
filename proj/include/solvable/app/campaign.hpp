#pragma once

// Seeded randomized property campaigns over all systems, exact backend.

#include "solvable/numerics.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace solvable::app {

struct CampaignOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 200;
  TimeIndex max_level = 6;
  unsigned jobs = 1;
  std::size_t digit_budget = kDefaultDigitBudget;
};

struct InvariantResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::optional<nlohmann::ordered_json> first_failure;  // {"trial": k, "instance": {...}}
};

struct CampaignReport {
  CampaignOptions options;
  std::vector<InvariantResult> invariants;

  bool all_passed() const;
  const InvariantResult& find(const std::string& name) const;
};

/// Names of the invariants, in report order.
std::vector<std::string> campaign_invariants();

/// ConfigError when trials == 0. Property failures are report content.
CampaignReport campaign(const CampaignOptions& options);

nlohmann::ordered_json to_json(const CampaignReport& report);
/// Pretty-printed JSON with a trailing newline; byte-identical for equal options.
std::string report_text(const CampaignReport& report);

}  // namespace solvable::app
