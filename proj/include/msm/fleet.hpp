#pragma once

// Seeded random instance families used for bound verification at scale.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "msm/analysis.hpp"

namespace msm {

enum class FleetObjective { monotone, non_monotone };
enum class FleetConstraint { cardinality, partition_matroid, intersection };

/// Monotone agents get additive or coverage objectives; non-monotone agents
/// get cut functions on random graphs over the items. Each agent draws its
/// own objective and its own constraint of the requested family.
struct FleetParams {
  FleetObjective objective = FleetObjective::monotone;
  FleetConstraint constraint = FleetConstraint::cardinality;
  int n_min = 2;
  int n_max = 4;
  int m_min = 4;
  int m_max = 12;
};

/// "monotone-cardinality", "non_monotone-intersection", ...
std::string regime_name(const FleetParams& params);
/// Parses the names produced by regime_name.
std::optional<FleetParams> parse_regime(std::string_view text);
/// All six objective x constraint combinations with default sizes.
std::vector<FleetParams> all_regimes();

Instance random_instance(const FleetParams& params, RngSeed seed);

struct FleetCheck {
  std::size_t instance = 0;
  int agent = 0;
  std::string check;  // "T1" ... "T7"
  double achieved = 0.0;
  double required = 0.0;
  bool passed = true;
};

struct FleetSummary {
  std::string regime;
  std::size_t instances = 0;
  std::size_t checks = 0;
  std::size_t violations = 0;
  double min_margin = kInfinity;  // over checks with a positive requirement
  std::vector<FleetCheck> failures;
};

/// Draws `count` instances (instance k uses derive_seed(seed, k)), runs each
/// once with the default policies in a seeded random turn order and checks
/// every requested theorem that applies to each agent. T7 is checked in exact
/// mode. Instances run in parallel; the summary does not depend on the
/// worker count.
FleetSummary verify_fleet(const FleetParams& params, std::size_t count, RngSeed seed,
                          const std::vector<Theorem>& theorems, unsigned workers = default_workers());

}  // namespace msm
