#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace oldroyd {

struct PropertyOutcome {
  std::string name;
  int instances = 0;
  int failures = 0;
  double worst = 0.0;      // worst observed metric
  double threshold = 0.0;  // gate the metric was held to
};

struct BatteryResult {
  std::vector<PropertyOutcome> outcomes;
  bool pass = true;

  std::string to_text() const;
};

/// Seeded random-instance battery over the module invariants: transform
/// round-trip, Leray idempotence, divergence-free preservation by rhs and
/// step, dyadic partition of unity and shell disjointness, propagator
/// semigroup property, Parseval, transport energy-neutrality, and
/// bit-identical determinism. `instances` draws per property.
BatteryResult run_property_battery(int instances, std::uint64_t seed);

}  // namespace oldroyd
