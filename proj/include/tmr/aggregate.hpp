#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmr/errors.hpp"
#include "tmr/scoring.hpp"

namespace tmr {

// Reports from several prediction runs against the same gold corpus.
struct RunSet {
  uint64_t gold_fingerprint = 0;
  std::vector<MetricReport> reports;
};

struct AggCell {
  double mean = 0.0;
  double std_dev = 0.0;
  int n = 0;
};

struct AggPrf {
  AggCell precision;
  AggCell recall;
  AggCell f1;
};

struct AggSubsetCell {
  long size = 0;
  std::optional<AggCell> recall;  // absent when the subset is empty
};

using AggSubsetRecalls = std::array<AggSubsetCell, kNumSubsets>;

struct AggregateReport {
  int n = 0;
  AggPrf overall;
  std::map<std::string, AggPrf> per_type;
  AggSubsetRecalls subsets;
  std::map<std::string, AggSubsetRecalls> per_type_subsets;
};

// Mean and standard deviation per cell over the unrounded per-run values.
// Sample (n-1) std by default, 0 for a single run; population_std switches
// to the n denominator. Throws InconsistentRunsError when runs disagree on
// subset sizes or type inventories.
AggregateReport aggregate_runs(const RunSet& runs, bool population_std = false);

}  // namespace tmr
