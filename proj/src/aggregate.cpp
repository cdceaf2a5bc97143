#include "tmr/aggregate.hpp"

#include <cmath>

namespace tmr {

namespace {

AggCell make_cell(const std::vector<double>& values, bool population_std) {
  AggCell cell;
  cell.n = static_cast<int>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  cell.mean = sum / static_cast<double>(cell.n);
  if (cell.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - cell.mean) * (v - cell.mean);
    double denom =
        population_std ? static_cast<double>(cell.n) : static_cast<double>(cell.n - 1);
    cell.std_dev = std::sqrt(ss / denom);
  } else if (cell.n == 1 && population_std) {
    cell.std_dev = 0.0;
  }
  return cell;
}

}  // namespace

AggregateReport aggregate_runs(const RunSet& runs, bool population_std) {
  if (runs.reports.empty())
    throw InconsistentRunsError("no runs to aggregate");
  const int n = static_cast<int>(runs.reports.size());
  const MetricReport& first = runs.reports.front();

  for (const MetricReport& r : runs.reports) {
    for (size_t s = 0; s < kNumSubsets; ++s) {
      if (r.subsets[s].size != first.subsets[s].size)
        throw InconsistentRunsError(
            "runs disagree on the size of subset " +
            std::string(subset_name(kAllSubsets[s])));
    }
    if (r.per_type.size() < first.per_type.size() ||
        r.per_type_subsets.size() != first.per_type_subsets.size())
      throw InconsistentRunsError("runs disagree on the entity type inventory");
    for (const auto& [etype, recalls] : first.per_type_subsets) {
      auto it = r.per_type_subsets.find(etype);
      if (it == r.per_type_subsets.end())
        throw InconsistentRunsError("runs disagree on entity type " + etype);
      for (size_t s = 0; s < kNumSubsets; ++s) {
        if (it->second[s].size != recalls[s].size)
          throw InconsistentRunsError(
              "runs disagree on the size of subset " +
              std::string(subset_name(kAllSubsets[s])) + " for type " + etype);
      }
    }
  }

  auto agg_prf = [&](auto select) {
    AggPrf out;
    std::vector<double> p, r, f;
    p.reserve(n);
    r.reserve(n);
    f.reserve(n);
    for (const MetricReport& rep : runs.reports) {
      const Prf* prf = select(rep);
      p.push_back(prf ? prf->precision : 0.0);
      r.push_back(prf ? prf->recall : 0.0);
      f.push_back(prf ? prf->f1 : 0.0);
    }
    out.precision = make_cell(p, population_std);
    out.recall = make_cell(r, population_std);
    out.f1 = make_cell(f, population_std);
    return out;
  };

  AggregateReport agg;
  agg.n = n;
  agg.overall = agg_prf([](const MetricReport& r) { return &r.overall; });
  for (const auto& [etype, _] : first.per_type) {
    std::string name = etype;
    agg.per_type[name] = agg_prf([&name](const MetricReport& r) -> const Prf* {
      auto it = r.per_type.find(name);
      return it == r.per_type.end() ? nullptr : &it->second;
    });
  }

  auto agg_subsets = [&](auto select) {
    AggSubsetRecalls out;
    for (size_t s = 0; s < kNumSubsets; ++s) {
      const SubsetRecalls& base = select(first);
      out[s].size = base[s].size;
      if (base[s].size == 0) continue;  // undefined stays undefined
      std::vector<double> values;
      values.reserve(n);
      for (const MetricReport& rep : runs.reports)
        values.push_back(*select(rep)[s].recall_pct());
      out[s].recall = make_cell(values, population_std);
    }
    return out;
  };

  agg.subsets =
      agg_subsets([](const MetricReport& r) -> const SubsetRecalls& {
        return r.subsets;
      });
  for (const auto& [etype, _] : first.per_type_subsets) {
    std::string name = etype;
    agg.per_type_subsets[name] = agg_subsets(
        [&name](const MetricReport& r) -> const SubsetRecalls& {
          return r.per_type_subsets.at(name);
        });
  }
  return agg;
}

}  // namespace tmr
