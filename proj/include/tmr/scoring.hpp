#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tmr/conll.hpp"
#include "tmr/taxonomy.hpp"

namespace tmr {

struct PrfCounts {
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

// Exact-match result: a gold mention is recalled iff some prediction has
// identical (doc, sent, start, end, type).
struct MatchResult {
  std::vector<bool> recalled;  // parallel to the gold mention list
  PrfCounts overall;
  std::map<std::string, PrfCounts> per_type;
};

MatchResult match_mentions(const std::vector<Mention>& gold,
                           const std::vector<Mention>& pred);

// Percentages; a zero denominator yields 0, as in conlleval.
struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

Prf micro_prf(const PrfCounts& counts);

// The eight reported subsets, in canonical column order.
enum class Subset {
  All,
  Seen,
  UnseenAny,
  UnseenTokens,
  UnseenType,
  TcmAll,
  TcmSeen,
  TcmUnseen
};
inline constexpr size_t kNumSubsets = 8;
inline constexpr std::array<Subset, kNumSubsets> kAllSubsets = {
    Subset::All,        Subset::Seen,    Subset::UnseenAny,
    Subset::UnseenTokens, Subset::UnseenType, Subset::TcmAll,
    Subset::TcmSeen,    Subset::TcmUnseen};

const char* subset_name(Subset s);
bool in_subset(const SubsetLabel& label, Subset s);

struct SubsetRecall {
  long size = 0;
  long recalled = 0;

  // Undefined (nullopt) on an empty subset; rendered as a dash, never as 0.
  std::optional<double> recall_pct() const {
    if (size == 0) return std::nullopt;
    return 100.0 * static_cast<double>(recalled) / static_cast<double>(size);
  }
};

using SubsetRecalls = std::array<SubsetRecall, kNumSubsets>;

// Recall-only by design: precision over a gold-defined subset is not well
// defined, since it is unclear which false positives would belong to it.
struct MetricReport {
  Prf overall;
  std::map<std::string, Prf> per_type;
  SubsetRecalls subsets;
  std::map<std::string, SubsetRecalls> per_type_subsets;
};

SubsetRecalls tmr_recall(const std::vector<Mention>& gold,
                         const MatchResult& result,
                         const SubsetAssignment& assignment);

MetricReport score(const std::vector<Mention>& gold,
                   const std::vector<Mention>& pred,
                   const SubsetAssignment& assignment);

}  // namespace tmr
