#include "tmr/scoring.hpp"

#include <set>
#include <tuple>

namespace tmr {

namespace {

using SpanKey = std::tuple<int, int, int, int, std::string>;

SpanKey span_key(const Mention& m) {
  return {m.doc, m.sent, m.start, m.end, m.etype};
}

}  // namespace

MatchResult match_mentions(const std::vector<Mention>& gold,
                           const std::vector<Mention>& pred) {
  std::set<SpanKey> gold_spans;
  for (const Mention& m : gold) gold_spans.insert(span_key(m));
  std::set<SpanKey> pred_spans;
  for (const Mention& m : pred) pred_spans.insert(span_key(m));

  MatchResult result;
  result.recalled.reserve(gold.size());
  for (const Mention& m : gold) {
    bool hit = pred_spans.count(span_key(m)) > 0;
    result.recalled.push_back(hit);
    PrfCounts& type_counts = result.per_type[m.etype];
    if (hit) {
      ++result.overall.tp;
      ++type_counts.tp;
    } else {
      ++result.overall.fn;
      ++type_counts.fn;
    }
  }
  for (const Mention& m : pred) {
    if (gold_spans.count(span_key(m)) == 0) {
      ++result.overall.fp;
      ++result.per_type[m.etype].fp;
    }
  }
  return result;
}

Prf micro_prf(const PrfCounts& counts) {
  Prf prf;
  long pred_total = counts.tp + counts.fp;
  long gold_total = counts.tp + counts.fn;
  if (pred_total > 0)
    prf.precision = 100.0 * static_cast<double>(counts.tp) /
                    static_cast<double>(pred_total);
  if (gold_total > 0)
    prf.recall = 100.0 * static_cast<double>(counts.tp) /
                 static_cast<double>(gold_total);
  if (prf.precision + prf.recall > 0.0)
    prf.f1 = 2.0 * prf.precision * prf.recall / (prf.precision + prf.recall);
  return prf;
}

const char* subset_name(Subset s) {
  switch (s) {
    case Subset::All:
      return "All";
    case Subset::Seen:
      return "Seen";
    case Subset::UnseenAny:
      return "Unseen-Any";
    case Subset::UnseenTokens:
      return "Unseen-Tokens";
    case Subset::UnseenType:
      return "Unseen-Type";
    case Subset::TcmAll:
      return "TCM-All";
    case Subset::TcmSeen:
      return "TCM-Seen";
    case Subset::TcmUnseen:
      return "TCM-Unseen";
  }
  return "?";
}

bool in_subset(const SubsetLabel& label, Subset s) {
  switch (s) {
    case Subset::All:
      return true;
    case Subset::Seen:
      return label.unseen == UnseenClass::Seen;
    case Subset::UnseenAny:
      return label.unseen != UnseenClass::Seen;
    case Subset::UnseenTokens:
      return label.unseen == UnseenClass::UnseenTokens;
    case Subset::UnseenType:
      return label.unseen == UnseenClass::UnseenType;
    case Subset::TcmAll:
      return label.tcm != TcmClass::NotTcm;
    case Subset::TcmSeen:
      return label.tcm == TcmClass::TcmSeen;
    case Subset::TcmUnseen:
      return label.tcm == TcmClass::TcmUnseen;
  }
  return false;
}

SubsetRecalls tmr_recall(const std::vector<Mention>& gold,
                         const MatchResult& result,
                         const SubsetAssignment& assignment) {
  SubsetRecalls recalls;
  for (size_t i = 0; i < gold.size(); ++i) {
    for (size_t s = 0; s < kNumSubsets; ++s) {
      if (!in_subset(assignment.labels[i], kAllSubsets[s])) continue;
      ++recalls[s].size;
      if (result.recalled[i]) ++recalls[s].recalled;
    }
  }
  return recalls;
}

MetricReport score(const std::vector<Mention>& gold,
                   const std::vector<Mention>& pred,
                   const SubsetAssignment& assignment) {
  MatchResult match = match_mentions(gold, pred);

  MetricReport report;
  report.overall = micro_prf(match.overall);
  for (const auto& [etype, counts] : match.per_type)
    report.per_type[etype] = micro_prf(counts);
  report.subsets = tmr_recall(gold, match, assignment);

  for (size_t i = 0; i < gold.size(); ++i) {
    SubsetRecalls& recalls = report.per_type_subsets[gold[i].etype];
    for (size_t s = 0; s < kNumSubsets; ++s) {
      if (!in_subset(assignment.labels[i], kAllSubsets[s])) continue;
      ++recalls[s].size;
      if (match.recalled[i]) ++recalls[s].recalled;
    }
  }
  return report;
}

}  // namespace tmr
