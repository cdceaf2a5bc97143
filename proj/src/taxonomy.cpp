#include "tmr/taxonomy.hpp"

#include <algorithm>

namespace tmr {

const char* unseen_class_name(UnseenClass c) {
  switch (c) {
    case UnseenClass::Seen:
      return "Seen";
    case UnseenClass::UnseenTokens:
      return "Unseen-Tokens";
    case UnseenClass::UnseenType:
      return "Unseen-Type";
  }
  return "?";
}

const char* tcm_class_name(TcmClass c) {
  switch (c) {
    case TcmClass::NotTcm:
      return "Not-TCM";
    case TcmClass::TcmSeen:
      return "TCM-Seen";
    case TcmClass::TcmUnseen:
      return "TCM-Unseen";
  }
  return "?";
}

TrainIndex build_train_index(const std::vector<Mention>& train_gold) {
  TrainIndex idx;
  for (const Mention& m : train_gold) idx.add(m);
  return idx;
}

UnseenClass classify_unseen(const Mention& m, const TrainIndex& idx) {
  if (idx.seen_pair(m.tokens, m.etype)) return UnseenClass::Seen;
  if (idx.seen_key(m.tokens)) return UnseenClass::UnseenType;
  return UnseenClass::UnseenTokens;
}

std::vector<TcmClass> classify_tcm(
    const std::vector<Mention>& test_gold,
    const std::vector<UnseenClass>& unseen_classes) {
  std::unordered_map<MentionKey, std::unordered_set<std::string>,
                     MentionKeyHash>
      test_key_types;
  for (const Mention& m : test_gold) test_key_types[m.tokens].insert(m.etype);

  std::vector<TcmClass> out(test_gold.size(), TcmClass::NotTcm);
  for (size_t i = 0; i < test_gold.size(); ++i) {
    if (test_key_types[test_gold[i].tokens].size() < 2) continue;
    out[i] = unseen_classes[i] == UnseenClass::UnseenTokens
                 ? TcmClass::TcmUnseen
                 : TcmClass::TcmSeen;
  }
  return out;
}

SubsetAssignment assign_subsets(const std::vector<Mention>& test_gold,
                                const TrainIndex& idx) {
  std::vector<UnseenClass> unseen;
  unseen.reserve(test_gold.size());
  for (const Mention& m : test_gold) unseen.push_back(classify_unseen(m, idx));
  std::vector<TcmClass> tcm = classify_tcm(test_gold, unseen);

  SubsetAssignment assignment;
  assignment.labels.reserve(test_gold.size());
  for (size_t i = 0; i < test_gold.size(); ++i) {
    assignment.labels.push_back(SubsetLabel{unseen[i], tcm[i]});
  }
  return assignment;
}

namespace {

void tally(SubsetCounts& c, const SubsetLabel& label) {
  ++c.total;
  if (label.unseen != UnseenClass::Seen) ++c.unseen_any;
  if (label.unseen == UnseenClass::UnseenTokens) ++c.unseen_tokens;
  if (label.unseen == UnseenClass::UnseenType) ++c.unseen_type;
  if (label.tcm != TcmClass::NotTcm) ++c.tcm_all;
  if (label.tcm == TcmClass::TcmSeen) ++c.tcm_seen;
  if (label.tcm == TcmClass::TcmUnseen) ++c.tcm_unseen;
}

}  // namespace

CompositionTable composition(const std::vector<Mention>& test_gold,
                             const SubsetAssignment& assignment) {
  CompositionTable table;
  for (size_t i = 0; i < test_gold.size(); ++i) {
    tally(table.all, assignment.labels[i]);
    tally(table.per_type[test_gold[i].etype], assignment.labels[i]);
  }
  for (const auto& [name, counts] : table.per_type) table.types.push_back(name);
  std::sort(table.types.begin(), table.types.end(),
            [&](const std::string& a, const std::string& b) {
              long ca = table.per_type[a].total, cb = table.per_type[b].total;
              if (ca != cb) return ca > cb;
              return a < b;
            });
  return table;
}

}  // namespace tmr
