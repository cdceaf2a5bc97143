#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tmr/conll.hpp"

namespace tmr {

// The case-sensitive token text sequence of a mention; the unit of
// seen/unseen and type-confusability matching.
using MentionKey = std::vector<std::string>;

struct MentionKeyHash {
  size_t operator()(const MentionKey& key) const {
    uint64_t h = 14695981039346656037ull;
    for (const auto& s : key) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
      }
      h ^= 0x1f;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

enum class UnseenClass { Seen, UnseenTokens, UnseenType };
enum class TcmClass { NotTcm, TcmSeen, TcmUnseen };

const char* unseen_class_name(UnseenClass c);
const char* tcm_class_name(TcmClass c);

struct SubsetLabel {
  UnseenClass unseen = UnseenClass::Seen;
  TcmClass tcm = TcmClass::NotTcm;

  bool operator==(const SubsetLabel&) const = default;
};

// Distinct (key, type) pairs of the training gold mentions. Built from
// annotated mentions only; unannotated occurrences of the same tokens do
// not count.
class TrainIndex {
 public:
  TrainIndex() = default;

  void add(const Mention& m) { key_types_[m.tokens].insert(m.etype); }

  bool seen_pair(const MentionKey& key, const std::string& etype) const {
    auto it = key_types_.find(key);
    return it != key_types_.end() && it->second.count(etype) > 0;
  }
  bool seen_key(const MentionKey& key) const {
    return key_types_.count(key) > 0;
  }
  size_t key_count() const { return key_types_.size(); }
  size_t pair_count() const {
    size_t n = 0;
    for (const auto& [k, types] : key_types_) n += types.size();
    return n;
  }

 private:
  std::unordered_map<MentionKey, std::unordered_set<std::string>,
                     MentionKeyHash>
      key_types_;
};

TrainIndex build_train_index(const std::vector<Mention>& train_gold);

UnseenClass classify_unseen(const Mention& m, const TrainIndex& idx);

// TCM membership comes from type variation in the TEST gold alone: a mention
// is type-confusable iff its token sequence occurs with >= 2 distinct gold
// types in the test set.
std::vector<TcmClass> classify_tcm(
    const std::vector<Mention>& test_gold,
    const std::vector<UnseenClass>& unseen_classes);

// One label per test gold mention, parallel to test_gold.
struct SubsetAssignment {
  std::vector<SubsetLabel> labels;
};

SubsetAssignment assign_subsets(const std::vector<Mention>& test_gold,
                                const TrainIndex& idx);

// Counts for the six reported subsets plus the total, for one entity type
// or for the whole test set.
struct SubsetCounts {
  long total = 0;
  long unseen_any = 0;
  long unseen_tokens = 0;
  long unseen_type = 0;
  long tcm_all = 0;
  long tcm_seen = 0;
  long tcm_unseen = 0;
};

struct CompositionTable {
  // Entity types ordered by descending mention count, then name.
  std::vector<std::string> types;
  std::map<std::string, SubsetCounts> per_type;
  SubsetCounts all;
};

CompositionTable composition(const std::vector<Mention>& test_gold,
                             const SubsetAssignment& assignment);

}  // namespace tmr
