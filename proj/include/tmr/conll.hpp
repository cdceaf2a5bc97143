#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tmr/errors.hpp"

namespace tmr {

enum class TagScheme { IOB1, IOB2, BIOES };

std::string scheme_name(TagScheme scheme);
std::optional<TagScheme> scheme_from_name(const std::string& name);

// One column tag, e.g. "B-PER". flag 'O' has an empty type.
struct TagLabel {
  char flag = 'O';  // one of O B I E S
  std::string etype;

  bool operator==(const TagLabel&) const = default;
  std::string str() const;
};

TagLabel parse_tag(const std::string& raw);

struct Token {
  std::string text;
  // Columns between the surface form and the tag columns, kept verbatim.
  std::vector<std::string> extras;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::vector<Token> tokens;
  std::vector<TagLabel> gold_tags;
  std::optional<std::vector<TagLabel>> pred_tags;

  bool operator==(const Sentence&) const = default;
  size_t size() const { return tokens.size(); }
};

struct Corpus {
  std::vector<std::vector<Sentence>> documents;
  TagScheme scheme = TagScheme::IOB2;
  std::string source_name;

  bool operator==(const Corpus& other) const {
    return documents == other.documents && scheme == other.scheme;
  }
};

// A located, typed span. tokens holds copies of the covered surface forms.
struct Mention {
  int doc = 0;
  int sent = 0;
  int start = 0;  // inclusive token index
  int end = 0;    // exclusive
  std::string etype;
  std::vector<std::string> tokens;

  bool operator==(const Mention&) const = default;
};

struct ColumnConfig {
  int token_col = 0;
  // Negative indices count from the end of the line, conlleval style:
  // -1 is the last column (gold in gold-only files, pred in combined files).
  int gold_col = -1;
  std::optional<int> pred_col;
  std::optional<TagScheme> scheme;  // absent = auto-detect
  std::string docstart_marker = "-DOCSTART-";
};

// Parses CoNLL column text. Blank lines separate sentences; lines whose
// token column equals the docstart marker open a new document and are not
// part of any sentence. Accepts LF and CRLF, space and tab columns.
Corpus parse_conll(std::istream& in, const ColumnConfig& config,
                   const std::string& source_name = "<input>");
Corpus parse_conll_file(const std::string& path, const ColumnConfig& config);

// BIOES if any E/S flag occurs; IOB2 if some B appears where IOB1 would not
// require one; otherwise IOB1. Throws NoEntitiesError when every tag is O.
TagScheme detect_scheme(const Corpus& corpus);

// Chunk extraction with conlleval's repair policy: an I-X after O or after a
// chunk of a different type starts a new chunk, and a chunk still open at the
// end of the sentence is closed there. Never fails.
std::vector<Mention> decode_tags(const std::vector<TagLabel>& tags,
                                 TagScheme scheme, int doc, int sent,
                                 const std::vector<Token>& tokens);

// Inverse of decode_tags for valid, pairwise non-overlapping mentions.
// Throws OverlappingMentionsError.
std::vector<TagLabel> encode_tags(const std::vector<Mention>& mentions,
                                  size_t length, TagScheme scheme);

// All gold (resp. predicted) mentions of a corpus, in (doc, sent, start)
// order. pred_mentions requires every sentence to carry pred tags.
std::vector<Mention> gold_mentions(const Corpus& corpus);
std::vector<Mention> pred_mentions(const Corpus& corpus);

// Throws SegmentationMismatchError unless both corpora have identical
// document/sentence/token segmentation.
void check_alignment(const Corpus& gold, const Corpus& pred);

// FNV-1a over the token and gold tag stream; used to confirm that multiple
// prediction runs were scored against the same gold.
uint64_t gold_fingerprint(const Corpus& corpus);

}  // namespace tmr
