#include "tmr/conll.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>

namespace tmr {

std::string scheme_name(TagScheme scheme) {
  switch (scheme) {
    case TagScheme::IOB1:
      return "iob1";
    case TagScheme::IOB2:
      return "iob2";
    case TagScheme::BIOES:
      return "bioes";
  }
  return "?";
}

std::optional<TagScheme> scheme_from_name(const std::string& name) {
  if (name == "iob1") return TagScheme::IOB1;
  if (name == "iob2" || name == "bio") return TagScheme::IOB2;
  if (name == "bioes") return TagScheme::BIOES;
  return std::nullopt;
}

std::string TagLabel::str() const {
  if (flag == 'O') return "O";
  return std::string(1, flag) + "-" + etype;
}

TagLabel parse_tag(const std::string& raw) {
  if (raw == "O") return TagLabel{};
  // flag "-" type; the type may itself contain "-", so split on the first.
  if (raw.size() >= 3 && raw[1] == '-') {
    char flag = raw[0];
    if (flag == 'B' || flag == 'I' || flag == 'E' || flag == 'S') {
      return TagLabel{flag, raw.substr(2)};
    }
  }
  throw InputError("unknown tag \"" + raw + "\"");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

size_t resolve_col(int col, size_t n_fields, const std::string& source,
                   size_t line_no) {
  long resolved = col >= 0 ? col : static_cast<long>(n_fields) + col;
  if (resolved < 0 || resolved >= static_cast<long>(n_fields)) {
    throw MalformedLineError(source, line_no,
                             "need column " + std::to_string(col) +
                                 " but line has only " +
                                 std::to_string(n_fields) + " fields");
  }
  return static_cast<size_t>(resolved);
}

}  // namespace

Corpus parse_conll(std::istream& in, const ColumnConfig& config,
                   const std::string& source_name) {
  Corpus corpus;
  corpus.source_name = source_name;

  std::vector<std::vector<Sentence>> docs;
  std::vector<Sentence> cur_doc;
  Sentence cur_sent;

  auto flush_sentence = [&] {
    if (!cur_sent.tokens.empty()) {
      cur_doc.push_back(std::move(cur_sent));
      cur_sent = Sentence{};
      if (config.pred_col) cur_sent.pred_tags = std::vector<TagLabel>{};
    }
  };
  auto flush_document = [&] {
    flush_sentence();
    if (!cur_doc.empty()) {
      docs.push_back(std::move(cur_doc));
      cur_doc.clear();
    }
  };

  if (config.pred_col) cur_sent.pred_tags = std::vector<TagLabel>{};

  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) {  // blank line; consecutive blanks collapse
      flush_sentence();
      continue;
    }

    size_t tok_i = resolve_col(config.token_col, fields.size(), source_name,
                               line_no);
    if (fields[tok_i] == config.docstart_marker) {
      flush_document();
      continue;
    }

    size_t gold_i = resolve_col(config.gold_col, fields.size(), source_name,
                                line_no);
    size_t pred_i = 0;
    if (config.pred_col) {
      pred_i = resolve_col(*config.pred_col, fields.size(), source_name,
                           line_no);
    }
    // Token and tag columns must be distinct fields; a collision means the
    // line is short (e.g. a bare token where "token tag" is expected).
    if (gold_i == tok_i || (config.pred_col && (pred_i == tok_i || pred_i == gold_i))) {
      throw MalformedLineError(source_name, line_no,
                               "too few columns (" +
                                   std::to_string(fields.size()) + ")");
    }

    Token token;
    token.text = fields[tok_i];
    // Everything that is not the token or a tag column is an extra column.
    for (size_t i = 0; i < fields.size(); ++i) {
      if (i == tok_i || i == gold_i) continue;
      if (config.pred_col && i == pred_i) continue;
      token.extras.push_back(fields[i]);
    }

    try {
      cur_sent.gold_tags.push_back(parse_tag(fields[gold_i]));
      if (config.pred_col) {
        cur_sent.pred_tags->push_back(parse_tag(fields[pred_i]));
      }
    } catch (const InputError& e) {
      throw UnknownTagError(source_name, line_no,
                            config.pred_col && cur_sent.gold_tags.size() >
                                                   cur_sent.pred_tags->size()
                                ? fields[pred_i]
                                : fields[gold_i]);
    }
    cur_sent.tokens.push_back(std::move(token));
  }
  flush_document();

  corpus.documents = std::move(docs);
  corpus.scheme = config.scheme ? *config.scheme : TagScheme::IOB2;
  if (!config.scheme) {
    bool any_entity = false;
    for (const auto& doc : corpus.documents)
      for (const auto& sent : doc)
        for (const auto& tag : sent.gold_tags)
          if (tag.flag != 'O') any_entity = true;
    if (any_entity) corpus.scheme = detect_scheme(corpus);
  }
  return corpus;
}

Corpus parse_conll_file(const std::string& path, const ColumnConfig& config) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return parse_conll(in, config, path);
}

TagScheme detect_scheme(const Corpus& corpus) {
  bool any_entity = false;
  bool iob2_evidence = false;
  bool bioes = false;

  auto scan = [&](const std::vector<TagLabel>& tags) {
    TagLabel prev;  // O at sentence start
    for (const auto& tag : tags) {
      if (tag.flag != 'O') any_entity = true;
      if (tag.flag == 'E' || tag.flag == 'S') bioes = true;
      if (tag.flag == 'B') {
        // IOB1 writes B only directly after a chunk of the same type.
        bool iob1_needs_b =
            (prev.flag == 'B' || prev.flag == 'I') && prev.etype == tag.etype;
        if (!iob1_needs_b) iob2_evidence = true;
      }
      prev = tag;
    }
  };

  for (const auto& doc : corpus.documents) {
    for (const auto& sent : doc) {
      scan(sent.gold_tags);
      if (sent.pred_tags) scan(*sent.pred_tags);
    }
  }
  if (!any_entity) throw NoEntitiesError(corpus.source_name);
  if (bioes) return TagScheme::BIOES;
  return iob2_evidence ? TagScheme::IOB2 : TagScheme::IOB1;
}

namespace {

// Does `tag` continue a chunk opened by `prev` of the same type?
// Everything else either starts a new chunk or is outside one; this is the
// repair policy, so no sequence is rejected.
bool continues_chunk(const TagLabel& prev, const TagLabel& tag) {
  if (tag.flag == 'O' || prev.flag == 'O') return false;
  if (tag.etype != prev.etype) return false;
  if (tag.flag == 'B' || tag.flag == 'S') return false;
  // E and S close a chunk, nothing continues past them.
  if (prev.flag == 'E' || prev.flag == 'S') return false;
  return true;  // I or E after B/I of the same type
}

}  // namespace

std::vector<Mention> decode_tags(const std::vector<TagLabel>& tags,
                                 TagScheme /*scheme*/, int doc, int sent,
                                 const std::vector<Token>& tokens) {
  std::vector<Mention> mentions;
  int open_start = -1;
  TagLabel prev;

  auto close = [&](int end) {
    if (open_start < 0) return;
    Mention m;
    m.doc = doc;
    m.sent = sent;
    m.start = open_start;
    m.end = end;
    m.etype = prev.etype;
    for (int i = open_start; i < end; ++i) m.tokens.push_back(tokens[i].text);
    mentions.push_back(std::move(m));
    open_start = -1;
  };

  for (size_t i = 0; i < tags.size(); ++i) {
    const TagLabel& tag = tags[i];
    if (!continues_chunk(prev, tag)) {
      close(static_cast<int>(i));
      if (tag.flag != 'O') open_start = static_cast<int>(i);
    }
    prev = tag;
  }
  close(static_cast<int>(tags.size()));
  return mentions;
}

std::vector<TagLabel> encode_tags(const std::vector<Mention>& mentions,
                                  size_t length, TagScheme scheme) {
  std::vector<Mention> sorted = mentions;
  std::sort(sorted.begin(), sorted.end(),
            [](const Mention& a, const Mention& b) { return a.start < b.start; });

  std::vector<TagLabel> tags(length);
  int prev_end = -1;
  std::string prev_type;
  for (const Mention& m : sorted) {
    if (m.start < 0 || m.end > static_cast<int>(length) || m.start >= m.end) {
      throw OverlappingMentionsError("mention span (" +
                                     std::to_string(m.start) + ", " +
                                     std::to_string(m.end) +
                                     ") out of bounds for sentence length " +
                                     std::to_string(length));
    }
    if (m.start < prev_end) {
      throw OverlappingMentionsError("overlapping mentions at token " +
                                     std::to_string(m.start));
    }
    switch (scheme) {
      case TagScheme::IOB1: {
        // B only separates adjacent chunks of the same type.
        bool adjacent_same = prev_end == m.start && prev_type == m.etype;
        tags[m.start] = TagLabel{adjacent_same ? 'B' : 'I', m.etype};
        for (int i = m.start + 1; i < m.end; ++i)
          tags[i] = TagLabel{'I', m.etype};
        break;
      }
      case TagScheme::IOB2:
        tags[m.start] = TagLabel{'B', m.etype};
        for (int i = m.start + 1; i < m.end; ++i)
          tags[i] = TagLabel{'I', m.etype};
        break;
      case TagScheme::BIOES:
        if (m.end - m.start == 1) {
          tags[m.start] = TagLabel{'S', m.etype};
        } else {
          tags[m.start] = TagLabel{'B', m.etype};
          for (int i = m.start + 1; i < m.end - 1; ++i)
            tags[i] = TagLabel{'I', m.etype};
          tags[m.end - 1] = TagLabel{'E', m.etype};
        }
        break;
    }
    prev_end = m.end;
    prev_type = m.etype;
  }
  return tags;
}

namespace {

std::vector<Mention> collect_mentions(const Corpus& corpus, bool pred) {
  std::vector<Mention> all;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    const auto& doc = corpus.documents[d];
    for (size_t s = 0; s < doc.size(); ++s) {
      const Sentence& sent = doc[s];
      const std::vector<TagLabel>* tags = &sent.gold_tags;
      if (pred) {
        if (!sent.pred_tags) {
          throw InputError(corpus.source_name +
                           ": no prediction column was parsed");
        }
        tags = &*sent.pred_tags;
      }
      auto mentions = decode_tags(*tags, corpus.scheme, static_cast<int>(d),
                                  static_cast<int>(s), sent.tokens);
      all.insert(all.end(), mentions.begin(), mentions.end());
    }
  }
  return all;
}

}  // namespace

std::vector<Mention> gold_mentions(const Corpus& corpus) {
  return collect_mentions(corpus, false);
}

std::vector<Mention> pred_mentions(const Corpus& corpus) {
  return collect_mentions(corpus, true);
}

void check_alignment(const Corpus& gold, const Corpus& pred) {
  auto fail = [&](const std::string& what) {
    throw SegmentationMismatchError(gold.source_name + " vs " +
                                    pred.source_name + ": " + what);
  };
  if (gold.documents.size() != pred.documents.size())
    fail("document counts differ");
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    if (gold.documents[d].size() != pred.documents[d].size())
      fail("sentence counts differ in document " + std::to_string(d));
    for (size_t s = 0; s < gold.documents[d].size(); ++s) {
      if (gold.documents[d][s].tokens.size() !=
          pred.documents[d][s].tokens.size())
        fail("token counts differ in document " + std::to_string(d) +
             ", sentence " + std::to_string(s));
    }
  }
}

uint64_t gold_fingerprint(const Corpus& corpus) {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0x1f;
    h *= 1099511628211ull;
  };
  for (const auto& doc : corpus.documents) {
    for (const auto& sent : doc) {
      for (size_t i = 0; i < sent.tokens.size(); ++i) {
        mix(sent.tokens[i].text);
        mix(sent.gold_tags[i].str());
      }
      mix("\n");
    }
    mix("\n\n");
  }
  return h;
}

}  // namespace tmr
