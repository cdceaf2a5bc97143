#include <sstream>

#include "doctest.h"
#include "support/conlleval_ref.hpp"
#include "support/generators.hpp"
#include "tmr/conll.hpp"

using namespace tmr;

namespace {

Corpus parse_str(const std::string& text, ColumnConfig config = {}) {
  std::istringstream in(text);
  return parse_conll(in, config, "<test>");
}

std::vector<TagLabel> tags_of(const std::vector<std::string>& raw) {
  std::vector<TagLabel> tags;
  for (const auto& r : raw) tags.push_back(parse_tag(r));
  return tags;
}

std::vector<Token> n_tokens(size_t n) {
  std::vector<Token> tokens;
  for (size_t i = 0; i < n; ++i) tokens.push_back({"w" + std::to_string(i), {}});
  return tokens;
}

}  // namespace

TEST_CASE("parse_conll basic transcription") {
  Corpus c = parse_str("EU B-ORG\nrejects O\n");
  REQUIRE(c.documents.size() == 1);
  REQUIRE(c.documents[0].size() == 1);
  const Sentence& s = c.documents[0][0];
  REQUIRE(s.tokens.size() == 2);
  CHECK(s.tokens[0].text == "EU");
  CHECK(s.tokens[1].text == "rejects");
  CHECK(s.gold_tags[0] == TagLabel{'B', "ORG"});
  CHECK(s.gold_tags[1] == TagLabel{});
}

TEST_CASE("parse_conll empty input yields zero documents") {
  CHECK(parse_str("").documents.empty());
  CHECK(parse_str("\n\n\n").documents.empty());
}

TEST_CASE("parse_conll sentence and document boundaries") {
  std::string text =
      "-DOCSTART- O\n\n"
      "a B-PER\nb O\n\n"
      "c B-LOC\n\n\n"  // consecutive blanks collapse
      "-DOCSTART- O\n\n"
      "d B-ORG\n";
  Corpus c = parse_str(text);
  REQUIRE(c.documents.size() == 2);
  CHECK(c.documents[0].size() == 2);
  CHECK(c.documents[1].size() == 1);
  // DOCSTART lines contribute no tokens and no mentions
  for (const auto& doc : c.documents)
    for (const auto& s : doc)
      for (const auto& t : s.tokens) CHECK(t.text != "-DOCSTART-");
}

TEST_CASE("parse_conll without markers yields one document") {
  Corpus c = parse_str("a B-PER\n\nb O\n");
  CHECK(c.documents.size() == 1);
  CHECK(c.documents[0].size() == 2);
}

TEST_CASE("parse_conll accepts tabs and CRLF") {
  Corpus c = parse_str("a\tX\tB-PER\r\nb\tY\tO\r\n");
  REQUIRE(c.documents.size() == 1);
  const Sentence& s = c.documents[0][0];
  CHECK(s.tokens[0].text == "a");
  CHECK(s.tokens[0].extras == std::vector<std::string>{"X"});
  CHECK(s.gold_tags[0] == TagLabel{'B', "PER"});
}

TEST_CASE("parse_conll column selection and pred column") {
  ColumnConfig config;
  config.gold_col = -2;
  config.pred_col = -1;
  Corpus c = parse_str("a B-PER O\nb O B-LOC\n", config);
  const Sentence& s = c.documents[0][0];
  REQUIRE(s.pred_tags.has_value());
  CHECK(s.gold_tags[0] == TagLabel{'B', "PER"});
  CHECK((*s.pred_tags)[1] == TagLabel{'B', "LOC"});
}

TEST_CASE("parse_conll errors carry line numbers") {
  CHECK_THROWS_AS(parse_str("a B-PER\nb\n"), MalformedLineError);
  CHECK_THROWS_AS(parse_str("a B-PER\nb Q-LOC\n"), UnknownTagError);
  CHECK_THROWS_AS(parse_str("a BLOC\n"), UnknownTagError);
  try {
    parse_str("a B-PER\nb\n");
  } catch (const MalformedLineError& e) {
    CHECK(e.line_no == 2);
  }
}

TEST_CASE("tag parsing splits on the first dash only") {
  TagLabel t = parse_tag("B-WORK_OF-ART");
  CHECK(t.flag == 'B');
  CHECK(t.etype == "WORK_OF-ART");
}

TEST_CASE("detect_scheme") {
  auto corpus_with = [](const std::vector<std::string>& raw) {
    Corpus c;
    c.source_name = "<test>";
    Sentence s;
    s.tokens = n_tokens(raw.size());
    s.gold_tags = tags_of(raw);
    c.documents.push_back({s});
    return c;
  };
  CHECK(detect_scheme(corpus_with({"O", "S-LOC"})) == TagScheme::BIOES);
  CHECK(detect_scheme(corpus_with({"B-LOC", "I-LOC", "E-LOC"})) ==
        TagScheme::BIOES);
  CHECK(detect_scheme(corpus_with({"O", "I-PER", "I-PER", "O", "B-PER"})) ==
        TagScheme::IOB2);
  CHECK(detect_scheme(corpus_with({"I-ORG", "O", "I-ORG"})) == TagScheme::IOB1);
  // B only where IOB1 requires it: adjacent same-type chunks
  CHECK(detect_scheme(corpus_with({"I-ORG", "B-ORG"})) == TagScheme::IOB1);
  CHECK_THROWS_AS(detect_scheme(corpus_with({"O", "O"})), NoEntitiesError);
}

TEST_CASE("detected scheme round-trips the tags") {
  // The detection oracle: decoding then re-encoding under the detected
  // scheme must reproduce the file's tag sequence.
  for (const auto& raw : std::vector<std::vector<std::string>>{
           {"O", "B-PER", "I-PER", "O", "B-PER"},
           {"I-ORG", "O", "I-ORG"},
           {"I-ORG", "B-ORG"},
           {"O", "S-LOC", "B-PER", "E-PER"}}) {
    Corpus c;
    c.source_name = "<test>";
    Sentence s;
    s.tokens = n_tokens(raw.size());
    s.gold_tags = tags_of(raw);
    c.documents.push_back({s});
    TagScheme scheme = detect_scheme(c);
    auto mentions = decode_tags(s.gold_tags, scheme, 0, 0, s.tokens);
    CHECK(encode_tags(mentions, raw.size(), scheme) == s.gold_tags);
  }
}

TEST_CASE("decode_tags") {
  auto decode = [](const std::vector<std::string>& raw, TagScheme scheme) {
    auto tags = tags_of(raw);
    return decode_tags(tags, scheme, 0, 0, n_tokens(raw.size()));
  };

  CHECK(decode({"O", "O"}, TagScheme::IOB2).empty());

  auto m = decode({"B-PER", "I-PER", "O"}, TagScheme::IOB2);
  REQUIRE(m.size() == 1);
  CHECK(m[0].start == 0);
  CHECK(m[0].end == 2);
  CHECK(m[0].etype == "PER");
  CHECK(m[0].tokens == std::vector<std::string>{"w0", "w1"});

  // IOB1: B splits adjacent same-type chunks
  m = decode({"I-PER", "B-PER"}, TagScheme::IOB1);
  REQUIRE(m.size() == 2);
  CHECK(m[0].start == 0);
  CHECK(m[0].end == 1);
  CHECK(m[1].start == 1);
  CHECK(m[1].end == 2);

  // repair: I after O starts a chunk, I after a different type starts anew
  m = decode({"O", "I-PER", "I-LOC"}, TagScheme::IOB2);
  REQUIRE(m.size() == 2);
  CHECK(m[0].etype == "PER");
  CHECK(m[1].etype == "LOC");

  // BIOES: dangling B at sentence end closes at the last token
  m = decode({"O", "B-ORG"}, TagScheme::BIOES);
  REQUIRE(m.size() == 1);
  CHECK(m[0].start == 1);
  CHECK(m[0].end == 2);

  m = decode({"B-ORG", "I-ORG"}, TagScheme::BIOES);
  REQUIRE(m.size() == 1);
  CHECK(m[0].end == 2);
}

TEST_CASE("encode_tags") {
  CHECK(encode_tags({}, 3, TagScheme::IOB2) ==
        tags_of({"O", "O", "O"}));

  Mention m;
  m.start = 0;
  m.end = 2;
  m.etype = "PER";
  CHECK(encode_tags({m}, 3, TagScheme::IOB2) ==
        tags_of({"B-PER", "I-PER", "O"}));
  CHECK(encode_tags({m}, 3, TagScheme::BIOES) ==
        tags_of({"B-PER", "E-PER", "O"}));
  CHECK(encode_tags({m}, 3, TagScheme::IOB1) ==
        tags_of({"I-PER", "I-PER", "O"}));

  Mention a = m;
  a.end = 1;
  Mention b = m;
  b.start = 1;
  b.end = 2;
  a.etype = b.etype = "X";
  CHECK(encode_tags({a, b}, 2, TagScheme::IOB1) == tags_of({"I-X", "B-X"}));

  Mention overlap = m;
  overlap.start = 1;
  overlap.end = 3;
  CHECK_THROWS_AS(encode_tags({m, overlap}, 3, TagScheme::IOB2),
                  OverlappingMentionsError);
  Mention oob = m;
  oob.end = 9;
  CHECK_THROWS_AS(encode_tags({oob}, 3, TagScheme::IOB2),
                  OverlappingMentionsError);
}

TEST_CASE("round trip property over random layouts") {
  gen::Rng rng(20240913);
  for (TagScheme scheme :
       {TagScheme::IOB1, TagScheme::IOB2, TagScheme::BIOES}) {
    for (int iter = 0; iter < 200; ++iter) {
      int length = 1 + rng.below(12);
      auto tokens = gen::random_tokens(rng, length);
      auto mentions = gen::random_layout(rng, tokens, 4);
      auto tags = encode_tags(mentions, length, scheme);
      auto decoded = decode_tags(tags, scheme, 0, 0, tokens);
      REQUIRE(decoded == mentions);
    }
  }
}

TEST_CASE("decoder totality on adversarial tags") {
  gen::Rng rng(7);
  for (int iter = 0; iter < 500; ++iter) {
    int length = 1 + rng.below(10);
    std::vector<TagLabel> tags;
    for (int i = 0; i < length; ++i)
      tags.push_back(gen::random_corrupt_tag(rng, 3));
    auto mentions = decode_tags(tags, TagScheme::IOB2, 0, 0, n_tokens(length));
    // sanity: spans are valid and non-overlapping
    int prev_end = 0;
    for (const auto& m : mentions) {
      CHECK(m.start >= prev_end);
      CHECK(m.start < m.end);
      CHECK(m.end <= length);
      prev_end = m.end;
    }
  }
}

TEST_CASE("chunk extraction agrees with the conlleval rules") {
  gen::Rng rng(99);
  for (int iter = 0; iter < 500; ++iter) {
    int length = 1 + rng.below(14);
    std::vector<TagLabel> tags;
    std::vector<std::string> raw;
    for (int i = 0; i < length; ++i) {
      tags.push_back(gen::random_corrupt_tag(rng, 3));
      raw.push_back(tags.back().str());
    }
    auto mentions = decode_tags(tags, TagScheme::IOB2, 0, 0, n_tokens(length));
    auto ref = conlleval_ref::chunks(raw);
    REQUIRE(mentions.size() == ref.size());
    for (size_t i = 0; i < ref.size(); ++i) {
      CHECK(mentions[i].start == ref[i].start);
      CHECK(mentions[i].end == ref[i].end);
      CHECK(mentions[i].etype == ref[i].type);
    }
  }
}

TEST_CASE("parser fidelity: serialize and re-parse") {
  gen::Rng rng(4242);
  for (int iter = 0; iter < 50; ++iter) {
    std::string text;
    int n_sents = 1 + rng.below(4);
    for (int s = 0; s < n_sents; ++s) {
      int length = 1 + rng.below(8);
      auto tokens = gen::random_tokens(rng, length);
      auto mentions = gen::random_layout(rng, tokens, 3);
      auto tags = encode_tags(mentions, length, TagScheme::IOB2);
      for (int i = 0; i < length; ++i)
        text += tokens[i].text + " " + tags[i].str() + "\n";
      text += "\n";
    }
    Corpus first = parse_str(text);
    // normalized re-serialization
    std::string again;
    for (const auto& doc : first.documents)
      for (const auto& sent : doc) {
        for (size_t i = 0; i < sent.tokens.size(); ++i)
          again += sent.tokens[i].text + " " + sent.gold_tags[i].str() + "\n";
        again += "\n";
      }
    Corpus second = parse_str(again);
    REQUIRE(first == second);
  }
}

TEST_CASE("check_alignment") {
  Corpus a = parse_str("x B-PER\ny O\n");
  Corpus b = parse_str("x B-LOC\ny B-PER\n");
  CHECK_NOTHROW(check_alignment(a, b));
  Corpus c = parse_str("x B-PER\n");
  CHECK_THROWS_AS(check_alignment(a, c), SegmentationMismatchError);
}

TEST_CASE("gold_fingerprint tracks tokens and gold tags") {
  Corpus a = parse_str("x B-PER\ny O\n");
  Corpus b = parse_str("x B-PER\ny O\n");
  Corpus c = parse_str("x B-LOC\ny O\n");
  CHECK(gold_fingerprint(a) == gold_fingerprint(b));
  CHECK(gold_fingerprint(a) != gold_fingerprint(c));
}
