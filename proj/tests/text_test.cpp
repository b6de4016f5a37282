#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "dam/errors.hpp"
#include "dam/text/dataset_io.hpp"
#include "dam/text/document.hpp"
#include "dam/text/record.hpp"
#include "dam/text/structured.hpp"
#include "dam/text/tokenizer.hpp"
#include "dam/text/vocabulary.hpp"

using namespace dam;
using namespace dam::text;
using Tokens = std::vector<std::string>;

TEST(Tokenize, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(tokenize("Pt c/o chest PAIN."), (Tokens{"pt", "c/o", "chest", "pain"}));
  EXPECT_EQ(tokenize("MVC,  restrained driver"), (Tokens{"mvc", "restrained", "driver"}));
}

TEST(Tokenize, EmptyAndPunctuationOnly) {
  EXPECT_TRUE(tokenize("").empty());
  EXPECT_TRUE(tokenize("  ... ,, !").empty());
}

TEST(Tokenize, KeepsClinicalAbbreviations) {
  EXPECT_EQ(tokenize("(x-ray) s/p fall; hx: HTN"), (Tokens{"x-ray", "s/p", "fall", "hx", "htn"}));
  EXPECT_EQ(tokenize("[cc] pain"), (Tokens{"cc", "pain"}));
}

TEST(Vocabulary, FrequencyOrder) {
  const auto v = build_vocabulary({{"pain", "pain", "chest"}}, 1);
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v.id("pain"), 2u);
  EXPECT_EQ(v.id("chest"), 3u);
  EXPECT_EQ(v.token(kPadId), kPadToken);
  EXPECT_EQ(v.token(kOovId), kOovToken);
}

TEST(Vocabulary, ThresholdLeavesOnlyReservedIds) {
  const auto v = build_vocabulary({{"a", "b"}}, 2);
  EXPECT_EQ(v.size(), 2u);
  EXPECT_EQ(v.id("a"), kOovId);
}

TEST(Vocabulary, LexicographicTieBreak) {
  const auto v = build_vocabulary({{"zeta", "alpha"}}, 1);
  EXPECT_LT(v.id("alpha"), v.id("zeta"));
}

TEST(Vocabulary, Errors) {
  EXPECT_THROW(build_vocabulary({}, 1), BuildError);
  EXPECT_THROW(build_vocabulary({{}, {}}, 1), BuildError);
  EXPECT_THROW(build_vocabulary({{"a"}}, 0), ArgumentError);
  const auto v = build_vocabulary({{"a"}}, 1);
  EXPECT_THROW(v.token(99), IndexError);
}

TEST(Vocabulary, ContiguousBijectionAndDeterministic) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> w(0, 60);
  std::vector<Tokens> corpus(50);
  for (auto& doc : corpus)
    for (int i = 0; i < 20; ++i) doc.push_back("w" + std::to_string(w(rng)));
  const auto v = build_vocabulary(corpus, 2);
  EXPECT_EQ(v, build_vocabulary(corpus, 2));
  for (TokenId id = 0; id < v.size(); ++id) {
    if (id >= 2) {
      EXPECT_EQ(v.id(v.token(id)), id);
    }
  }
  // Reserved names cannot come out of the tokenizer.
  EXPECT_EQ(tokenize("<pad> <oov>"), (Tokens{"pad", "oov"}));
}

TEST(PadOrCrop, Examples) {
  auto d = pad_or_crop(std::vector<TokenId>{5, 9}, 4);
  EXPECT_EQ(d.token_ids, (std::vector<TokenId>{5, 9, 0, 0}));
  EXPECT_EQ(d.effective_length, 2u);

  d = pad_or_crop(std::vector<TokenId>{5, 9, 7, 3, 2, 8}, 4);
  EXPECT_EQ(d.token_ids, (std::vector<TokenId>{5, 9, 7, 3}));
  EXPECT_EQ(d.effective_length, 4u);

  d = pad_or_crop(std::vector<TokenId>{}, 3);
  EXPECT_EQ(d.token_ids, (std::vector<TokenId>{1, 0, 0}));
  EXPECT_EQ(d.effective_length, 1u);

  EXPECT_THROW(pad_or_crop(std::vector<TokenId>{1}, 0), ArgumentError);
}

TEST(EncodeDocument, LengthIsAlwaysLAndDecodeRoundTrips) {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> w(0, 30), len(0, 40), cap(1, 25);
  std::vector<Tokens> corpus(40);
  for (auto& doc : corpus)
    for (int i = 0; i < 15; ++i) doc.push_back("t" + std::to_string(w(rng)));
  const auto vocab = build_vocabulary(corpus, 1);
  for (int trial = 0; trial < 300; ++trial) {
    Tokens tokens(len(rng));
    for (auto& t : tokens) t = "t" + std::to_string(w(rng));
    const std::size_t L = cap(rng);
    const auto doc = encode_document(tokens, vocab, L);
    ASSERT_EQ(doc.token_ids.size(), L);
    const std::size_t expect_len = tokens.empty() ? 1 : std::min(tokens.size(), L);
    ASSERT_EQ(doc.effective_length, expect_len);
    for (std::size_t i = doc.effective_length; i < L; ++i) ASSERT_EQ(doc.token_ids[i], kPadId);
    if (!tokens.empty()) {
      const auto decoded = decode_document(doc, vocab);
      for (std::size_t i = 0; i < decoded.size(); ++i) {
        if (vocab.contains(tokens[i])) EXPECT_EQ(decoded[i], tokens[i]);
      }
    }
  }
}

TEST(EncodeDocument, UnknownTokensMapToOov) {
  const auto vocab = build_vocabulary({{"pain"}}, 1);
  const Tokens tokens = {"pain", "zzz"};
  const auto doc = encode_document(tokens, vocab, 3);
  EXPECT_EQ(doc.token_ids, (std::vector<TokenId>{2, kOovId, kPadId}));
}

TEST(JoinNote, SectionMarkersPrecedeNonemptySections) {
  PatientRecord r;
  r.note_cc = "chest pain";
  r.note_meds = "aspirin";
  EXPECT_EQ(join_note(r), "[cc] chest pain [meds] aspirin");
  EXPECT_EQ(join_note(r, NoteFormat{false}), "chest pain aspirin");
  EXPECT_EQ(join_note(PatientRecord{}), "");
}

TEST(Structured, DefaultLayoutShape) {
  const auto layout = default_layout();
  EXPECT_EQ(layout.fields().size(), 10u);
  std::size_t width = 0;
  for (const auto& f : layout.fields()) width += f.width();
  EXPECT_EQ(layout.dimension(), width);
  EXPECT_EQ(layout.bit_labels().size(), width);
}

TEST(Structured, OneHotCategorical) {
  const StructuredLayout layout({FieldSpec{"gender", FieldKind::categorical, {"female", "male"},
                                           false, {}, {}}});
  std::map<std::string, FieldValue> raw{{"gender", std::string("female")}};
  EXPECT_EQ(binarize_structured(raw, layout).bits, (std::vector<std::uint8_t>{1, 0, 0}));
  raw["gender"] = std::monostate{};
  EXPECT_EQ(binarize_structured(raw, layout).bits, (std::vector<std::uint8_t>{0, 0, 1}));
  raw["gender"] = std::string("unknown");
  EXPECT_EQ(binarize_structured(raw, layout).bits, (std::vector<std::uint8_t>{0, 0, 1}));
}

TEST(Structured, OtherBitCatchesUnknownCategories) {
  const auto layout = default_layout();
  const auto span = layout.span(layout.field_index("arrival_method"));
  std::map<std::string, FieldValue> raw{{"arrival_method", std::string("helicopter")}};
  const auto bits = binarize_structured(raw, layout).bits;
  // categories..., other, missing
  EXPECT_EQ(bits[span.offset + span.width - 2], 1);
  EXPECT_EQ(bits[span.offset + span.width - 1], 0);
}

TEST(Structured, NumericBinsMissingAndClamp) {
  const auto layout = default_layout();
  const auto f = layout.field_index("heart_rate");
  const auto span = layout.span(f);
  auto hr_bits = [&](FieldValue v) {
    std::map<std::string, FieldValue> raw{{"heart_rate", v}};
    const auto bits = binarize_structured(raw, layout).bits;
    return std::vector<std::uint8_t>(bits.begin() + span.offset,
                                     bits.begin() + span.offset + span.width);
  };
  EXPECT_EQ(hr_bits(std::monostate{}), (std::vector<std::uint8_t>{0, 0, 0, 0, 1}));
  EXPECT_EQ(hr_bits(300.0), (std::vector<std::uint8_t>{0, 0, 0, 1, 0}));
  EXPECT_EQ(hr_bits(10.0), (std::vector<std::uint8_t>{1, 0, 0, 0, 0}));
  EXPECT_EQ(hr_bits(100.0), (std::vector<std::uint8_t>{0, 0, 1, 0, 0}));
  EXPECT_EQ(hr_bits(99.5), (std::vector<std::uint8_t>{0, 1, 0, 0, 0}));
  EXPECT_EQ(hr_bits(std::string("fast")), (std::vector<std::uint8_t>{0, 0, 0, 0, 1}));
  EXPECT_EQ(hr_bits(std::string("72")), (std::vector<std::uint8_t>{0, 1, 0, 0, 0}));
}

TEST(Structured, ExactlyOneBitPerField) {
  const auto layout = default_layout();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> num(-50, 300);
  std::bernoulli_distribution coin(0.2);
  const std::vector<std::string> cats = {"main", "female", "80+", "ambulance", "private", "??"};
  std::uniform_int_distribution<std::size_t> pick(0, cats.size() - 1);
  for (int trial = 0; trial < 300; ++trial) {
    std::map<std::string, FieldValue> raw;
    for (const auto& field : layout.fields()) {
      if (coin(rng)) continue;  // absent key
      if (field.kind == FieldKind::numeric) {
        raw[field.name] = num(rng);
      } else {
        raw[field.name] = cats[pick(rng)];
      }
    }
    const auto bits = binarize_structured(raw, layout).bits;
    ASSERT_EQ(bits.size(), layout.dimension());
    std::size_t total = 0;
    for (std::size_t f = 0; f < layout.fields().size(); ++f) {
      const auto s = layout.span(f);
      std::size_t set = 0;
      for (std::size_t i = 0; i < s.width; ++i) set += bits[s.offset + i];
      ASSERT_EQ(set, 1u) << layout.fields()[f].name;
      total += set;
    }
    EXPECT_EQ(total, layout.fields().size());
  }
}

TEST(Structured, LayoutValidation) {
  EXPECT_THROW(StructuredLayout({FieldSpec{"hr", FieldKind::numeric, {}, false, {100, 60}, {}}}),
               ArgumentError);
  EXPECT_THROW(StructuredLayout({FieldSpec{"g", FieldKind::categorical, {"a"}, true, {}, {}},
                                 FieldSpec{"g", FieldKind::categorical, {"b"}, true, {}, {}}}),
               ArgumentError);
}

TEST(DatasetIo, RoundTrip) {
  PatientRecord r;
  r.id = "visit-7";
  r.note_cc = "chest pain";
  r.note_rn = "alert";
  r.structured = {{"gender", std::string("male")}, {"heart_rate", 112.0},
                  {"insurance", std::monostate{}}};
  r.outcome = 3;
  PatientRecord unlabeled;
  unlabeled.id = "visit-8";
  std::stringstream ss;
  write_dataset(ss, {r, unlabeled});
  const auto back = read_dataset(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0], r);
  EXPECT_EQ(back[1], unlabeled);
  EXPECT_FALSE(back[1].outcome.has_value());
}

TEST(DatasetIo, LineNumberIsTheFallbackId) {
  std::stringstream ss(R"({"note_cc":"a","outcome":null})" "\n\n"
                       R"({"note_cc":"b","outcome":2})" "\n");
  const auto rs = read_dataset(ss);
  ASSERT_EQ(rs.size(), 2u);
  EXPECT_EQ(rs[0].id, "1");
  EXPECT_EQ(rs[1].id, "3");
  EXPECT_EQ(rs[1].outcome, 2);
}

TEST(DatasetIo, ErrorsNameTheLineAndField) {
  std::stringstream bad_outcome(R"({"note_cc":"a","outcome":9})");
  try {
    read_dataset(bad_outcome);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "outcome");
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  std::stringstream bad_note(R"({"note_cc":5})");
  try {
    read_dataset(bad_note);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.field(), "note_cc");
  }
  std::stringstream not_json("{oops");
  EXPECT_THROW(read_dataset(not_json), ParseError);
}

TEST(DatasetIo, LayoutAndVocabularyJsonRoundTrip) {
  const auto layout = default_layout();
  EXPECT_EQ(layout_from_json(layout_to_json(layout)), layout);
  const auto vocab = build_vocabulary({{"b", "a", "a"}}, 1);
  EXPECT_EQ(vocabulary_from_json(vocabulary_to_json(vocab)), vocab);
}
