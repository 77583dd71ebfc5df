// Copyright 2026 The Trimine Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "trimine/corpus.h"

#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "test_util.h"
#include "trimine/error.h"
#include "trimine/rng.h"
#include "trimine/utf8.h"

namespace trimine::corpus {
namespace {

using Sentences = std::vector<std::string>;

//===----------------------------------------------------------------------===//
// segment_sentences
//===----------------------------------------------------------------------===//

TEST(SegmentSentences, SplitsOnTerminalPunctuation) {
  EXPECT_EQ(segment_sentences("Hello. World!", "en"), (Sentences{"Hello.", "World!"}));
}

TEST(SegmentSentences, EmptyText) {
  EXPECT_TRUE(segment_sentences("", "en").empty());
  EXPECT_TRUE(segment_sentences("   \n\t ", "en").empty());
}

TEST(SegmentSentences, FullwidthDelimitersSplitWithoutSpace) {
  EXPECT_EQ(segment_sentences("他走了。他回来了。", "zh"),
            (Sentences{"他走了。", "他回来了。"}));
  EXPECT_EQ(segment_sentences("本当？はい！", "ja"), (Sentences{"本当？", "はい！"}));
}

TEST(SegmentSentences, ConsecutiveDelimitersBindLeft) {
  EXPECT_EQ(segment_sentences("Really?! Yes... Fine", "en"),
            (Sentences{"Really?!", "Yes...", "Fine"}));
}

TEST(SegmentSentences, EllipsisCharacter) {
  EXPECT_EQ(segment_sentences("Wait… Go.", "en"), (Sentences{"Wait…", "Go."}));
}

TEST(SegmentSentences, NoSplitWithoutFollowingWhitespace) {
  EXPECT_EQ(segment_sentences("Version 3.14 is out. Yes", "en"),
            (Sentences{"Version 3.14 is out.", "Yes"}));
  EXPECT_EQ(segment_sentences("see example.com now.", "en"),
            (Sentences{"see example.com now."}));
}

TEST(SegmentSentences, InitialInsideSentenceDoesNotSplit) {
  EXPECT_EQ(segment_sentences("President John F. Kennedy spoke. Then left.", "en"),
            (Sentences{"President John F. Kennedy spoke.", "Then left."}));
}

TEST(SegmentSentences, SingleLetterSentencesStillSplit) {
  EXPECT_EQ(segment_sentences("A. B.", "en"), (Sentences{"A.", "B."}));
}

TEST(SegmentSentences, CollapsesInternalWhitespace) {
  EXPECT_EQ(segment_sentences("  One\n two.\t\tThree  ", "en"),
            (Sentences{"One two.", "Three"}));
}

TEST(SegmentSentences, ReplaceableStrategy) {
  struct LineSegmenter final : SentenceSegmenter {
    std::vector<std::string> segment(std::string_view text,
                                     std::string_view) const override {
      std::vector<std::string> out;
      std::istringstream in{std::string(text)};
      for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(line);
      }
      return out;
    }
  };
  const LineSegmenter lines;
  std::istringstream in(R"({"id":"d1","lang":"en","url":"u","timestamp":0,"text":"a b\nc. d"})");
  const auto result = ingest_documents(in, {.segmenter = &lines});
  ASSERT_EQ(result.documents.size(), 1u);
  EXPECT_EQ(result.documents[0].sentences, (Sentences{"a b", "c. d"}));
}

// Joining the sentences with single spaces reproduces the whitespace-normalized
// input. Fullwidth delimiters split without a space, so with those present
// the comparison is made with all whitespace removed.
TEST(SegmentSentences, ConcatenationProperty) {
  const std::vector<std::string> pieces = {
      "Hello", "world", ".", "!", "?", "…", "J.", "a", "Zz", "3.5", " ", "  ",
      "\n",    "\t",    "。", "他", "！", "？", "..", "?!", "x.", "The end"};
  Rng rng(2024);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string text;
    const auto n = rng.uniform_below(20);
    for (std::uint64_t i = 0; i < n; ++i) {
      text += pieces[rng.uniform_below(pieces.size())];
      if (rng.coin()) text += " ";
    }
    const auto sentences = segment_sentences(text, "xx");
    std::string joined;
    for (const auto& s : sentences) {
      ASSERT_FALSE(utf8::normalize_whitespace(s).empty()) << "text: " << text;
      if (!joined.empty()) joined += " ";
      joined += s;
    }
    const std::string normalized = utf8::normalize_whitespace(text);
    if (normalized.find("。") == std::string::npos &&
        normalized.find("！") == std::string::npos &&
        normalized.find("？") == std::string::npos) {
      EXPECT_EQ(joined, normalized) << "text: " << text;
    } else {
      EXPECT_EQ(testing::strip_spaces(joined), testing::strip_spaces(normalized))
          << "text: " << text;
    }
  }
}

//===----------------------------------------------------------------------===//
// ingest_documents
//===----------------------------------------------------------------------===//

TEST(IngestDocuments, OneValidLine) {
  std::istringstream in(R"({"id":"d1","lang":"en","url":"u","timestamp":0,"text":"A. B."})");
  const auto result = ingest_documents(in);
  ASSERT_EQ(result.documents.size(), 1u);
  const Document& d = result.documents[0];
  EXPECT_EQ(d.id, "d1");
  EXPECT_EQ(d.lang, "en");
  EXPECT_EQ(d.url, "u");
  EXPECT_EQ(d.timestamp, 0);
  EXPECT_EQ(d.raw_text, "A. B.");
  EXPECT_EQ(d.sentences, (Sentences{"A.", "B."}));
}

TEST(IngestDocuments, EmptyStream) {
  std::istringstream in("");
  EXPECT_TRUE(ingest_documents(in).documents.empty());
}

TEST(IngestDocuments, DuplicateIdIsFatal) {
  std::istringstream in(
      R"({"id":"d1","lang":"en","url":"u","timestamp":0,"text":"A."})"
      "\n"
      R"({"id":"d1","lang":"fr","url":"v","timestamp":1,"text":"B."})");
  try {
    ingest_documents(in, {.lenient = true});
    FAIL() << "expected DuplicateIdError";
  } catch (const DuplicateIdError& e) {
    EXPECT_EQ(e.id(), "d1");
  }
}

TEST(IngestDocuments, MalformedLineReportsLineNumber) {
  std::istringstream in(
      R"({"id":"d1","lang":"en","url":"u","timestamp":0,"text":"A."})"
      "\n{not json\n");
  try {
    ingest_documents(in);
    FAIL() << "expected RecordError";
  } catch (const RecordError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(IngestDocuments, LenientSkipsMalformedLines) {
  std::istringstream in(
      "{not json\n"
      R"({"id":"d1","lang":"EN","url":"u","timestamp":0,"text":"A."})"
      "\n"
      R"({"id":"d2","lang":"en","url":"u","timestamp":"x","text":"A."})"
      "\n"
      R"({"id":"d3","lang":"en","url":"u","timestamp":5,"text":"A.","extra":1})");
  const auto result = ingest_documents(in, {.lenient = true});
  ASSERT_EQ(result.documents.size(), 1u);
  EXPECT_EQ(result.documents[0].id, "d3");
  EXPECT_EQ(result.skipped.size(), 3u);
}

TEST(IngestDocuments, MissingFieldIsRecordError) {
  std::istringstream in(R"({"id":"d1","lang":"en","timestamp":0,"text":"A."})");
  EXPECT_THROW(ingest_documents(in), RecordError);
}

TEST(IngestDocuments, RoundTripsThroughJsonl) {
  Rng rng(11);
  const std::vector<std::string> words = {"alpha", "Beta.", "gamma!", "delta?",
                                          "  ", "é", "\"quoted\"", "tab\there"};
  std::vector<Document> docs;
  for (int i = 0; i < 50; ++i) {
    std::string text;
    for (int w = 0; w < 12; ++w) text += words[rng.uniform_below(words.size())] + " ";
    Document d;
    d.id = "doc-" + std::to_string(i);
    d.lang = i % 2 ? "de" : "en";
    d.url = "https://example.com/" + std::to_string(i);
    d.timestamp = static_cast<std::int64_t>(rng.uniform_below(1u << 30));
    d.raw_text = text;
    d.sentences = segment_sentences(text, d.lang);
    docs.push_back(d);
  }
  std::string jsonl;
  for (const auto& d : docs) jsonl += to_jsonl(d) + "\n";
  std::istringstream in(jsonl);
  const auto back = ingest_documents(in).documents;
  ASSERT_EQ(back.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(back[i].id, docs[i].id);
    EXPECT_EQ(back[i].timestamp, docs[i].timestamp);
    EXPECT_EQ(back[i].sentences, docs[i].sentences);
    EXPECT_EQ(utf8::normalize_whitespace(back[i].raw_text),
              utf8::normalize_whitespace(docs[i].raw_text));
  }
}

TEST(DocumentIndex, LookupAndUnknownId) {
  std::vector<Document> docs(2);
  docs[0].id = "a";
  docs[1].id = "b";
  const DocumentIndex index(docs);
  EXPECT_EQ(&index.at("b"), &docs[1]);
  EXPECT_EQ(index.find("c"), nullptr);
  EXPECT_THROW(index.at("c"), UnknownDocumentError);
}

//===----------------------------------------------------------------------===//
// clean_document
//===----------------------------------------------------------------------===//

Document make_doc(const std::string& text) {
  Document d;
  d.id = "d";
  d.lang = "en";
  d.url = "u";
  d.raw_text = text;
  d.sentences = segment_sentences(text, "en");
  return d;
}

TEST(CleanDocument, BlockedKeywordRejects) {
  CleaningRules rules;
  rules.blocked_keywords = {"subscribe"};
  const auto result =
      clean_document(make_doc("Great news. Click here to Subscribe today."), rules);
  const auto* rejected = std::get_if<Rejected>(&result);
  ASSERT_NE(rejected, nullptr);
  EXPECT_EQ(rejected->reason, Rejected::Reason::kKeyword);
  EXPECT_EQ(rejected->detail, "subscribe");
}

TEST(CleanDocument, CleanDocumentPassesUnchanged) {
  const Document doc = make_doc("One. Two. Three.");
  const auto result = clean_document(doc, CleaningRules{});
  ASSERT_TRUE(std::holds_alternative<Document>(result));
  EXPECT_EQ(std::get<Document>(result), doc);
}

TEST(CleanDocument, TooFewSentences) {
  const auto result = clean_document(make_doc("Only one."), CleaningRules{});
  const auto* rejected = std::get_if<Rejected>(&result);
  ASSERT_NE(rejected, nullptr);
  EXPECT_EQ(rejected->reason, Rejected::Reason::kTooFewSentences);
}

TEST(CleanDocument, TooManySentences) {
  CleaningRules rules;
  rules.max_sentences = 2;
  const auto result = clean_document(make_doc("A one. B two. C three."), rules);
  const auto* rejected = std::get_if<Rejected>(&result);
  ASSERT_NE(rejected, nullptr);
  EXPECT_EQ(rejected->reason, Rejected::Reason::kTooManySentences);
}

TEST(CleanDocument, KeywordReportedBeforeLength) {
  CleaningRules rules;
  rules.blocked_keywords = {"ad", "promo"};
  const auto result = clean_document(make_doc("Promo."), rules);
  ASSERT_TRUE(std::holds_alternative<Rejected>(result));
  EXPECT_EQ(std::get<Rejected>(result).detail, "promo");
}

TEST(CleanDocument, Idempotent) {
  CleaningRules rules;
  rules.blocked_keywords = {"spam"};
  for (const char* text : {"One. Two.", "spam here. and here.", "x.", "A b. C d. E f."}) {
    const auto first = clean_document(make_doc(text), rules);
    if (const auto* doc = std::get_if<Document>(&first)) {
      const auto second = clean_document(*doc, rules);
      ASSERT_TRUE(std::holds_alternative<Document>(second));
      EXPECT_EQ(std::get<Document>(second), *doc);
    }
  }
}

TEST(CleaningRules, Validation) {
  EXPECT_TRUE(validate(CleaningRules{}).empty());
  CleaningRules bad;
  bad.blocked_keywords = {"", "Upper"};
  bad.min_sentences = 0;
  EXPECT_EQ(validate(bad).size(), 3u);
  CleaningRules inverted;
  inverted.min_sentences = 5;
  inverted.max_sentences = 4;
  EXPECT_EQ(validate(inverted).size(), 1u);
}

}  // namespace
}  // namespace trimine::corpus
