#include "bor/ingest.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "bor/error.hpp"

namespace {

bor::Judgments qrels(const std::string& text, int threshold = 1) {
  std::istringstream in(text);
  return bor::parse_qrels(in, threshold);
}

bor::Run run(const std::string& text) {
  std::istringstream in(text);
  return bor::parse_run(in);
}

bor::LabeledCorpus corpus(const std::string& text) {
  std::istringstream in(text);
  return bor::parse_corpus(in);
}

TEST(Qrels, ParsesGradesAndThreshold) {
  const auto j = qrels("q1 0 d1 1\nq1 0 d2 0\nq1 0 d3 2\nq2 0 d1 0\n");
  EXPECT_EQ(j.query_ids(), (std::vector<std::string>{"q1", "q2"}));
  EXPECT_EQ(j.relevant_count("q1"), 2u);
  EXPECT_EQ(j.relevant_count("q2"), 0u);
  EXPECT_TRUE(j.has_query("q2"));
  EXPECT_TRUE(j.is_relevant("q1", "d3"));
  EXPECT_FALSE(j.is_relevant("q1", "d2"));
  EXPECT_EQ(j.grade("q1", "d2"), 0);
  EXPECT_FALSE(j.grade("q1", "unknown").has_value());
  EXPECT_EQ(j.relevant_docs("q1"), (std::vector<std::string>{"d1", "d3"}));

  const auto strict = qrels("q1 0 d1 1\nq1 0 d3 2\n", 2);
  EXPECT_EQ(strict.relevant_count("q1"), 1u);
}

TEST(Qrels, DuplicatesKeepMaxGradeAndWarn) {
  const auto j = qrels("q1 0 d1 0\nq1 0 d1 2\nq1 0 d1 1\n");
  EXPECT_EQ(j.grade("q1", "d1"), 2);
  EXPECT_EQ(j.duplicate_warnings(), 2u);
  EXPECT_EQ(j.judgment_count(), 1u);
}

TEST(Qrels, NegativeGradesAreNotRelevant) {
  const auto j = qrels("q1 0 d1 -1\nq1 0 d2 1\n");
  EXPECT_EQ(j.relevant_count("q1"), 1u);
}

TEST(Qrels, ErrorsCarryLineNumbers) {
  try {
    qrels("q1 0 d1 1\nq1 0 d2\n");
    FAIL() << "expected a parse error";
  } catch (const bor::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    qrels("q1 0 d1 1\n\nq1 0 d2 x\n");
    FAIL() << "expected a parse error";
  } catch (const bor::ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(qrels(""), bor::ParseError);
  EXPECT_THROW(qrels("\n  \n"), bor::ParseError);
}

TEST(Qrels, InputOrderDoesNotMatter) {
  std::vector<std::string> lines;
  for (int q = 0; q < 5; ++q)
    for (int d = 0; d < 20; ++d) lines.push_back("q" + std::to_string(q) + " 0 doc" + std::to_string(d * 7 % 20) + " " +
                                                 std::to_string((q + d) % 3));
  std::string a;
  for (const auto& l : lines) a += l + "\n";
  std::mt19937 rng(1);
  std::shuffle(lines.begin(), lines.end(), rng);
  std::string b;
  for (const auto& l : lines) b += l + "\n";
  EXPECT_TRUE(qrels(a) == qrels(b));
}

TEST(Qrels, WriteRoundTrips) {
  const auto j = qrels("q2 0 b 1\nq1 0 a 0\nq1 0 c 3\n");
  std::ostringstream out;
  bor::write_qrels(out, j);
  EXPECT_TRUE(qrels(out.str()) == j);
}

TEST(Run, SortsByScoreThenDocId) {
  const auto r = run("q1 Q0 b 1 1.0 sys\nq1 Q0 a 2 1.0 sys\nq1 Q0 c 3 2.0 sys\n");
  const auto& docs = r.rankings.at("q1");
  ASSERT_EQ(docs.size(), 3u);
  EXPECT_EQ(docs[0].doc_id, "c");
  EXPECT_EQ(docs[1].doc_id, "a");
  EXPECT_EQ(docs[2].doc_id, "b");
  EXPECT_EQ(r.system_tag, "sys");
  EXPECT_EQ(r.rank_warnings, 1u);
}

TEST(Run, ConsistentRanksRaiseNoWarning) {
  const auto r = run("q1 Q0 x 1 3.5 s\nq1 Q0 y 2 2.5 s\nq2 Q0 x 1 9 s\n");
  EXPECT_EQ(r.rank_warnings, 0u);
  EXPECT_EQ(r.rankings.size(), 2u);
}

TEST(Run, RejectsMalformedLines) {
  EXPECT_THROW(run("q1 Q0 a 1 1.0\n"), bor::ParseError);
  EXPECT_THROW(run("q1 Q0 a one 1.0 s\n"), bor::ParseError);
  EXPECT_THROW(run("q1 Q0 a 1 nan s\n"), bor::ParseError);
  EXPECT_THROW(run("q1 Q0 a 1 1.0 s\nq1 Q0 a 2 0.5 s\n"), bor::ParseError);
}

TEST(Run, WriteIsLosslessAndTruncates) {
  const auto r = run("q1 Q0 a 1 0.1 s\nq1 Q0 b 2 0.30000000000000004 s\nq1 Q0 c 3 1e-300 s\n");
  std::ostringstream full;
  bor::write_run(full, r);
  const auto back = run(full.str());
  EXPECT_EQ(back.rankings, r.rankings);
  std::ostringstream top;
  bor::write_run(top, r, 2);
  EXPECT_EQ(run(top.str()).rankings.at("q1").size(), 2u);
}

TEST(Corpus, JsonLinesAndTsv) {
  const auto c = corpus(
      "{\"id\": \"a\", \"text\": \"hello world\", \"label\": \"x\"}\n"
      "{\"id\": 7, \"text\": \"numeric id\", \"label\": 3}\n"
      "{\"id\": \"b\", \"text\": \"no label\"}\n");
  ASSERT_EQ(c.documents.size(), 3u);
  EXPECT_EQ(c.documents[1].id, "7");
  EXPECT_EQ(c.documents[1].label, "3");
  EXPECT_FALSE(c.documents[2].label.has_value());

  const auto t = corpus("a\tx\tsome text\nb\ty\tmore\ttabs\n");
  ASSERT_EQ(t.documents.size(), 2u);
  EXPECT_EQ(t.documents[1].text, "more\ttabs");
  EXPECT_EQ(t.documents[1].label, "y");
}

TEST(Corpus, RejectsBadRecords) {
  EXPECT_THROW(corpus("{\"id\": \"a\"}\n"), bor::ParseError);
  EXPECT_THROW(corpus("{broken\n"), bor::ParseError);
  EXPECT_THROW(corpus("only-one-field\n"), bor::ParseError);
  try {
    corpus("a\tx\tt\na\ty\tu\n");
    FAIL();
  } catch (const bor::ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Corpus, InvalidUtf8IsReplacedAndCounted) {
  std::string bad = "a\tx\tcaf\xC3\xA9 \xFF\xFE ok\n";
  const auto c = corpus(bad);
  EXPECT_EQ(c.encoding_warnings, 2u);
  EXPECT_EQ(c.documents[0].text, "caf\xC3\xA9 \xEF\xBF\xBD\xEF\xBF\xBD ok");
  std::string overlong = "\xC0\xAF";
  EXPECT_EQ(bor::sanitize_utf8(overlong), 2u);
  std::string fine = "\xE2\x82\xAC\xF0\x9F\x98\x80";
  EXPECT_EQ(bor::sanitize_utf8(fine), 0u);
}

TEST(ClassRelevance, ExcludesSelf) {
  const auto c = corpus("a\tx\t.\nb\tx\t.\nc\tx\t.\nd\ty\t.\ne\ty\t.\nf\tz\t.\n");
  const auto j = bor::class_relevance(c, {"a", "d", "f"});
  EXPECT_EQ(j.relevant_count("a"), 2u);
  EXPECT_FALSE(j.is_relevant("a", "a"));
  EXPECT_TRUE(j.is_relevant("a", "c"));
  EXPECT_EQ(j.relevant_count("d"), 1u);
  EXPECT_EQ(j.relevant_count("f"), 0u);
  EXPECT_TRUE(j.has_query("f"));

  const auto stats = bor::dataset_stats(j, 6);
  EXPECT_EQ(stats.zero_relevant_queries, std::vector<std::string>{"f"});
  EXPECT_DOUBLE_EQ(stats.mean_relevant, 1.5);
}

TEST(ClassRelevance, MissingLabelOrDocumentIsAnError) {
  const auto c = corpus("{\"id\": \"a\", \"text\": \"t\"}\n{\"id\": \"b\", \"text\": \"t\", \"label\": \"x\"}\n");
  EXPECT_THROW(bor::class_relevance(c, {"a"}), bor::InputError);
  EXPECT_THROW(bor::class_relevance(c, {"zzz"}), bor::InputError);
}

TEST(DatasetStats, RejectsRelevantCountAboveCorpus) {
  const auto j = qrels("q 0 a 1\nq 0 b 1\nq 0 c 1\n");
  EXPECT_THROW(bor::dataset_stats(j, 2), bor::InputError);
}

TEST(SubjectLine, HeaderOrFirstLine) {
  EXPECT_EQ(bor::subject_line("From: x@y\nSubject: Re: Re: Orbit decay\n\nbody"), "Orbit decay");
  EXPECT_EQ(bor::subject_line("\n\n  first real line \nsecond"), "first real line");
  EXPECT_EQ(bor::subject_line("SUBJECT: FWD: fw: news"), "news");
  EXPECT_EQ(bor::subject_line(""), "");
}

}  // namespace
