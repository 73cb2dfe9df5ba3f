#pragma once

// Relevance judgments, retrieval runs and labelled corpora.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bor {

/// Per-query graded judgments over an interned doc-id pool.
///
/// Doc ids are interned in lexicographic order, so two Judgments built from
/// the same records compare equal regardless of input order.
class Judgments {
 public:
  struct Entry {
    std::uint32_t doc = 0;  // index into doc_ids()
    int grade = 0;
  };

  int threshold() const { return threshold_; }
  std::size_t duplicate_warnings() const { return duplicate_warnings_; }

  /// Query ids in ascending order.
  std::vector<std::string> query_ids() const;
  bool has_query(std::string_view query) const;

  std::optional<int> grade(std::string_view query, std::string_view doc) const;
  bool is_relevant(std::string_view query, std::string_view doc) const;
  std::size_t relevant_count(std::string_view query) const;
  /// Relevant doc ids of a query, ascending.
  std::vector<std::string> relevant_docs(std::string_view query) const;

  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  std::optional<std::uint32_t> doc_index(std::string_view doc) const;
  /// Entries of a query sorted by doc index; empty for unknown queries.
  const std::vector<Entry>& entries(std::string_view query) const;

  std::size_t judgment_count() const;

  bool operator==(const Judgments& other) const;

 private:
  friend class JudgmentsBuilder;

  int threshold_ = 1;
  std::size_t duplicate_warnings_ = 0;
  std::vector<std::string> doc_ids_;
  std::unordered_map<std::string, std::uint32_t> doc_lookup_;
  std::map<std::string, std::vector<Entry>, std::less<>> queries_;
};

/// Collects (query, doc, grade) records; duplicates keep the maximum grade.
class JudgmentsBuilder {
 public:
  explicit JudgmentsBuilder(int threshold) : threshold_(threshold) {}

  void add(std::string_view query, std::string_view doc, int grade);
  /// Registers a query even if it ends up with no judged documents.
  void add_query(std::string_view query);
  Judgments build() &&;

  /// Adds `doc` under an already interned index; used for bulk construction.
  std::uint32_t intern(std::string_view doc);
  void add(std::string_view query, std::uint32_t doc, int grade);

 private:
  int threshold_;
  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::uint32_t> pool_;
  std::map<std::string, std::vector<Judgments::Entry>, std::less<>> queries_;
};

struct RankedDoc {
  std::string doc_id;
  double score = 0.0;

  bool operator==(const RankedDoc&) const = default;
};

/// A ranked list per query, always sorted by score descending then doc id ascending.
struct Run {
  std::map<std::string, std::vector<RankedDoc>, std::less<>> rankings;
  std::string system_tag;
  std::size_t rank_warnings = 0;  // queries whose stated ranks disagree with score order

  /// Sorts every ranking into canonical order. Throws InputError on a duplicate doc.
  void canonicalize();
};

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> label;
};

struct LabeledCorpus {
  std::vector<Document> documents;
  std::size_t encoding_warnings = 0;  // invalid UTF-8 sequences replaced

  const Document* find(std::string_view id) const;
};

struct DatasetStats {
  std::uint64_t corpus_size = 0;
  std::map<std::string, std::uint64_t> per_query_relevant;
  double mean_relevant = 0.0;  // over queries with at least one relevant item
  std::vector<std::string> zero_relevant_queries;
};

/// Lines "qid iter docid grade". Throws ParseError with the line number.
Judgments parse_qrels(std::istream& in, int threshold);
Judgments parse_qrels_file(const std::filesystem::path& path, int threshold);
void write_qrels(std::ostream& out, const Judgments& judgments);

/// Lines "qid Q0 docid rank score tag". Rankings are re-sorted by score.
Run parse_run(std::istream& in);
Run parse_run_file(const std::filesystem::path& path);
/// Writes at most `depth` documents per query (all when 0).
void write_run(std::ostream& out, const Run& run, std::size_t depth = 0);

/// One record per line: {"id", "text", "label"?} objects or TSV "id<TAB>label<TAB>text".
LabeledCorpus parse_corpus(std::istream& in);
LabeledCorpus parse_corpus_file(const std::filesystem::path& path);

/// Relevant set of each query doc = every other document with the same label.
Judgments class_relevance(const LabeledCorpus& corpus, const std::vector<std::string>& query_doc_ids);

DatasetStats dataset_stats(const Judgments& judgments, std::uint64_t corpus_size);

/// Query text for a document: its Subject header (or first non-empty line)
/// with leading "Subject:", "Re:", "Fwd:" markers removed.
std::string subject_line(std::string_view text);

/// Replaces invalid UTF-8 sequences with U+FFFD; returns how many were replaced.
std::size_t sanitize_utf8(std::string& text);

}  // namespace bor
