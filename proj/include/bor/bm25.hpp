#pragma once

// Minimal lexical retriever: tokenizer, inverted index, BM25, bounded top-K.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bor/ingest.hpp"

namespace bor {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  void validate() const;
};

struct TokenizerOptions {
  std::set<std::string, std::less<>> stopwords;
};

/// Lowercases ASCII, splits on anything that is not an ASCII letter or digit
/// and drops tokens shorter than two characters and configured stopwords.
std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options = {});

struct Posting {
  std::uint32_t doc = 0;  // doc ref
  std::uint32_t tf = 0;

  bool operator==(const Posting&) const = default;
};

struct ScoredDoc {
  std::uint32_t doc = 0;
  double score = 0.0;

  bool operator==(const ScoredDoc&) const = default;
};

/// Doc refs follow ascending doc-id order, so ref order and doc-id order agree.
class InvertedIndex {
 public:
  /// Throws InputError on an empty corpus or duplicate doc ids.
  static InvertedIndex build(const LabeledCorpus& corpus, TokenizerOptions tokenizer = {});
  static InvertedIndex load(std::istream& in);
  void save(std::ostream& out) const;

  std::uint32_t doc_count() const { return static_cast<std::uint32_t>(doc_ids_.size()); }
  double avg_doc_length() const { return avg_doc_length_; }
  std::uint32_t doc_length(std::uint32_t doc) const { return doc_lengths_.at(doc); }
  const std::string& doc_id(std::uint32_t doc) const { return doc_ids_.at(doc); }
  std::optional<std::uint32_t> find_doc(std::string_view id) const;
  /// Empty span for unknown terms.
  std::span<const Posting> postings(std::string_view term) const;
  std::size_t term_count() const { return postings_.size(); }
  const TokenizerOptions& tokenizer() const { return tokenizer_; }

  bool operator==(const InvertedIndex& other) const;

 private:
  std::unordered_map<std::string, std::vector<Posting>> postings_;
  std::vector<std::uint32_t> doc_lengths_;
  std::vector<std::string> doc_ids_;
  double avg_doc_length_ = 0.0;
  TokenizerOptions tokenizer_;
};

/// Robertson-Sparck Jones idf with the +1 inside the log, always positive.
double bm25_idf(std::uint32_t doc_count, std::uint32_t doc_freq);

/// Term contribution for one document.
double bm25_term_score(double idf, std::uint32_t tf, std::uint32_t doc_length, double avg_doc_length,
                       const Bm25Params& params);

/// Top-K documents that match at least one query term, by score descending
/// then doc ref ascending. Repeated query terms count once per occurrence.
std::vector<ScoredDoc> search(const InvertedIndex& index, std::span<const std::string> query_terms,
                              std::size_t depth, const Bm25Params& params = {},
                              std::optional<std::uint32_t> exclude = std::nullopt);

}  // namespace bor
