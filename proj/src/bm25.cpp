#include "bor/bm25.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>

#include "bor/error.hpp"
#include "bor/summation.hpp"

namespace bor {

namespace {

constexpr const char* kSnapshotMagic = "bor-index";
constexpr int kSnapshotVersion = 1;

void write_blob(std::ostream& out, const std::string& s) { out << s.size() << ':' << s; }

std::string read_blob(std::istream& in) {
  std::size_t n = 0;
  char colon = 0;
  if (!(in >> n) || !in.get(colon) || colon != ':') throw ParseError("index snapshot: malformed string", 0);
  std::string s(n, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(n))) throw ParseError("index snapshot: truncated string", 0);
  return s;
}

void expect_word(std::istream& in, const char* word) {
  std::string w;
  if (!(in >> w) || w != word) throw ParseError(std::string("index snapshot: expected '") + word + "'", 0);
}

double mean_length(const std::vector<std::uint32_t>& lengths) {
  CompensatedSum s;
  for (auto l : lengths) s.add(static_cast<double>(l));
  return lengths.empty() ? 0.0 : s.value() / static_cast<double>(lengths.size());
}

}  // namespace

void Bm25Params::validate() const {
  if (!(k1 > 0.0)) throw DomainError("BM25 k1 must be positive");
  if (!(b >= 0.0 && b <= 1.0)) throw DomainError("BM25 b must lie in [0, 1]");
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerOptions& options) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (cur.size() >= 2 && !options.stopwords.count(cur)) out.push_back(cur);
    cur.clear();
  };
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && std::isalnum(c)) cur.push_back(static_cast<char>(std::tolower(c)));
    else flush();
  }
  flush();
  return out;
}

InvertedIndex InvertedIndex::build(const LabeledCorpus& corpus, TokenizerOptions tokenizer) {
  if (corpus.documents.empty()) throw InputError("cannot index an empty corpus");
  std::vector<std::size_t> order(corpus.documents.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return corpus.documents[a].id < corpus.documents[b].id; });
  for (std::size_t i = 1; i < order.size(); ++i)
    if (corpus.documents[order[i]].id == corpus.documents[order[i - 1]].id)
      throw InputError("duplicate document id " + corpus.documents[order[i]].id);

  InvertedIndex index;
  index.tokenizer_ = std::move(tokenizer);
  index.doc_ids_.reserve(order.size());
  index.doc_lengths_.reserve(order.size());
  std::unordered_map<std::string, std::uint32_t> tf;
  for (std::size_t ref = 0; ref < order.size(); ++ref) {
    const Document& d = corpus.documents[order[ref]];
    const auto tokens = tokenize(d.text, index.tokenizer_);
    tf.clear();
    for (const auto& t : tokens) ++tf[t];
    for (const auto& [term, count] : tf) index.postings_[term].push_back({static_cast<std::uint32_t>(ref), count});
    index.doc_ids_.push_back(d.id);
    index.doc_lengths_.push_back(static_cast<std::uint32_t>(tokens.size()));
  }
  index.avg_doc_length_ = mean_length(index.doc_lengths_);
  return index;
}

std::optional<std::uint32_t> InvertedIndex::find_doc(std::string_view id) const {
  auto it = std::lower_bound(doc_ids_.begin(), doc_ids_.end(), id);
  if (it == doc_ids_.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - doc_ids_.begin());
}

std::span<const Posting> InvertedIndex::postings(std::string_view term) const {
  auto it = postings_.find(std::string(term));
  if (it == postings_.end()) return {};
  return it->second;
}

bool InvertedIndex::operator==(const InvertedIndex& other) const {
  return postings_ == other.postings_ && doc_lengths_ == other.doc_lengths_ && doc_ids_ == other.doc_ids_ &&
         avg_doc_length_ == other.avg_doc_length_ && tokenizer_.stopwords == other.tokenizer_.stopwords;
}

void InvertedIndex::save(std::ostream& out) const {
  out << kSnapshotMagic << ' ' << kSnapshotVersion << '\n';
  out << "stopwords " << tokenizer_.stopwords.size() << '\n';
  for (const auto& w : tokenizer_.stopwords) {
    write_blob(out, w);
    out << '\n';
  }
  out << "docs " << doc_ids_.size() << '\n';
  for (std::size_t i = 0; i < doc_ids_.size(); ++i) {
    out << doc_lengths_[i] << ' ';
    write_blob(out, doc_ids_[i]);
    out << '\n';
  }
  std::vector<const std::string*> terms;
  terms.reserve(postings_.size());
  for (const auto& [t, _] : postings_) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [](const std::string* a, const std::string* b) { return *a < *b; });
  out << "terms " << terms.size() << '\n';
  for (const auto* t : terms) {
    const auto& ps = postings_.at(*t);
    out << *t << ' ' << ps.size();
    for (const auto& p : ps) out << ' ' << p.doc << ':' << p.tf;
    out << '\n';
  }
  if (!out) throw IoError("failed to write index snapshot");
}

InvertedIndex InvertedIndex::load(std::istream& in) {
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kSnapshotMagic || version != kSnapshotVersion)
    throw ParseError("not a bor-index snapshot (version " + std::to_string(kSnapshotVersion) + ")", 0);
  InvertedIndex index;
  std::size_t n = 0;
  expect_word(in, "stopwords");
  in >> n;
  for (std::size_t i = 0; i < n; ++i) index.tokenizer_.stopwords.insert(read_blob(in));
  expect_word(in, "docs");
  in >> n;
  index.doc_ids_.reserve(n);
  index.doc_lengths_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t len = 0;
    if (!(in >> len)) throw ParseError("index snapshot: bad document length", 0);
    in >> std::ws;
    index.doc_lengths_.push_back(len);
    index.doc_ids_.push_back(read_blob(in));
  }
  if (!std::is_sorted(index.doc_ids_.begin(), index.doc_ids_.end()))
    throw ParseError("index snapshot: documents out of order", 0);
  expect_word(in, "terms");
  in >> n;
  for (std::size_t i = 0; i < n; ++i) {
    std::string term;
    std::size_t df = 0;
    if (!(in >> term >> df)) throw ParseError("index snapshot: bad term header", 0);
    auto& ps = index.postings_[term];
    ps.reserve(df);
    for (std::size_t j = 0; j < df; ++j) {
      Posting p;
      char colon = 0;
      if (!(in >> p.doc >> colon >> p.tf) || colon != ':' || p.doc >= index.doc_ids_.size())
        throw ParseError("index snapshot: bad posting for term " + term, 0);
      ps.push_back(p);
    }
  }
  index.avg_doc_length_ = mean_length(index.doc_lengths_);
  return index;
}

double bm25_idf(std::uint32_t doc_count, std::uint32_t doc_freq) {
  const double n = doc_count;
  const double df = doc_freq;
  return std::log(1.0 + (n - df + 0.5) / (df + 0.5));
}

double bm25_term_score(double idf, std::uint32_t tf, std::uint32_t doc_length, double avg_doc_length,
                       const Bm25Params& params) {
  const double t = tf;
  const double norm = avg_doc_length > 0.0 ? static_cast<double>(doc_length) / avg_doc_length : 0.0;
  return idf * t * (params.k1 + 1.0) / (t + params.k1 * (1.0 - params.b + params.b * norm));
}

std::vector<ScoredDoc> search(const InvertedIndex& index, std::span<const std::string> query_terms,
                              std::size_t depth, const Bm25Params& params, std::optional<std::uint32_t> exclude) {
  if (depth == 0) throw DomainError("search depth must be at least 1");
  params.validate();
  const std::uint32_t n = index.doc_count();
  std::vector<double> acc(n, 0.0);
  std::vector<char> hit(n, 0);
  std::vector<std::uint32_t> touched;
  for (const auto& term : query_terms) {
    const auto ps = index.postings(term);
    if (ps.empty()) continue;
    const double idf = bm25_idf(n, static_cast<std::uint32_t>(ps.size()));
    for (const auto& p : ps) {
      if (!hit[p.doc]) {
        hit[p.doc] = 1;
        touched.push_back(p.doc);
      }
      acc[p.doc] += bm25_term_score(idf, p.tf, index.doc_length(p.doc), index.avg_doc_length(), params);
    }
  }

  // Heap top is the worst kept document: lowest score, then highest ref.
  auto better = [](const ScoredDoc& a, const ScoredDoc& b) {
    return a.score != b.score ? a.score > b.score : a.doc < b.doc;
  };
  std::priority_queue<ScoredDoc, std::vector<ScoredDoc>, decltype(better)> heap(better);
  for (std::uint32_t d : touched) {
    if (exclude && d == *exclude) continue;
    const ScoredDoc cand{d, acc[d]};
    if (heap.size() < depth) {
      heap.push(cand);
    } else if (better(cand, heap.top())) {
      heap.pop();
      heap.push(cand);
    }
  }
  std::vector<ScoredDoc> out(heap.size());
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = heap.top();
    heap.pop();
  }
  return out;
}

}  // namespace bor
