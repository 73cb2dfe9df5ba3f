#include "bor/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "bor/error.hpp"
#include "bor/format.hpp"
#include "bor/summation.hpp"
#include "json.hpp"

namespace bor {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, out);
  return ec == std::errc() && ptr == end;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

const std::vector<Judgments::Entry> kNoEntries;

}  // namespace

// --- Judgments ---------------------------------------------------------------

std::vector<std::string> Judgments::query_ids() const {
  std::vector<std::string> ids;
  ids.reserve(queries_.size());
  for (const auto& [q, _] : queries_) ids.push_back(q);
  return ids;
}

bool Judgments::has_query(std::string_view query) const { return queries_.find(query) != queries_.end(); }

std::optional<std::uint32_t> Judgments::doc_index(std::string_view doc) const {
  auto it = doc_lookup_.find(std::string(doc));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

const std::vector<Judgments::Entry>& Judgments::entries(std::string_view query) const {
  auto it = queries_.find(query);
  return it == queries_.end() ? kNoEntries : it->second;
}

std::optional<int> Judgments::grade(std::string_view query, std::string_view doc) const {
  const auto idx = doc_index(doc);
  if (!idx) return std::nullopt;
  const auto& es = entries(query);
  auto it = std::lower_bound(es.begin(), es.end(), *idx, [](const Entry& e, std::uint32_t d) { return e.doc < d; });
  if (it == es.end() || it->doc != *idx) return std::nullopt;
  return it->grade;
}

bool Judgments::is_relevant(std::string_view query, std::string_view doc) const {
  const auto g = grade(query, doc);
  return g && *g >= threshold_;
}

std::size_t Judgments::relevant_count(std::string_view query) const {
  const auto& es = entries(query);
  return static_cast<std::size_t>(
      std::count_if(es.begin(), es.end(), [this](const Entry& e) { return e.grade >= threshold_; }));
}

std::vector<std::string> Judgments::relevant_docs(std::string_view query) const {
  std::vector<std::string> out;
  for (const auto& e : entries(query))
    if (e.grade >= threshold_) out.push_back(doc_ids_[e.doc]);
  return out;  // doc indices follow lexicographic order
}

std::size_t Judgments::judgment_count() const {
  std::size_t n = 0;
  for (const auto& [_, es] : queries_) n += es.size();
  return n;
}

bool Judgments::operator==(const Judgments& other) const {
  if (threshold_ != other.threshold_ || doc_ids_ != other.doc_ids_ || queries_.size() != other.queries_.size())
    return false;
  auto a = queries_.begin();
  auto b = other.queries_.begin();
  for (; a != queries_.end(); ++a, ++b) {
    if (a->first != b->first || a->second.size() != b->second.size()) return false;
    for (std::size_t i = 0; i < a->second.size(); ++i)
      if (a->second[i].doc != b->second[i].doc || a->second[i].grade != b->second[i].grade) return false;
  }
  return true;
}

// --- JudgmentsBuilder --------------------------------------------------------

std::uint32_t JudgmentsBuilder::intern(std::string_view doc) {
  auto [it, inserted] = pool_.try_emplace(std::string(doc), static_cast<std::uint32_t>(ids_.size()));
  if (inserted) ids_.emplace_back(doc);
  return it->second;
}

void JudgmentsBuilder::add_query(std::string_view query) {
  if (queries_.find(query) == queries_.end()) queries_.emplace(std::string(query), std::vector<Judgments::Entry>{});
}

void JudgmentsBuilder::add(std::string_view query, std::uint32_t doc, int grade) {
  auto it = queries_.find(query);
  if (it == queries_.end()) it = queries_.emplace(std::string(query), std::vector<Judgments::Entry>{}).first;
  it->second.push_back({doc, grade});
}

void JudgmentsBuilder::add(std::string_view query, std::string_view doc, int grade) {
  add(query, intern(doc), grade);
}

Judgments JudgmentsBuilder::build() && {
  Judgments j;
  j.threshold_ = threshold_;

  std::vector<std::uint32_t> order(ids_.size());
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return ids_[a] < ids_[b]; });
  std::vector<std::uint32_t> remap(ids_.size());
  j.doc_ids_.reserve(ids_.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    remap[order[rank]] = rank;
    j.doc_ids_.push_back(std::move(ids_[order[rank]]));
  }
  j.doc_lookup_.reserve(j.doc_ids_.size());
  for (std::uint32_t i = 0; i < j.doc_ids_.size(); ++i) j.doc_lookup_.emplace(j.doc_ids_[i], i);

  for (auto& [query, entries] : queries_) {
    for (auto& e : entries) e.doc = remap[e.doc];
    std::sort(entries.begin(), entries.end(), [](const Judgments::Entry& a, const Judgments::Entry& b) {
      return a.doc != b.doc ? a.doc < b.doc : a.grade > b.grade;
    });
    std::vector<Judgments::Entry> unique;
    unique.reserve(entries.size());
    for (const auto& e : entries) {
      if (!unique.empty() && unique.back().doc == e.doc) {
        ++j.duplicate_warnings_;
        continue;
      }
      unique.push_back(e);
    }
    j.queries_.emplace(query, std::move(unique));
  }
  queries_.clear();
  ids_.clear();
  pool_.clear();
  return j;
}

// --- qrels -------------------------------------------------------------------

Judgments parse_qrels(std::istream& in, int threshold) {
  JudgmentsBuilder builder(threshold);
  std::string line;
  std::size_t line_no = 0;
  std::size_t records = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 4)
      throw ParseError("expected 4 fields (qid iter docid grade), got " + std::to_string(fields.size()), line_no);
    int grade = 0;
    if (!parse_number(fields[3], grade))
      throw ParseError("grade '" + std::string(fields[3]) + "' is not an integer", line_no);
    builder.add(fields[0], fields[2], grade);
    ++records;
  }
  if (records == 0) throw ParseError("qrels input is empty", 0);
  return std::move(builder).build();
}

Judgments parse_qrels_file(const std::filesystem::path& path, int threshold) {
  auto in = open_input(path);
  return parse_qrels(in, threshold);
}

void write_qrels(std::ostream& out, const Judgments& judgments) {
  for (const auto& q : judgments.query_ids())
    for (const auto& e : judgments.entries(q))
      out << q << " 0 " << judgments.doc_ids()[e.doc] << ' ' << e.grade << '\n';
}

// --- runs --------------------------------------------------------------------

void Run::canonicalize() {
  for (auto& [query, docs] : rankings) {
    std::sort(docs.begin(), docs.end(), [](const RankedDoc& a, const RankedDoc& b) {
      return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
    });
    for (std::size_t i = 1; i < docs.size(); ++i)
      if (docs[i].doc_id == docs[i - 1].doc_id)
        throw InputError("duplicate document " + docs[i].doc_id + " in query " + query);
  }
}

Run parse_run(std::istream& in) {
  struct Stated {
    long long rank;
    std::size_t line;
    std::size_t position;
  };
  Run run;
  std::map<std::string, std::vector<Stated>, std::less<>> stated;
  std::map<std::string, std::map<std::string, std::size_t, std::less<>>, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (fields.size() != 6)
      throw ParseError("expected 6 fields (qid Q0 docid rank score tag), got " + std::to_string(fields.size()),
                       line_no);
    long long rank = 0;
    if (!parse_number(fields[3], rank)) throw ParseError("rank '" + std::string(fields[3]) + "' is not an integer", line_no);
    double score = 0.0;
    if (!parse_number(fields[4], score) || !std::isfinite(score))
      throw ParseError("score '" + std::string(fields[4]) + "' is not a finite number", line_no);
    const std::string query(fields[0]);
    auto& docs_seen = seen[query];
    if (!docs_seen.emplace(std::string(fields[2]), line_no).second)
      throw ParseError("duplicate document " + std::string(fields[2]) + " in query " + query, line_no);
    auto& docs = run.rankings[query];
    stated[query].push_back({rank, line_no, docs.size()});
    docs.push_back({std::string(fields[2]), score});
    if (run.system_tag.empty()) run.system_tag = std::string(fields[5]);
  }

  for (auto& [query, docs] : run.rankings) {
    // Order implied by the rank column (line order breaks ties).
    auto& ranks = stated[query];
    std::stable_sort(ranks.begin(), ranks.end(), [](const Stated& a, const Stated& b) { return a.rank < b.rank; });
    std::vector<std::string> by_rank;
    by_rank.reserve(ranks.size());
    for (const auto& s : ranks) by_rank.push_back(docs[s.position].doc_id);
    std::sort(docs.begin(), docs.end(), [](const RankedDoc& a, const RankedDoc& b) {
      return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
    });
    for (std::size_t i = 0; i < docs.size(); ++i) {
      if (docs[i].doc_id != by_rank[i]) {
        ++run.rank_warnings;
        break;
      }
    }
  }
  return run;
}

Run parse_run_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_run(in);
}

void write_run(std::ostream& out, const Run& run, std::size_t depth) {
  const std::string tag = run.system_tag.empty() ? "bor" : run.system_tag;
  for (const auto& [query, docs] : run.rankings) {
    const std::size_t n = depth == 0 ? docs.size() : std::min(depth, docs.size());
    for (std::size_t i = 0; i < n; ++i)
      out << query << " Q0 " << docs[i].doc_id << ' ' << (i + 1) << ' ' << format_double(docs[i].score) << ' ' << tag
          << '\n';
  }
}

// --- corpus ------------------------------------------------------------------

const Document* LabeledCorpus::find(std::string_view id) const {
  for (const auto& d : documents)
    if (d.id == id) return &d;
  return nullptr;
}

std::size_t sanitize_utf8(std::string& text) {
  std::string out;
  std::size_t replaced = 0;
  const auto* s = reinterpret_cast<const unsigned char*>(text.data());
  const std::size_t n = text.size();
  std::size_t i = 0;
  bool dirty = false;
  while (i < n) {
    const unsigned char c = s[i];
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      len = 1;
      cp = c;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    }
    bool ok = len > 0 && i + len <= n;
    for (std::size_t k = 1; ok && k < len; ++k) {
      if ((s[i + k] & 0xC0) != 0x80) ok = false;
      else cp = (cp << 6) | (s[i + k] & 0x3F);
    }
    if (ok) {
      // Reject overlong forms, surrogates and out-of-range code points.
      static constexpr std::uint32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
      ok = cp >= kMin[len] && cp <= 0x10FFFF && !(cp >= 0xD800 && cp <= 0xDFFF);
    }
    if (!ok) {
      if (!dirty) {
        out.assign(text, 0, i);
        dirty = true;
      }
      out += "\xEF\xBF\xBD";
      ++replaced;
      ++i;
      continue;
    }
    if (dirty) out.append(text, i, len);
    i += len;
  }
  if (dirty) text = std::move(out);
  return replaced;
}

LabeledCorpus parse_corpus(std::istream& in) {
  LabeledCorpus corpus;
  std::unordered_map<std::string, std::size_t> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    corpus.encoding_warnings += sanitize_utf8(line);
    Document doc;
    if (trim(line).front() == '{') {
      nlohmann::json rec;
      try {
        rec = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid record: ") + e.what(), line_no);
      }
      if (!rec.is_object() || !rec.contains("id") || !rec.contains("text") || !rec["text"].is_string())
        throw ParseError("record needs string \"text\" and an \"id\"", line_no);
      const auto& id = rec["id"];
      if (id.is_string()) doc.id = id.get<std::string>();
      else if (id.is_number_integer()) doc.id = std::to_string(id.get<long long>());
      else throw ParseError("\"id\" must be a string or integer", line_no);
      doc.text = rec["text"].get<std::string>();
      if (auto it = rec.find("label"); it != rec.end() && !it->is_null()) {
        if (it->is_string()) doc.label = it->get<std::string>();
        else if (it->is_number_integer()) doc.label = std::to_string(it->get<long long>());
        else throw ParseError("\"label\" must be a string or integer", line_no);
      }
    } else {
      const auto t1 = line.find('\t');
      const auto t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
      if (t2 == std::string::npos) throw ParseError("expected TSV fields id<TAB>label<TAB>text", line_no);
      doc.id = line.substr(0, t1);
      doc.label = line.substr(t1 + 1, t2 - t1 - 1);
      doc.text = line.substr(t2 + 1);
    }
    if (doc.label && doc.label->empty()) doc.label.reset();
    if (doc.id.empty()) throw ParseError("empty document id", line_no);
    if (!ids.emplace(doc.id, line_no).second) throw ParseError("duplicate document id " + doc.id, line_no);
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

LabeledCorpus parse_corpus_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_corpus(in);
}

Judgments class_relevance(const LabeledCorpus& corpus, const std::vector<std::string>& query_doc_ids) {
  JudgmentsBuilder builder(1);
  std::unordered_map<std::string, std::uint32_t> doc_ref;
  std::map<std::string, std::vector<std::uint32_t>> members;
  for (const auto& d : corpus.documents) {
    const std::uint32_t ref = builder.intern(d.id);
    doc_ref.emplace(d.id, ref);
    if (d.label) members[*d.label].push_back(ref);
  }
  std::unordered_map<std::string, const Document*> by_id;
  for (const auto& d : corpus.documents) by_id.emplace(d.id, &d);

  for (const auto& q : query_doc_ids) {
    auto it = by_id.find(q);
    if (it == by_id.end()) throw InputError("query document " + q + " is not in the corpus");
    if (!it->second->label) throw InputError("query document " + q + " has no class label");
    builder.add_query(q);
    const std::uint32_t self = doc_ref.at(q);
    for (std::uint32_t ref : members.at(*it->second->label))
      if (ref != self) builder.add(q, ref, 1);
  }
  return std::move(builder).build();
}

DatasetStats dataset_stats(const Judgments& judgments, std::uint64_t corpus_size) {
  DatasetStats stats;
  stats.corpus_size = corpus_size;
  CompensatedSum total;
  std::size_t counted = 0;
  for (const auto& q : judgments.query_ids()) {
    const std::uint64_t r = judgments.relevant_count(q);
    if (r > corpus_size)
      throw InputError("query " + q + " has " + std::to_string(r) + " relevant items but the corpus size is " +
                       std::to_string(corpus_size));
    stats.per_query_relevant.emplace(q, r);
    if (r == 0) {
      stats.zero_relevant_queries.push_back(q);
    } else {
      total.add(static_cast<double>(r));
      ++counted;
    }
  }
  stats.mean_relevant = counted ? total.value() / static_cast<double>(counted) : 0.0;
  return stats;
}

std::string subject_line(std::string_view text) {
  std::string_view chosen;
  std::string_view first;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    if (starts_with_ci(line, "subject:")) {
      chosen = line;
      break;
    }
    if (first.empty() && !line.empty()) first = line;
    pos = end + 1;
  }
  std::string_view s = chosen.empty() ? first : chosen;
  bool stripped = true;
  while (stripped) {
    stripped = false;
    s = trim(s);
    for (std::string_view marker : {"subject:", "re:", "fwd:", "fw:"}) {
      if (starts_with_ci(s, marker)) {
        s.remove_prefix(marker.size());
        stripped = true;
      }
    }
  }
  return std::string(s);
}

}  // namespace bor
