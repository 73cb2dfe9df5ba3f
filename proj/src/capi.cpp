#include "bor/bor.h"

#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "bor/advisor.hpp"
#include "bor/bm25.hpp"
#include "bor/error.hpp"
#include "bor/evaluator.hpp"
#include "bor/ingest.hpp"
#include "bor/metrics.hpp"
#include "bor/parallel.hpp"
#include "bor/probability.hpp"
#include "bor/simulator.hpp"

struct bor_judgments {
  bor::Judgments impl;
};

struct bor_run {
  bor::Run impl;
};

struct bor_corpus {
  bor::LabeledCorpus impl;
};

struct bor_index {
  bor::InvertedIndex impl;
};

struct bor_sweep {
  std::vector<bor::SweepStep> steps;
};

namespace {

thread_local std::string last_error;
thread_local std::size_t last_error_line = 0;

bor_status to_status(bor::ErrorCode code) {
  switch (code) {
    case bor::ErrorCode::domain: return BOR_ERR_DOMAIN;
    case bor::ErrorCode::parse: return BOR_ERR_PARSE;
    case bor::ErrorCode::io: return BOR_ERR_IO;
    case bor::ErrorCode::no_queries: return BOR_ERR_NO_QUERIES;
    case bor::ErrorCode::invalid_input: return BOR_ERR_INVALID_INPUT;
    case bor::ErrorCode::internal: return BOR_ERR_INTERNAL;
  }
  return BOR_ERR_INTERNAL;
}

bor_status fail(bor_status status, std::string message, std::size_t line = 0) {
  last_error = std::move(message);
  last_error_line = line;
  return status;
}

// Runs fn, mapping exceptions to status codes and the thread-local message.
template <typename Fn>
bor_status guarded(Fn&& fn) {
  last_error.clear();
  last_error_line = 0;
  try {
    fn();
    return BOR_OK;
  } catch (const bor::ParseError& e) {
    return fail(BOR_ERR_PARSE, e.what(), e.line());
  } catch (const bor::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(BOR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BOR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BOR_ERR_INTERNAL, "unknown error");
  }
}

#define BOR_REQUIRE(ptr)                                           \
  do {                                                             \
    if ((ptr) == nullptr) return fail(BOR_ERR_NULL_ARGUMENT, #ptr " is null"); \
  } while (0)

bor_probability to_c(const bor::Probability& p) { return {p.value, p.log_complement}; }
bor::Probability from_c(bor_probability p) { return {p.value, p.log_complement}; }

bor_value to_c(const bor::BorValue& v) { return {v.bits, static_cast<int>(v.status)}; }

bor_ceilings to_c(const bor::CeilingReport& c) {
  return {c.bor_max_log_of_mean, c.bor_max_mean_of_logs, c.bor_opt};
}

bor_depth_delta to_c(const bor::DepthDelta& d) {
  return {d.k1, d.k2, d.gain_term, d.baseline_term, d.total, d.predicted_plateau, d.defined ? 1 : 0};
}

bor_rule to_c(const bor::SuccessRule& r) { return {static_cast<int>(r.kind), r.min_hits}; }

bor::SuccessRule from_c(bor_rule r) {
  if (r.kind == BOR_RULE_RECALL) return bor::SuccessRule::recall();
  if (r.kind != BOR_RULE_COVERAGE) throw bor::DomainError("unknown success rule");
  if (r.min_hits == 0) throw bor::DomainError("min_hits must be at least 1");
  return bor::SuccessRule::coverage(r.min_hits);
}

bor_report to_c(const bor::BorReport& r) {
  bor_report out{};
  out.depth = r.depth;
  out.corpus_size = r.corpus_size;
  out.rule = to_c(r.rule);
  out.query_count = r.query_count;
  out.p_obs = r.p_obs;
  out.smoothed = r.smoothed ? 1 : 0;
  out.mean_baseline = to_c(r.mean_baseline);
  out.bor = to_c(r.bor);
  out.ceilings = to_c(r.ceilings);
  if (r.ci) {
    out.has_ci = 1;
    out.ci_defined = r.ci->defined ? 1 : 0;
    out.ci_low = r.ci->low;
    out.ci_high = r.ci->high;
    out.ci_replicates = r.ci->replicates;
    out.ci_undefined_replicates = r.ci->undefined_replicates;
  }
  out.excluded_zero_relevant = r.excluded_zero_relevant;
  out.missing_from_run = r.missing_from_run;
  return out;
}

bor::BorReport from_c(const bor_report& r) {
  bor::BorReport out;
  out.depth = r.depth;
  out.corpus_size = r.corpus_size;
  out.rule = from_c(r.rule);
  out.query_count = r.query_count;
  out.p_obs = r.p_obs;
  out.smoothed = r.smoothed != 0;
  out.mean_baseline = from_c(r.mean_baseline);
  out.bor = {r.bor.bits, static_cast<bor::BorStatus>(r.bor.status)};
  out.ceilings = {r.ceilings.log_of_mean, r.ceilings.mean_of_logs, r.ceilings.opt};
  if (r.has_ci)
    out.ci = bor::BootstrapInterval{r.ci_low, r.ci_high, r.ci_defined != 0, r.ci_replicates, r.ci_undefined_replicates};
  out.excluded_zero_relevant = r.excluded_zero_relevant;
  out.missing_from_run = r.missing_from_run;
  return out;
}

bor::EvalOptions from_c(const bor_eval_options* o) {
  bor_eval_options defaults;
  bor_eval_options_init(&defaults);
  if (o == nullptr) o = &defaults;
  bor::EvalOptions out;
  out.smooth_zero_success = o->smooth_zero_success != 0;
  out.threads = o->threads;
  if (o->bootstrap_replicates > 0)
    out.bootstrap = bor::BootstrapOptions{o->bootstrap_replicates, o->seed, o->level, o->threads};
  return out;
}

bor_diagnostic to_c(const bor::CollapseDiagnostic& d) {
  return {d.corpus_size,      d.mean_relevant,    d.depth,        d.lambda,
          d.exact_ceiling,    d.poisson_ceiling,  static_cast<int>(d.zone),
          d.interpolated ? 1 : 0, d.clamped_to_one ? 1 : 0, d.relevant_low, d.relevant_high};
}

std::ifstream open_input(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bor::IoError(std::string("cannot open ") + path);
  return in;
}

std::ofstream open_output(const char* path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bor::IoError(std::string("cannot write ") + path);
  return out;
}

void finish_output(std::ofstream& out, const char* path) {
  out.flush();
  if (!out) throw bor::IoError(std::string("failed writing ") + path);
}

}  // namespace

extern "C" {

const char* bor_version(void) { return "0.1.0"; }

const char* bor_status_name(bor_status status) {
  switch (status) {
    case BOR_OK: return "ok";
    case BOR_ERR_DOMAIN: return "domain";
    case BOR_ERR_PARSE: return "parse";
    case BOR_ERR_IO: return "io";
    case BOR_ERR_NO_QUERIES: return "no_queries";
    case BOR_ERR_INVALID_INPUT: return "invalid_input";
    case BOR_ERR_INTERNAL: return "internal";
    case BOR_ERR_NULL_ARGUMENT: return "null_argument";
    case BOR_ERR_OUT_OF_RANGE: return "out_of_range";
  }
  return "unknown";
}

const char* bor_last_error_message(void) { return last_error.c_str(); }
size_t bor_last_error_line(void) { return last_error_line; }

/* ---- probabilities ---- */

bor_status bor_log_choose(uint64_t n, uint64_t k, double* out) {
  BOR_REQUIRE(out);
  return guarded([&] {
    if (k > n) throw bor::DomainError("log_choose needs k <= n");
    *out = bor::log_choose(n, k);
  });
}

bor_status bor_p_rand_coverage(uint64_t n, uint64_t r, uint64_t k, bor_probability* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::p_rand_coverage({n, r, k, 1})); });
}

bor_status bor_p_rand_at_least_m(uint64_t n, uint64_t r, uint64_t k, uint32_t m, bor_probability* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::p_rand_at_least_m({n, r, k, m})); });
}

bor_status bor_p_rand_binomial(uint64_t n, uint64_t r, uint64_t k, bor_probability* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::p_rand_binomial({n, r, k, 1})); });
}

bor_status bor_p_rand_poisson(double lambda, uint32_t m, bor_probability* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::p_rand_poisson(lambda, m)); });
}

bor_status bor_lambda_rate(uint64_t n, double mean_relevant, uint64_t k, double* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = bor::lambda_rate(n, mean_relevant, k); });
}

double bor_surprisal_bits(bor_probability p) { return from_c(p).surprisal_bits(); }

/* ---- metrics ---- */

bor_status bor_bits(double p_obs, bor_probability p_rand, bor_value* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::bor(p_obs, from_c(p_rand))); });
}

bor_status bor_enrichment_factor(double p_obs, bor_probability p_rand, double* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = bor::enrichment_factor(p_obs, from_c(p_rand)); });
}

bor_status bor_opt(uint64_t n, uint64_t k, double* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = bor::bor_opt(n, k); });
}

bor_status bor_recall_bits(double observed_recall, uint64_t n, uint64_t k, bor_value* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::bor_recall(observed_recall, n, k)); });
}

bor_status bor_ceilings_compute(const bor_probability* baselines, size_t count, uint64_t n, uint64_t k,
                                bor_ceilings* out) {
  BOR_REQUIRE(out);
  if (count > 0) BOR_REQUIRE(baselines);
  return guarded([&] {
    std::vector<bor::Probability> ps;
    ps.reserve(count);
    for (size_t i = 0; i < count; ++i) ps.push_back(from_c(baselines[i]));
    *out = to_c(bor::ceilings(ps, n, k));
  });
}

bor_status bor_depth_delta_compute(double p1, double p2, bor_probability pbar1, bor_probability pbar2, uint64_t k1,
                                   uint64_t k2, uint32_t m, bor_depth_delta* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::depth_delta(p1, p2, from_c(pbar1), from_c(pbar2), k1, k2, m)); });
}

/* ---- judgments, runs, corpora ---- */

bor_status bor_judgments_read(const char* path, int threshold, bor_judgments** out) {
  BOR_REQUIRE(path);
  BOR_REQUIRE(out);
  return guarded([&] { *out = new bor_judgments{bor::parse_qrels_file(path, threshold)}; });
}

bor_status bor_judgments_parse(const char* data, size_t size, int threshold, bor_judgments** out) {
  BOR_REQUIRE(data);
  BOR_REQUIRE(out);
  return guarded([&] {
    std::istringstream in(std::string(data, size));
    *out = new bor_judgments{bor::parse_qrels(in, threshold)};
  });
}

bor_status bor_judgments_write(const bor_judgments* j, const char* path) {
  BOR_REQUIRE(j);
  BOR_REQUIRE(path);
  return guarded([&] {
    auto out = open_output(path);
    bor::write_qrels(out, j->impl);
    finish_output(out, path);
  });
}

size_t bor_judgments_query_count(const bor_judgments* j) { return j ? j->impl.query_ids().size() : 0; }
size_t bor_judgments_duplicate_warnings(const bor_judgments* j) { return j ? j->impl.duplicate_warnings() : 0; }

bor_status bor_judgments_relevant_count(const bor_judgments* j, const char* query, uint64_t* out) {
  BOR_REQUIRE(j);
  BOR_REQUIRE(query);
  BOR_REQUIRE(out);
  if (!j->impl.has_query(query)) return fail(BOR_ERR_OUT_OF_RANGE, std::string("unknown query ") + query);
  return guarded([&] { *out = j->impl.relevant_count(query); });
}

void bor_judgments_free(bor_judgments* j) { delete j; }

bor_status bor_run_read(const char* path, bor_run** out) {
  BOR_REQUIRE(path);
  BOR_REQUIRE(out);
  return guarded([&] { *out = new bor_run{bor::parse_run_file(path)}; });
}

bor_status bor_run_parse(const char* data, size_t size, bor_run** out) {
  BOR_REQUIRE(data);
  BOR_REQUIRE(out);
  return guarded([&] {
    std::istringstream in(std::string(data, size));
    *out = new bor_run{bor::parse_run(in)};
  });
}

bor_status bor_run_write(const bor_run* run, const char* path, size_t depth) {
  BOR_REQUIRE(run);
  BOR_REQUIRE(path);
  return guarded([&] {
    auto out = open_output(path);
    bor::write_run(out, run->impl, depth);
    finish_output(out, path);
  });
}

size_t bor_run_query_count(const bor_run* run) { return run ? run->impl.rankings.size() : 0; }
size_t bor_run_rank_warnings(const bor_run* run) { return run ? run->impl.rank_warnings : 0; }
void bor_run_free(bor_run* run) { delete run; }

bor_status bor_corpus_read(const char* path, bor_corpus** out) {
  BOR_REQUIRE(path);
  BOR_REQUIRE(out);
  return guarded([&] { *out = new bor_corpus{bor::parse_corpus_file(path)}; });
}

void bor_corpus_free(bor_corpus* c) { delete c; }

size_t bor_corpus_size(const bor_corpus* c) { return c ? c->impl.documents.size() : 0; }
size_t bor_corpus_encoding_warnings(const bor_corpus* c) { return c ? c->impl.encoding_warnings : 0; }

bor_status bor_corpus_document(const bor_corpus* c, size_t i, const char** id, const char** text,
                               const char** label) {
  BOR_REQUIRE(c);
  if (i >= c->impl.documents.size()) return fail(BOR_ERR_OUT_OF_RANGE, "document index out of range");
  const auto& d = c->impl.documents[i];
  if (id) *id = d.id.c_str();
  if (text) *text = d.text.c_str();
  if (label) *label = d.label ? d.label->c_str() : nullptr;
  return BOR_OK;
}

size_t bor_subject_line(const char* text, char* buf, size_t cap) {
  if (text == nullptr) return 0;
  const std::string s = bor::subject_line(text);
  if (buf != nullptr && cap > 0) {
    const size_t n = std::min(s.size(), cap - 1);
    std::memcpy(buf, s.data(), n);
    buf[n] = '\0';
  }
  return s.size();
}

bor_status bor_class_relevance(const bor_corpus* c, const char* const* query_ids, size_t count,
                               bor_judgments** out) {
  BOR_REQUIRE(c);
  BOR_REQUIRE(out);
  if (count > 0) BOR_REQUIRE(query_ids);
  return guarded([&] {
    std::vector<std::string> ids;
    ids.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      if (query_ids[i] == nullptr) throw bor::InputError("null query id");
      ids.emplace_back(query_ids[i]);
    }
    *out = new bor_judgments{bor::class_relevance(c->impl, ids)};
  });
}

bor_status bor_dataset_stats_compute(const bor_judgments* j, uint64_t n, bor_dataset_stats* out) {
  BOR_REQUIRE(j);
  BOR_REQUIRE(out);
  return guarded([&] {
    const auto s = bor::dataset_stats(j->impl, n);
    *out = {s.corpus_size, s.per_query_relevant.size(), s.zero_relevant_queries.size(), s.mean_relevant};
  });
}

/* ---- evaluation ---- */

void bor_eval_options_init(bor_eval_options* options) {
  if (options == nullptr) return;
  *options = {0, 5000, 7, 0.95, 0};
}

bor_status bor_evaluate(const bor_run* run, const bor_judgments* j, uint64_t n, uint64_t k, bor_rule rule,
                        const bor_eval_options* options, bor_report* out) {
  BOR_REQUIRE(run);
  BOR_REQUIRE(j);
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::evaluate(run->impl, j->impl, n, k, from_c(rule), from_c(options))); });
}

bor_status bor_depth_sweep(const bor_run* run, const bor_judgments* j, uint64_t n, const uint64_t* ks, size_t count,
                           bor_rule rule, const bor_eval_options* options, bor_sweep** out) {
  BOR_REQUIRE(run);
  BOR_REQUIRE(j);
  BOR_REQUIRE(ks);
  BOR_REQUIRE(out);
  return guarded([&] {
    auto steps = bor::depth_sweep(run->impl, j->impl, n, {ks, count}, from_c(rule), from_c(options));
    *out = new bor_sweep{std::move(steps)};
  });
}

bor_status bor_aggregate_report(double p_obs, const bor_probability* baselines, size_t count, uint64_t n, uint64_t k,
                                bor_rule rule, bor_report* out) {
  BOR_REQUIRE(baselines);
  BOR_REQUIRE(out);
  return guarded([&] {
    if (!(p_obs >= 0.0 && p_obs <= 1.0)) throw bor::DomainError("p_obs must lie in [0, 1]");
    if (count == 0) throw bor::Error(bor::ErrorCode::no_queries, "no per-query baselines");
    if (k == 0 || k > n) throw bor::DomainError("depth must lie in [1, N]");
    std::vector<bor::Probability> ps;
    ps.reserve(count);
    for (size_t i = 0; i < count; ++i) ps.push_back(from_c(baselines[i]));
    bor::BorReport r;
    r.depth = k;
    r.corpus_size = n;
    r.rule = from_c(rule);
    r.query_count = count;
    r.p_obs = p_obs;
    r.mean_baseline = bor::mean_probability(ps);
    r.bor = bor::bor(p_obs, r.mean_baseline);
    r.ceilings = bor::ceilings(ps, n, k);
    *out = to_c(r);
  });
}

bor_status bor_sweep_from_reports(const bor_report* reports, size_t count, bor_sweep** out) {
  BOR_REQUIRE(reports);
  BOR_REQUIRE(out);
  return guarded([&] {
    std::vector<bor::BorReport> rs;
    rs.reserve(count);
    for (size_t i = 0; i < count; ++i) rs.push_back(from_c(reports[i]));
    *out = new bor_sweep{bor::link_reports(std::move(rs))};
  });
}

size_t bor_sweep_size(const bor_sweep* s) { return s ? s->steps.size() : 0; }

bor_status bor_sweep_report(const bor_sweep* s, size_t i, bor_report* out) {
  BOR_REQUIRE(s);
  BOR_REQUIRE(out);
  if (i >= s->steps.size()) return fail(BOR_ERR_OUT_OF_RANGE, "sweep index out of range");
  *out = to_c(s->steps[i].report);
  return BOR_OK;
}

bor_status bor_sweep_delta(const bor_sweep* s, size_t i, bor_depth_delta* out) {
  BOR_REQUIRE(s);
  BOR_REQUIRE(out);
  if (i == 0 || i >= s->steps.size() || !s->steps[i].delta)
    return fail(BOR_ERR_OUT_OF_RANGE, "sweep delta index out of range");
  *out = to_c(*s->steps[i].delta);
  return BOR_OK;
}

void bor_sweep_free(bor_sweep* s) { delete s; }

/* ---- BM25 ---- */

bor_status bor_index_build(const bor_corpus* c, const char* const* stopwords, size_t stopword_count,
                           bor_index** out) {
  BOR_REQUIRE(c);
  BOR_REQUIRE(out);
  if (stopword_count > 0) BOR_REQUIRE(stopwords);
  return guarded([&] {
    bor::TokenizerOptions tok;
    for (size_t i = 0; i < stopword_count; ++i)
      if (stopwords[i] != nullptr) tok.stopwords.emplace(stopwords[i]);
    *out = new bor_index{bor::InvertedIndex::build(c->impl, std::move(tok))};
  });
}

bor_status bor_index_save(const bor_index* index, const char* path) {
  BOR_REQUIRE(index);
  BOR_REQUIRE(path);
  return guarded([&] {
    auto out = open_output(path);
    index->impl.save(out);
    finish_output(out, path);
  });
}

bor_status bor_index_load(const char* path, bor_index** out) {
  BOR_REQUIRE(path);
  BOR_REQUIRE(out);
  return guarded([&] {
    auto in = open_input(path);
    *out = new bor_index{bor::InvertedIndex::load(in)};
  });
}

size_t bor_index_doc_count(const bor_index* index) { return index ? index->impl.doc_count() : 0; }
void bor_index_free(bor_index* index) { delete index; }

bor_status bor_index_search(const bor_index* index, const char* text, size_t k, bor_bm25_params params,
                            const char* exclude_doc, bor_hit* hits, size_t capacity, size_t* count) {
  BOR_REQUIRE(index);
  BOR_REQUIRE(text);
  BOR_REQUIRE(count);
  if (capacity > 0) BOR_REQUIRE(hits);
  return guarded([&] {
    const bor::Bm25Params p{params.k1, params.b};
    std::optional<std::uint32_t> exclude;
    if (exclude_doc != nullptr) exclude = index->impl.find_doc(exclude_doc);
    const auto terms = bor::tokenize(text, index->impl.tokenizer());
    const auto found = bor::search(index->impl, terms, std::min(k, capacity), p, exclude);
    for (size_t i = 0; i < found.size(); ++i)
      hits[i] = {index->impl.doc_id(found[i].doc).c_str(), found[i].score};
    *count = found.size();
  });
}

bor_status bor_index_search_run(const bor_index* index, const bor_query* queries, size_t count, size_t k,
                                bor_bm25_params params, int exclude_self, const char* tag, unsigned threads,
                                bor_run** out) {
  BOR_REQUIRE(index);
  BOR_REQUIRE(out);
  if (count > 0) BOR_REQUIRE(queries);
  return guarded([&] {
    const bor::Bm25Params p{params.k1, params.b};
    p.validate();
    if (k == 0) throw bor::DomainError("search depth must be at least 1");
    std::vector<std::vector<bor::ScoredDoc>> results(count);
    for (size_t i = 0; i < count; ++i)
      if (queries[i].id == nullptr || queries[i].text == nullptr) throw bor::InputError("query with null field");
    bor::parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        std::optional<std::uint32_t> exclude;
        if (exclude_self) exclude = index->impl.find_doc(queries[i].id);
        const auto terms = bor::tokenize(queries[i].text, index->impl.tokenizer());
        results[i] = bor::search(index->impl, terms, k, p, exclude);
      }
    });
    auto run = std::make_unique<bor_run>();
    run->impl.system_tag = tag ? tag : "bm25";
    for (size_t i = 0; i < count; ++i) {
      auto [it, inserted] = run->impl.rankings.try_emplace(queries[i].id);
      if (!inserted) throw bor::InputError(std::string("duplicate query id ") + queries[i].id);
      it->second.reserve(results[i].size());
      for (const auto& s : results[i]) it->second.push_back({index->impl.doc_id(s.doc), s.score});
    }
    run->impl.canonicalize();
    *out = run.release();
  });
}

/* ---- simulation ---- */

bor_status bor_monte_carlo(uint64_t n, uint64_t r, uint64_t k, uint32_t m, uint64_t trials, uint64_t seed,
                           unsigned threads, bor_mc_estimate* out) {
  BOR_REQUIRE(out);
  return guarded([&] {
    const auto est = bor::monte_carlo_p({{n, r, k, m}, trials, seed}, threads);
    *out = {est.probability, est.standard_error, est.successes, est.trials};
  });
}

const char* bor_zone_name(int zone) {
  switch (zone) {
    case BOR_ZONE_HEALTHY: return "healthy";
    case BOR_ZONE_DEGRADED: return "degraded";
    case BOR_ZONE_COLLAPSE: return "collapse";
    default: return "unknown";
  }
}

bor_status bor_boundary_map(uint64_t n, double mean_relevant, const uint64_t* ks, size_t count,
                            bor_boundary_row* rows) {
  BOR_REQUIRE(ks);
  BOR_REQUIRE(rows);
  return guarded([&] {
    const auto result = bor::boundary_map(n, mean_relevant, {ks, count});
    for (size_t i = 0; i < result.size(); ++i) {
      const auto& r = result[i];
      rows[i] = {r.depth, r.lambda, r.exact_ceiling, r.poisson_ceiling, static_cast<int>(r.zone)};
    }
  });
}

bor_status bor_simulate_sweep(const bor_synthetic_spec* spec, const uint64_t* ks, size_t count, bor_rule rule,
                              const bor_eval_options* options, bor_sweep** out) {
  BOR_REQUIRE(spec);
  BOR_REQUIRE(ks);
  BOR_REQUIRE(out);
  if (spec->class_count > 0) BOR_REQUIRE(spec->class_sizes);
  return guarded([&] {
    bor::SyntheticSpec s;
    s.corpus_size = spec->corpus_size;
    s.relevance = spec->class_count > 0
                      ? bor::RelevanceModel::classes({spec->class_sizes, spec->class_sizes + spec->class_count})
                      : bor::RelevanceModel::constant(spec->constant_relevant);
    s.query_count = spec->query_count;
    switch (spec->retriever) {
      case BOR_RETRIEVER_RANDOM: s.retriever = bor::RetrieverModel::random(); break;
      case BOR_RETRIEVER_ORACLE: s.retriever = bor::RetrieverModel::oracle(); break;
      case BOR_RETRIEVER_NOISY: s.retriever = bor::RetrieverModel::noisy(spec->hit_prob); break;
      default: throw bor::DomainError("unknown retriever model");
    }
    s.seed = spec->seed;
    *out = new bor_sweep{bor::simulate_sweep(s, {ks, count}, from_c(rule), from_c(options))};
  });
}

/* ---- advisor ---- */

bor_status bor_diagnose(uint64_t n, double mean_relevant, uint64_t k, bor_diagnostic* out) {
  BOR_REQUIRE(out);
  return guarded([&] { *out = to_c(bor::diagnose(n, mean_relevant, k)); });
}

bor_status bor_recommend_k(uint64_t n, double mean_relevant, double min_bits, bor_recommendation* out) {
  BOR_REQUIRE(out);
  return guarded([&] {
    const auto rec = bor::recommend_k(n, mean_relevant, min_bits);
    *out = bor_recommendation{};
    out->depth = rec.depth;
    out->saturated = rec.saturated ? 1 : 0;
    if (rec.diagnostic) out->diagnostic = to_c(*rec.diagnostic);
  });
}

}  // extern "C"
