/*
 * bor-eval C API.
 *
 * Every function returns a bor_status; on failure a message (and, for parse
 * errors, a 1-based line number) is available from bor_last_error_message()
 * and bor_last_error_line() on the calling thread. Objects are opaque
 * handles created by *_read / *_build / *_parse functions and released with
 * the matching *_free, which accepts NULL.
 */
#ifndef BOR_BOR_H
#define BOR_BOR_H

#include <stddef.h>
#include <stdint.h>

#if defined(BOR_BUILDING_LIBRARY)
#define BOR_API __attribute__((visibility("default")))
#else
#define BOR_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bor_status {
  BOR_OK = 0,
  BOR_ERR_DOMAIN = 1,
  BOR_ERR_PARSE = 2,
  BOR_ERR_IO = 3,
  BOR_ERR_NO_QUERIES = 4,
  BOR_ERR_INVALID_INPUT = 5,
  BOR_ERR_INTERNAL = 6,
  BOR_ERR_NULL_ARGUMENT = 7,
  BOR_ERR_OUT_OF_RANGE = 8
} bor_status;

BOR_API const char* bor_version(void);
BOR_API const char* bor_status_name(bor_status status);
BOR_API const char* bor_last_error_message(void);
BOR_API size_t bor_last_error_line(void);

/* ---- probabilities ---------------------------------------------------- */

/* value and ln(1 - value); the second keeps precision when value is near 1. */
typedef struct bor_probability {
  double value;
  double log_complement;
} bor_probability;

BOR_API bor_status bor_log_choose(uint64_t n, uint64_t k, double* out);
BOR_API bor_status bor_p_rand_coverage(uint64_t n, uint64_t r, uint64_t k, bor_probability* out);
BOR_API bor_status bor_p_rand_at_least_m(uint64_t n, uint64_t r, uint64_t k, uint32_t m, bor_probability* out);
BOR_API bor_status bor_p_rand_binomial(uint64_t n, uint64_t r, uint64_t k, bor_probability* out);
BOR_API bor_status bor_p_rand_poisson(double lambda, uint32_t m, bor_probability* out);
BOR_API bor_status bor_lambda_rate(uint64_t n, double mean_relevant, uint64_t k, double* out);
/* -log2(p.value), +inf for zero. */
BOR_API double bor_surprisal_bits(bor_probability p);

/* ---- metrics ---------------------------------------------------------- */

typedef enum bor_value_status {
  BOR_VALUE_OK = 0,
  BOR_VALUE_ZERO_OBSERVED = 1, /* bits = -inf */
  BOR_VALUE_ZERO_BASELINE = 2  /* bits = NaN */
} bor_value_status;

typedef struct bor_value {
  double bits;
  int status; /* bor_value_status */
} bor_value;

typedef struct bor_ceilings {
  double log_of_mean;
  double mean_of_logs;
  double opt;
} bor_ceilings;

typedef struct bor_depth_delta {
  uint64_t k1;
  uint64_t k2;
  double gain_term;
  double baseline_term;
  double total;
  double predicted_plateau;
  int defined;
} bor_depth_delta;

BOR_API bor_status bor_bits(double p_obs, bor_probability p_rand, bor_value* out);
BOR_API bor_status bor_enrichment_factor(double p_obs, bor_probability p_rand, double* out);
BOR_API bor_status bor_opt(uint64_t n, uint64_t k, double* out);
BOR_API bor_status bor_recall_bits(double observed_recall, uint64_t n, uint64_t k, bor_value* out);
BOR_API bor_status bor_ceilings_compute(const bor_probability* baselines, size_t count, uint64_t n, uint64_t k,
                                        bor_ceilings* out);
BOR_API bor_status bor_depth_delta_compute(double p1, double p2, bor_probability pbar1, bor_probability pbar2,
                                           uint64_t k1, uint64_t k2, uint32_t m, bor_depth_delta* out);

/* ---- judgments, runs, corpora ----------------------------------------- */

typedef struct bor_judgments bor_judgments;
typedef struct bor_run bor_run;
typedef struct bor_corpus bor_corpus;

BOR_API bor_status bor_judgments_read(const char* path, int threshold, bor_judgments** out);
BOR_API bor_status bor_judgments_parse(const char* data, size_t size, int threshold, bor_judgments** out);
BOR_API bor_status bor_judgments_write(const bor_judgments* j, const char* path);
BOR_API size_t bor_judgments_query_count(const bor_judgments* j);
BOR_API size_t bor_judgments_duplicate_warnings(const bor_judgments* j);
BOR_API bor_status bor_judgments_relevant_count(const bor_judgments* j, const char* query, uint64_t* out);
BOR_API void bor_judgments_free(bor_judgments* j);

BOR_API bor_status bor_run_read(const char* path, bor_run** out);
BOR_API bor_status bor_run_parse(const char* data, size_t size, bor_run** out);
/* Writes at most `depth` documents per query (all when 0). */
BOR_API bor_status bor_run_write(const bor_run* run, const char* path, size_t depth);
BOR_API size_t bor_run_query_count(const bor_run* run);
BOR_API size_t bor_run_rank_warnings(const bor_run* run);
BOR_API void bor_run_free(bor_run* run);

BOR_API bor_status bor_corpus_read(const char* path, bor_corpus** out);
BOR_API void bor_corpus_free(bor_corpus* c);
BOR_API size_t bor_corpus_size(const bor_corpus* c);
BOR_API size_t bor_corpus_encoding_warnings(const bor_corpus* c);
/* Pointers stay valid until the corpus is freed. label is NULL when absent. */
BOR_API bor_status bor_corpus_document(const bor_corpus* c, size_t i, const char** id, const char** text,
                                       const char** label);
/* Subject line of a document's text, written into buf (NUL-terminated, truncated to cap). */
BOR_API size_t bor_subject_line(const char* text, char* buf, size_t cap);

BOR_API bor_status bor_class_relevance(const bor_corpus* c, const char* const* query_ids, size_t count,
                                       bor_judgments** out);

typedef struct bor_dataset_stats {
  uint64_t corpus_size;
  size_t query_count;
  size_t zero_relevant_queries;
  double mean_relevant;
} bor_dataset_stats;

BOR_API bor_status bor_dataset_stats_compute(const bor_judgments* j, uint64_t n, bor_dataset_stats* out);

/* ---- evaluation ------------------------------------------------------- */

typedef enum bor_rule_kind { BOR_RULE_COVERAGE = 0, BOR_RULE_RECALL = 1 } bor_rule_kind;

typedef struct bor_rule {
  int kind; /* bor_rule_kind */
  uint32_t min_hits;
} bor_rule;

typedef struct bor_eval_options {
  int smooth_zero_success;
  size_t bootstrap_replicates; /* 0 disables the interval */
  uint64_t seed;
  double level;
  unsigned threads; /* 0: one per hardware thread */
} bor_eval_options;

/* smoothing off, 5000 replicates, seed 7, level 0.95, threads 0. */
BOR_API void bor_eval_options_init(bor_eval_options* options);

typedef struct bor_report {
  uint64_t depth;
  uint64_t corpus_size;
  bor_rule rule;
  size_t query_count;
  double p_obs;
  int smoothed;
  bor_probability mean_baseline;
  bor_value bor;
  bor_ceilings ceilings;
  int has_ci;
  int ci_defined;
  double ci_low;
  double ci_high;
  size_t ci_replicates;
  size_t ci_undefined_replicates;
  size_t excluded_zero_relevant;
  size_t missing_from_run;
} bor_report;

typedef struct bor_sweep bor_sweep;

BOR_API bor_status bor_evaluate(const bor_run* run, const bor_judgments* j, uint64_t n, uint64_t k, bor_rule rule,
                                const bor_eval_options* options, bor_report* out);
BOR_API bor_status bor_depth_sweep(const bor_run* run, const bor_judgments* j, uint64_t n, const uint64_t* ks,
                                   size_t count, bor_rule rule, const bor_eval_options* options, bor_sweep** out);
/* Report built from an aggregate success rate and per-query baselines, with no run. */
BOR_API bor_status bor_aggregate_report(double p_obs, const bor_probability* baselines, size_t count, uint64_t n,
                                        uint64_t k, bor_rule rule, bor_report* out);
/* Links reports of ascending depths into a sweep (deltas checked for closure). */
BOR_API bor_status bor_sweep_from_reports(const bor_report* reports, size_t count, bor_sweep** out);
BOR_API size_t bor_sweep_size(const bor_sweep* s);
BOR_API bor_status bor_sweep_report(const bor_sweep* s, size_t i, bor_report* out);
/* Delta between step i-1 and i; i must be at least 1. */
BOR_API bor_status bor_sweep_delta(const bor_sweep* s, size_t i, bor_depth_delta* out);
BOR_API void bor_sweep_free(bor_sweep* s);

/* ---- BM25 ------------------------------------------------------------- */

typedef struct bor_index bor_index;

typedef struct bor_bm25_params {
  double k1;
  double b;
} bor_bm25_params;

typedef struct bor_query {
  const char* id;
  const char* text;
} bor_query;

typedef struct bor_hit {
  const char* doc_id; /* owned by the index */
  double score;
} bor_hit;

BOR_API bor_status bor_index_build(const bor_corpus* c, const char* const* stopwords, size_t stopword_count,
                                   bor_index** out);
BOR_API bor_status bor_index_save(const bor_index* index, const char* path);
BOR_API bor_status bor_index_load(const char* path, bor_index** out);
BOR_API size_t bor_index_doc_count(const bor_index* index);
BOR_API void bor_index_free(bor_index* index);
/* Top-k hits for free text; exclude_doc may be NULL. *count receives min(k, matches). */
BOR_API bor_status bor_index_search(const bor_index* index, const char* text, size_t k, bor_bm25_params params,
                                    const char* exclude_doc, bor_hit* hits, size_t capacity, size_t* count);
/* Searches every query and collects a run; exclude_self drops the document whose id equals the query id. */
BOR_API bor_status bor_index_search_run(const bor_index* index, const bor_query* queries, size_t count, size_t k,
                                        bor_bm25_params params, int exclude_self, const char* tag, unsigned threads,
                                        bor_run** out);

/* ---- simulation ------------------------------------------------------- */

typedef struct bor_mc_estimate {
  double probability;
  double standard_error;
  uint64_t successes;
  uint64_t trials;
} bor_mc_estimate;

BOR_API bor_status bor_monte_carlo(uint64_t n, uint64_t r, uint64_t k, uint32_t m, uint64_t trials, uint64_t seed,
                                   unsigned threads, bor_mc_estimate* out);

typedef enum bor_zone { BOR_ZONE_HEALTHY = 0, BOR_ZONE_DEGRADED = 1, BOR_ZONE_COLLAPSE = 2 } bor_zone;

BOR_API const char* bor_zone_name(int zone);

typedef struct bor_boundary_row {
  uint64_t k;
  double lambda;
  double exact_ceiling;
  double poisson_ceiling;
  int zone; /* bor_zone */
} bor_boundary_row;

/* rows must hold `count` entries. */
BOR_API bor_status bor_boundary_map(uint64_t n, double mean_relevant, const uint64_t* ks, size_t count,
                                    bor_boundary_row* rows);

typedef enum bor_retriever_kind { BOR_RETRIEVER_RANDOM = 0, BOR_RETRIEVER_ORACLE = 1, BOR_RETRIEVER_NOISY = 2 } bor_retriever_kind;

typedef struct bor_synthetic_spec {
  uint64_t corpus_size;
  uint64_t constant_relevant;  /* used when class_count == 0 */
  const uint64_t* class_sizes; /* R_q = class size - 1 */
  size_t class_count;
  uint64_t query_count;
  int retriever; /* bor_retriever_kind */
  double hit_prob;
  uint64_t seed;
} bor_synthetic_spec;

BOR_API bor_status bor_simulate_sweep(const bor_synthetic_spec* spec, const uint64_t* ks, size_t count, bor_rule rule,
                                      const bor_eval_options* options, bor_sweep** out);

/* ---- advisor ---------------------------------------------------------- */

typedef struct bor_diagnostic {
  uint64_t corpus_size;
  double mean_relevant;
  uint64_t depth;
  double lambda;
  double exact_ceiling;
  double poisson_ceiling;
  int zone; /* bor_zone */
  int interpolated;
  int clamped_to_one;
  uint64_t relevant_low;
  uint64_t relevant_high;
} bor_diagnostic;

typedef struct bor_recommendation {
  uint64_t depth; /* 0 when saturated */
  int saturated;
  bor_diagnostic diagnostic; /* valid when depth > 0 */
} bor_recommendation;

BOR_API bor_status bor_diagnose(uint64_t n, double mean_relevant, uint64_t k, bor_diagnostic* out);
BOR_API bor_status bor_recommend_k(uint64_t n, double mean_relevant, double min_bits, bor_recommendation* out);

#ifdef __cplusplus
}
#endif

#endif /* BOR_BOR_H */
