#include "bor/bor.h"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("bor_capi_" + name)).string();
}

const char* kQrels = "q1 0 a 1\nq2 0 b 1\nq2 0 c 1\nq3 0 d 1\n";
const char* kRun =
    "q1 Q0 a 1 9 s\nq1 Q0 x 2 8 s\n"
    "q2 Q0 x 1 9 s\nq2 Q0 c 2 8 s\n"
    "q3 Q0 x 1 9 s\n";

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(bor_version(), "0.1.0");
  EXPECT_STREQ(bor_status_name(BOR_OK), "ok");
  EXPECT_STRNE(bor_status_name(BOR_ERR_PARSE), "ok");
}

TEST(CApi, Probabilities) {
  bor_probability p;
  ASSERT_EQ(bor_p_rand_coverage(1000, 10, 20, &p), BOR_OK);
  EXPECT_NEAR(bor_surprisal_bits(p), 2.4447, 1e-4);
  double lc;
  ASSERT_EQ(bor_log_choose(10, 3, &lc), BOR_OK);
  EXPECT_NEAR(lc, std::log(120.0), 1e-13);
  EXPECT_EQ(bor_p_rand_coverage(10, 11, 1, &p), BOR_ERR_DOMAIN);
  EXPECT_GT(std::strlen(bor_last_error_message()), 0u);
  EXPECT_EQ(bor_p_rand_coverage(10, 1, 1, nullptr), BOR_ERR_NULL_ARGUMENT);
  ASSERT_EQ(bor_p_rand_at_least_m(50, 5, 40, 3, &p), BOR_OK);
  EXPECT_GT(p.value, 0.5);
  double lambda;
  ASSERT_EQ(bor_lambda_rate(58, 4, 20, &lambda), BOR_OK);
  EXPECT_NEAR(lambda, 80.0 / 58.0, 1e-15);
}

TEST(CApi, Metrics) {
  bor_value v;
  const bor_probability p{0.125, std::log1p(-0.125)};
  ASSERT_EQ(bor_bits(0.5, p, &v), BOR_OK);
  EXPECT_NEAR(v.bits, 2.0, 1e-15);
  EXPECT_EQ(v.status, BOR_VALUE_OK);
  ASSERT_EQ(bor_bits(0.0, p, &v), BOR_OK);
  EXPECT_EQ(v.status, BOR_VALUE_ZERO_OBSERVED);
  EXPECT_EQ(bor_bits(2.0, p, &v), BOR_ERR_DOMAIN);
  double opt;
  ASSERT_EQ(bor_opt(8841823, 1000, &opt), BOR_OK);
  EXPECT_NEAR(opt, 13.11, 0.01);
  ASSERT_EQ(bor_recall_bits(0.857, 8841823, 1000, &v), BOR_OK);
  EXPECT_NEAR(v.bits, 12.89, 0.01);
}

TEST(CApi, EvaluateFromMemory) {
  bor_judgments* j = nullptr;
  bor_run* r = nullptr;
  ASSERT_EQ(bor_judgments_parse(kQrels, std::strlen(kQrels), 1, &j), BOR_OK);
  ASSERT_EQ(bor_run_parse(kRun, std::strlen(kRun), &r), BOR_OK);
  EXPECT_EQ(bor_judgments_query_count(j), 3u);
  uint64_t rc;
  ASSERT_EQ(bor_judgments_relevant_count(j, "q2", &rc), BOR_OK);
  EXPECT_EQ(rc, 2u);
  EXPECT_EQ(bor_judgments_relevant_count(j, "zz", &rc), BOR_ERR_OUT_OF_RANGE);

  bor_eval_options opt;
  bor_eval_options_init(&opt);
  opt.bootstrap_replicates = 0;
  bor_report rep;
  ASSERT_EQ(bor_evaluate(r, j, 100, 2, bor_rule{BOR_RULE_COVERAGE, 1}, &opt, &rep), BOR_OK);
  EXPECT_EQ(rep.query_count, 3u);
  EXPECT_NEAR(rep.p_obs, 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(rep.has_ci);

  const uint64_t ks[] = {1, 2};
  bor_sweep* s = nullptr;
  ASSERT_EQ(bor_depth_sweep(r, j, 100, ks, 2, bor_rule{BOR_RULE_COVERAGE, 1}, &opt, &s), BOR_OK);
  ASSERT_EQ(bor_sweep_size(s), 2u);
  bor_depth_delta d;
  EXPECT_EQ(bor_sweep_delta(s, 0, &d), BOR_ERR_OUT_OF_RANGE);
  ASSERT_EQ(bor_sweep_delta(s, 1, &d), BOR_OK);
  bor_report r1, r2;
  bor_sweep_report(s, 0, &r1);
  bor_sweep_report(s, 1, &r2);
  EXPECT_LT(std::abs((r2.bor.bits - r1.bor.bits) - d.total), 1e-9);
  bor_sweep_free(s);

  EXPECT_EQ(bor_evaluate(r, j, 100, 2, bor_rule{7, 1}, &opt, &rep), BOR_ERR_DOMAIN);
  EXPECT_EQ(bor_evaluate(r, j, 1, 1, bor_rule{BOR_RULE_COVERAGE, 1}, &opt, &rep), BOR_ERR_INVALID_INPUT);
  bor_run_free(r);
  bor_judgments_free(j);
}

TEST(CApi, NoQueriesStatus) {
  bor_judgments* j = nullptr;
  bor_run* r = nullptr;
  const char* q = "q1 0 a 0\n";
  ASSERT_EQ(bor_judgments_parse(q, std::strlen(q), 1, &j), BOR_OK);
  ASSERT_EQ(bor_run_parse(kRun, std::strlen(kRun), &r), BOR_OK);
  bor_report rep;
  EXPECT_EQ(bor_evaluate(r, j, 100, 2, bor_rule{BOR_RULE_COVERAGE, 1}, nullptr, &rep), BOR_ERR_NO_QUERIES);
  bor_run_free(r);
  bor_judgments_free(j);
}

TEST(CApi, ParseErrorsReportLine) {
  bor_judgments* j = nullptr;
  const char* bad = "q1 0 a 1\nq1 0 b\n";
  EXPECT_EQ(bor_judgments_parse(bad, std::strlen(bad), 1, &j), BOR_ERR_PARSE);
  EXPECT_EQ(bor_last_error_line(), 2u);
  EXPECT_EQ(j, nullptr);
  EXPECT_EQ(bor_run_read("/nonexistent/run.txt", nullptr), BOR_ERR_NULL_ARGUMENT);
  bor_run* r = nullptr;
  EXPECT_EQ(bor_run_read("/nonexistent/run.txt", &r), BOR_ERR_IO);
}

TEST(CApi, AggregateReportAndSweepFromReports) {
  const bor_probability b1{0.01, std::log1p(-0.01)};
  const bor_probability b2{0.1, std::log1p(-0.1)};
  bor_report reps[2];
  ASSERT_EQ(bor_aggregate_report(0.81, &b1, 1, 1000, 10, bor_rule{BOR_RULE_COVERAGE, 1}, &reps[0]), BOR_OK);
  ASSERT_EQ(bor_aggregate_report(0.93, &b2, 1, 1000, 100, bor_rule{BOR_RULE_COVERAGE, 1}, &reps[1]), BOR_OK);
  EXPECT_NEAR(reps[0].bor.bits, std::log2(81.0), 1e-12);
  bor_sweep* s = nullptr;
  ASSERT_EQ(bor_sweep_from_reports(reps, 2, &s), BOR_OK);
  bor_depth_delta d;
  ASSERT_EQ(bor_sweep_delta(s, 1, &d), BOR_OK);
  EXPECT_NEAR(d.total, std::log2(9.3) - std::log2(81.0), 1e-12);
  EXPECT_NEAR(d.predicted_plateau, -std::log2(10.0), 1e-14);
  bor_sweep_free(s);
}

TEST(CApi, CorpusIndexAndSearch) {
  const auto path = temp_path("corpus.tsv");
  {
    std::ofstream out(path);
    out << "d1\tx\tcat cat dog\nd2\tx\tcat on mat\nd3\ty\tdog barks\n";
  }
  bor_corpus* c = nullptr;
  ASSERT_EQ(bor_corpus_read(path.c_str(), &c), BOR_OK);
  EXPECT_EQ(bor_corpus_size(c), 3u);
  const char *id, *text, *label;
  ASSERT_EQ(bor_corpus_document(c, 2, &id, &text, &label), BOR_OK);
  EXPECT_STREQ(id, "d3");
  EXPECT_STREQ(label, "y");
  EXPECT_EQ(bor_corpus_document(c, 3, &id, &text, &label), BOR_ERR_OUT_OF_RANGE);

  bor_index* idx = nullptr;
  ASSERT_EQ(bor_index_build(c, nullptr, 0, &idx), BOR_OK);
  bor_hit hits[4];
  size_t count = 0;
  ASSERT_EQ(bor_index_search(idx, "cat", 4, bor_bm25_params{1.2, 0.75}, "d2", hits, 4, &count), BOR_OK);
  ASSERT_EQ(count, 1u);
  EXPECT_STREQ(hits[0].doc_id, "d1");

  const auto ipath = temp_path("index.bin");
  ASSERT_EQ(bor_index_save(idx, ipath.c_str()), BOR_OK);
  bor_index* loaded = nullptr;
  ASSERT_EQ(bor_index_load(ipath.c_str(), &loaded), BOR_OK);
  EXPECT_EQ(bor_index_doc_count(loaded), 3u);

  const char* qids[] = {"d1", "d3"};
  bor_judgments* j = nullptr;
  ASSERT_EQ(bor_class_relevance(c, qids, 2, &j), BOR_OK);
  bor_dataset_stats stats;
  ASSERT_EQ(bor_dataset_stats_compute(j, 3, &stats), BOR_OK);
  EXPECT_EQ(stats.zero_relevant_queries, 1u);
  EXPECT_DOUBLE_EQ(stats.mean_relevant, 1.0);

  const bor_query queries[] = {{"d1", "cat dog"}, {"d3", "dog"}};
  bor_run* run = nullptr;
  ASSERT_EQ(bor_index_search_run(loaded, queries, 2, 3, bor_bm25_params{1.2, 0.75}, 1, "bm25", 2, &run), BOR_OK);
  EXPECT_EQ(bor_run_query_count(run), 2u);

  char buf[64];
  const char* raw = "From: a\nSubject: Re: cats\n";
  EXPECT_EQ(bor_subject_line(raw, buf, sizeof buf), 4u);
  EXPECT_STREQ(buf, "cats");
  EXPECT_EQ(bor_subject_line(raw, buf, 3), 4u);
  EXPECT_STREQ(buf, "ca");

  bor_run_free(run);
  bor_judgments_free(j);
  bor_index_free(loaded);
  bor_index_free(idx);
  bor_corpus_free(c);
  std::remove(path.c_str());
  std::remove(ipath.c_str());
}

TEST(CApi, SimulationAndAdvisor) {
  bor_mc_estimate a, b;
  ASSERT_EQ(bor_monte_carlo(1000, 10, 20, 1, 20000, 3, 1, &a), BOR_OK);
  ASSERT_EQ(bor_monte_carlo(1000, 10, 20, 1, 20000, 3, 4, &b), BOR_OK);
  EXPECT_EQ(a.successes, b.successes);

  const uint64_t ks[] = {5, 20, 58};
  bor_boundary_row rows[3];
  ASSERT_EQ(bor_boundary_map(58, 4, ks, 3, rows), BOR_OK);
  EXPECT_EQ(rows[0].zone, BOR_ZONE_HEALTHY);
  EXPECT_EQ(rows[1].zone, BOR_ZONE_DEGRADED);
  EXPECT_EQ(rows[2].zone, BOR_ZONE_COLLAPSE);
  EXPECT_STREQ(bor_zone_name(BOR_ZONE_COLLAPSE), "collapse");

  bor_recommendation rec;
  ASSERT_EQ(bor_recommend_k(58, 4, 0.1, &rec), BOR_OK);
  EXPECT_EQ(rec.depth, 27u);
  bor_diagnostic d;
  ASSERT_EQ(bor_diagnose(10000, 1.5, 10, &d), BOR_OK);
  EXPECT_TRUE(d.interpolated);
  EXPECT_EQ(bor_diagnose(10, 1, 11, &d), BOR_ERR_DOMAIN);

  bor_synthetic_spec spec{1000, 2, nullptr, 0, 30, BOR_RETRIEVER_ORACLE, 0.0, 1};
  const uint64_t sweep_ks[] = {1, 2, 4};
  bor_sweep* s = nullptr;
  bor_eval_options opt;
  bor_eval_options_init(&opt);
  opt.bootstrap_replicates = 0;
  ASSERT_EQ(bor_simulate_sweep(&spec, sweep_ks, 3, bor_rule{BOR_RULE_COVERAGE, 1}, &opt, &s), BOR_OK);
  bor_report rep;
  ASSERT_EQ(bor_sweep_report(s, 2, &rep), BOR_OK);
  EXPECT_DOUBLE_EQ(rep.p_obs, 1.0);
  bor_sweep_free(s);
}

}  // namespace
