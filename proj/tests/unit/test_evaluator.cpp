#include "bor/evaluator.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "bor/error.hpp"

namespace {

bor::Judgments qrels(const std::string& text) {
  std::istringstream in(text);
  return bor::parse_qrels(in, 1);
}

bor::Run run(const std::string& text) {
  std::istringstream in(text);
  return bor::parse_run(in);
}

// q1: relevant at rank 1; q2: relevant at rank 3; q3: no relevant retrieved.
const char* kQrels =
    "q1 0 a 1\n"
    "q2 0 b 1\nq2 0 c 1\n"
    "q3 0 d 1\n"
    "q4 0 e 0\n";
const char* kRun =
    "q1 Q0 a 1 9 s\nq1 Q0 x 2 8 s\nq1 Q0 y 3 7 s\n"
    "q2 Q0 x 1 9 s\nq2 Q0 y 2 8 s\nq2 Q0 c 3 7 s\n"
    "q3 Q0 x 1 9 s\nq3 Q0 y 2 8 s\n";

TEST(QuerySuccess, CoverageAndRecall) {
  const std::vector<std::string> ranking{"x", "a", "b", "y"};
  const std::vector<std::string> relevant{"a", "b", "z"};
  EXPECT_EQ(bor::query_success(ranking, relevant, 1, bor::SuccessRule::coverage()), 0.0);
  EXPECT_EQ(bor::query_success(ranking, relevant, 2, bor::SuccessRule::coverage()), 1.0);
  EXPECT_EQ(bor::query_success(ranking, relevant, 2, bor::SuccessRule::coverage(2)), 0.0);
  EXPECT_EQ(bor::query_success(ranking, relevant, 3, bor::SuccessRule::coverage(2)), 1.0);
  EXPECT_NEAR(bor::query_success(ranking, relevant, 4, bor::SuccessRule::recall()), 2.0 / 3.0, 1e-15);
  // Depth beyond the ranking length uses the whole ranking.
  EXPECT_EQ(bor::query_success(ranking, relevant, 100, bor::SuccessRule::coverage(2)), 1.0);
  EXPECT_THROW(bor::query_success(ranking, relevant, 0, bor::SuccessRule::coverage()), bor::DomainError);
}

TEST(Evaluate, HandComputedReport) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  const auto rep = bor::evaluate(r, j, 100, 3, bor::SuccessRule::coverage());
  EXPECT_EQ(rep.query_count, 3u);
  EXPECT_EQ(rep.excluded_zero_relevant, 1u);
  EXPECT_EQ(rep.missing_from_run, 0u);
  EXPECT_NEAR(rep.p_obs, 2.0 / 3.0, 1e-15);
  const double b1 = 3.0 / 100.0;
  // 1 - C(98,3)/C(100,3) for the query with two relevant items.
  const double b2_exact = 1.0 - (98.0 * 97.0 * 96.0) / (100.0 * 99.0 * 98.0);
  const double mean = (b1 + b2_exact + b1) / 3.0;
  EXPECT_NEAR(rep.mean_baseline.value, mean, 1e-15);
  EXPECT_NEAR(rep.bor.bits, std::log2((2.0 / 3.0) / mean), 1e-12);
  EXPECT_NEAR(rep.ceilings.bor_max_log_of_mean, -std::log2(mean), 1e-12);
  EXPECT_NEAR(rep.ceilings.bor_max_mean_of_logs, -(2 * std::log2(b1) + std::log2(b2_exact)) / 3.0, 1e-12);
}

TEST(Evaluate, QueriesMissingFromRunCountAsFailures) {
  const auto j = qrels("q1 0 a 1\nq9 0 z 1\n");
  const auto r = run("q1 Q0 a 1 1 s\n");
  const auto rep = bor::evaluate(r, j, 50, 5, bor::SuccessRule::coverage());
  EXPECT_EQ(rep.query_count, 2u);
  EXPECT_EQ(rep.missing_from_run, 1u);
  EXPECT_DOUBLE_EQ(rep.p_obs, 0.5);
}

TEST(Evaluate, RunQueriesWithoutJudgmentsAreIgnored) {
  const auto j = qrels("q1 0 a 1\n");
  const auto r = run("q1 Q0 a 1 1 s\nextra Q0 a 1 1 s\n");
  EXPECT_EQ(bor::evaluate(r, j, 50, 5, bor::SuccessRule::coverage()).query_count, 1u);
}

TEST(Evaluate, NoEvaluableQueries) {
  const auto j = qrels("q1 0 a 0\n");
  const auto r = run("q1 Q0 a 1 1 s\n");
  try {
    bor::evaluate(r, j, 50, 5, bor::SuccessRule::coverage());
    FAIL();
  } catch (const bor::Error& e) {
    EXPECT_EQ(e.code(), bor::ErrorCode::no_queries);
  }
}

TEST(Evaluate, ValidatesDepthAndCorpus) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  EXPECT_THROW(bor::evaluate(r, j, 100, 0, bor::SuccessRule::coverage()), bor::DomainError);
  EXPECT_THROW(bor::evaluate(r, j, 100, 101, bor::SuccessRule::coverage()), bor::DomainError);
  EXPECT_THROW(bor::evaluate(r, j, 1, 1, bor::SuccessRule::coverage()), bor::InputError);
}

TEST(Evaluate, ZeroSuccessAndSmoothing) {
  const auto j = qrels("q1 0 a 1\nq2 0 b 1\n");
  const auto r = run("q1 Q0 x 1 1 s\nq2 Q0 y 1 1 s\n");
  const auto plain = bor::evaluate(r, j, 100, 1, bor::SuccessRule::coverage());
  EXPECT_EQ(plain.bor.status, bor::BorStatus::zero_observed);
  EXPECT_FALSE(plain.smoothed);
  bor::EvalOptions opt;
  opt.smooth_zero_success = true;
  const auto smooth = bor::evaluate(r, j, 100, 1, bor::SuccessRule::coverage(), opt);
  EXPECT_TRUE(smooth.smoothed);
  EXPECT_DOUBLE_EQ(smooth.p_obs, 0.25);
  EXPECT_TRUE(smooth.bor.defined());
}

TEST(Evaluate, MinHitsExcludesQueriesWithTooFewRelevant) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  const auto rep = bor::evaluate(r, j, 100, 3, bor::SuccessRule::coverage(2));
  EXPECT_EQ(rep.query_count, 1u);
  EXPECT_EQ(rep.excluded_zero_relevant, 3u);
  EXPECT_DOUBLE_EQ(rep.p_obs, 0.0);
}

TEST(Evaluate, RecallRuleBaselineIsDepthFraction) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  const auto rep = bor::evaluate(r, j, 100, 3, bor::SuccessRule::recall());
  EXPECT_NEAR(rep.p_obs, (1.0 + 0.5 + 0.0) / 3.0, 1e-15);
  EXPECT_NEAR(rep.mean_baseline.value, 0.03, 1e-15);
  EXPECT_NEAR(rep.bor.bits, bor::bor_recall(0.5, 100, 3).bits, 1e-12);
}

TEST(Evaluate, ThreadCountDoesNotChangeResults) {
  std::ostringstream q, rr;
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    const int rel = 1 + static_cast<int>(rng() % 5);
    for (int d = 0; d < rel; ++d) q << "q" << i << " 0 d" << (rng() % 1000) << " 1\n";
    for (int d = 0; d < 50; ++d) rr << "q" << i << " Q0 d" << (i * 50 + d * 13) % 1000 << " " << d + 1 << " " << 50 - d
                                    << " s\n";
  }
  const auto j = qrels(q.str());
  const auto r = run(rr.str());
  bor::EvalOptions one, many;
  one.threads = 1;
  many.threads = 8;
  one.bootstrap = bor::BootstrapOptions{500, 7, 0.95, 1};
  many.bootstrap = bor::BootstrapOptions{500, 7, 0.95, 8};
  const auto a = bor::evaluate(r, j, 1000, 20, bor::SuccessRule::coverage(), one);
  const auto b = bor::evaluate(r, j, 1000, 20, bor::SuccessRule::coverage(), many);
  EXPECT_EQ(a.p_obs, b.p_obs);
  EXPECT_EQ(a.mean_baseline.value, b.mean_baseline.value);
  EXPECT_EQ(a.bor.bits, b.bor.bits);
  ASSERT_TRUE(a.ci && b.ci);
  EXPECT_EQ(a.ci->low, b.ci->low);
  EXPECT_EQ(a.ci->high, b.ci->high);
}

TEST(DepthSweep, DeltasCloseExactly) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  const std::uint64_t ks[] = {1, 2, 3, 10};
  const auto steps = bor::depth_sweep(r, j, 100, ks, bor::SuccessRule::coverage());
  ASSERT_EQ(steps.size(), 4u);
  EXPECT_FALSE(steps[0].delta.has_value());
  for (std::size_t i = 1; i < steps.size(); ++i) {
    ASSERT_TRUE(steps[i].delta.has_value());
    const auto& d = *steps[i].delta;
    EXPECT_EQ(d.k1, ks[i - 1]);
    EXPECT_EQ(d.k2, ks[i]);
    EXPECT_LT(std::abs((steps[i].report.bor.bits - steps[i - 1].report.bor.bits) - d.total), 1e-9);
  }
}

TEST(DepthSweep, RequiresAscendingDepths) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  const std::uint64_t bad[] = {5, 3};
  EXPECT_THROW(bor::depth_sweep(r, j, 100, bad, bor::SuccessRule::coverage()), bor::DomainError);
  EXPECT_THROW(bor::depth_sweep(r, j, 100, {}, bor::SuccessRule::coverage()), bor::DomainError);
}

TEST(LinkReports, DetectsBrokenClosure) {
  const auto j = qrels(kQrels);
  const auto r = run(kRun);
  auto a = bor::evaluate(r, j, 100, 1, bor::SuccessRule::coverage());
  auto b = bor::evaluate(r, j, 100, 3, bor::SuccessRule::coverage());
  b.bor.bits += 1e-6;
  try {
    bor::link_reports({a, b});
    FAIL();
  } catch (const bor::Error& e) {
    EXPECT_EQ(e.code(), bor::ErrorCode::internal);
  }
}

std::vector<bor::QueryOutcome> outcomes(std::size_t n, double success_rate, double baseline, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution hit(success_rate);
  std::vector<bor::QueryOutcome> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({"q" + std::to_string(i), 1, hit(rng) ? 1.0 : 0.0, bor::Probability::from_value(baseline)});
  return out;
}

TEST(Bootstrap, DeterministicAcrossThreadCounts) {
  const auto per_query = outcomes(400, 0.7, 0.05, 1);
  bor::BootstrapOptions opt;
  opt.threads = 1;
  const auto a = bor::bootstrap_ci(per_query, opt);
  opt.threads = 7;
  const auto b = bor::bootstrap_ci(per_query, opt);
  const auto c = bor::bootstrap_ci(per_query, opt);
  EXPECT_EQ(a.low, b.low);
  EXPECT_EQ(a.high, b.high);
  EXPECT_EQ(b.low, c.low);
  EXPECT_EQ(a.replicates, 5000u);
  opt.seed = 8;
  const auto d = bor::bootstrap_ci(per_query, opt);
  EXPECT_NE(a.low, d.low);
}

TEST(Bootstrap, ZeroWidthWhenHomogeneous) {
  const auto per_query = outcomes(50, 1.0, 0.2, 2);
  const auto ci = bor::bootstrap_ci(per_query);
  ASSERT_TRUE(ci.defined);
  EXPECT_EQ(ci.low, ci.high);
  EXPECT_NEAR(ci.low, -std::log2(0.2), 1e-12);
}

TEST(Bootstrap, WidthMatchesDeltaMethod) {
  // Var(log2 p_hat) ~ (1 - p) / (n p ln^2 2) for a fixed baseline.
  const std::size_t n = 200;
  auto per_query = outcomes(n, 0.9, 0.1, 0);
  for (std::size_t i = 0; i < n; ++i) per_query[i].success = i < 180 ? 1.0 : 0.0;
  const auto ci = bor::bootstrap_ci(per_query);
  const double expected = 2 * 1.959964 * std::sqrt(0.9 * 0.1 / n) / 0.9 / std::log(2.0);
  EXPECT_NEAR(ci.high - ci.low, expected, 0.2 * expected);
  const double point = std::log2(0.9 / 0.1);
  EXPECT_LT(ci.low, point);
  EXPECT_GT(ci.high, point);
}

TEST(Bootstrap, CountsUndefinedReplicates) {
  auto per_query = outcomes(30, 0.0, 0.1, 3);
  per_query[0].success = 1.0;
  const auto ci = bor::bootstrap_ci(per_query, {2000, 7, 0.95, 0});
  EXPECT_GT(ci.undefined_replicates, 0u);
  EXPECT_LT(ci.undefined_replicates, 2000u);
  EXPECT_TRUE(ci.defined);
}

TEST(Bootstrap, Validation) {
  const auto per_query = outcomes(10, 0.5, 0.1, 4);
  EXPECT_THROW(bor::bootstrap_ci(per_query, {50, 7, 0.95, 0}), bor::DomainError);
  EXPECT_THROW(bor::bootstrap_ci(per_query, {500, 7, 1.0, 0}), bor::DomainError);
  EXPECT_THROW(bor::bootstrap_ci({}, {}), bor::DomainError);
}

}  // namespace
