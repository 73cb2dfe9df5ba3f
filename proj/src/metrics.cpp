#include "bor/metrics.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "bor/error.hpp"
#include "bor/summation.hpp"

namespace bor {

namespace {

void check_unit(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

BorValue bor(double p_obs, const Probability& p_rand) {
  check_unit(p_obs, "observed success");
  check_unit(p_rand.value, "baseline probability");
  if (p_rand.value == 0.0) return {std::numeric_limits<double>::quiet_NaN(), BorStatus::zero_baseline};
  if (p_obs == 0.0) return {-std::numeric_limits<double>::infinity(), BorStatus::zero_observed};
  return {std::log2(p_obs) + p_rand.surprisal_bits(), BorStatus::ok};
}

double enrichment_factor(double p_obs, const Probability& p_rand) {
  check_unit(p_obs, "observed success");
  check_unit(p_rand.value, "baseline probability");
  if (p_rand.value == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return p_obs / p_rand.value;
}

double bor_opt(std::uint64_t corpus_size, std::uint64_t depth) {
  if (depth == 0 || depth > corpus_size) throw DomainError("bor_opt: depth must lie in [1, N]");
  return std::log2(static_cast<double>(corpus_size) / static_cast<double>(depth));
}

Probability mean_probability(std::span<const Probability> ps) {
  if (ps.empty()) throw DomainError("mean of an empty probability list");
  CompensatedSum values;
  std::vector<double> lcs;
  lcs.reserve(ps.size());
  for (const auto& p : ps) {
    values.add(p.value);
    lcs.push_back(p.log_complement);
  }
  const double n = static_cast<double>(ps.size());
  return {values.value() / n, log_sum_exp(lcs) - std::log(n)};
}

CeilingReport ceilings(std::span<const Probability> per_query_baselines, std::uint64_t corpus_size,
                       std::uint64_t depth) {
  if (per_query_baselines.empty()) throw DomainError("ceilings: no per-query baselines");
  CeilingReport report;
  report.bor_max_log_of_mean = mean_probability(per_query_baselines).surprisal_bits();
  CompensatedSum logs;
  for (const auto& p : per_query_baselines) logs.add(p.surprisal_bits());
  report.bor_max_mean_of_logs = logs.value() / static_cast<double>(per_query_baselines.size());
  report.bor_opt = bor_opt(corpus_size, depth);
  return report;
}

DepthDelta depth_delta(double p1, double p2, const Probability& pbar1, const Probability& pbar2,
                       std::uint64_t k1, std::uint64_t k2, std::uint32_t min_hits) {
  if (k1 == 0 || k1 >= k2) throw DomainError("depth_delta: requires 1 <= k1 < k2");
  if (min_hits == 0) throw DomainError("depth_delta: min_hits must be at least 1");
  check_unit(p1, "observed success");
  check_unit(p2, "observed success");
  check_unit(pbar1.value, "baseline probability");
  check_unit(pbar2.value, "baseline probability");

  DepthDelta d;
  d.k1 = k1;
  d.k2 = k2;
  d.predicted_plateau = -static_cast<double>(min_hits) * std::log2(static_cast<double>(k2) / static_cast<double>(k1));
  d.baseline_term = pbar1.surprisal_bits() - pbar2.surprisal_bits();
  d.defined = p1 > 0.0 && pbar1.value > 0.0 && pbar2.value > 0.0;
  if (!d.defined) {
    d.gain_term = p1 > 0.0 ? std::log2(p2 / p1) : std::numeric_limits<double>::quiet_NaN();
    d.total = std::numeric_limits<double>::quiet_NaN();
    return d;
  }
  d.gain_term = std::log2(p2) - std::log2(p1);
  d.total = d.gain_term - d.baseline_term;
  return d;
}

BorValue bor_recall(double observed_recall, std::uint64_t corpus_size, std::uint64_t depth) {
  if (depth == 0 || depth > corpus_size) throw DomainError("bor_recall: depth must lie in [1, N]");
  return bor(observed_recall,
             Probability::from_value(static_cast<double>(depth) / static_cast<double>(corpus_size)));
}

}  // namespace bor
