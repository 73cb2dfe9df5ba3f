#pragma once

// Bits-over-Random and the quantities derived from it.

#include <cstdint>
#include <span>

#include "bor/probability.hpp"

namespace bor {

/// Why a BoR value is missing.
enum class BorStatus {
  ok,
  zero_observed,  // p_obs == 0: bits is -inf
  zero_baseline,  // baseline == 0 with p_obs > 0 (a query set with no relevant items)
};

struct BorValue {
  double bits = 0.0;
  BorStatus status = BorStatus::ok;

  bool defined() const { return status == BorStatus::ok; }
};

/// The three ceilings a perfect system could reach at one depth.
struct CeilingReport {
  double bor_max_log_of_mean = 0.0;   // -log2(mean baseline)
  double bor_max_mean_of_logs = 0.0;  // mean of per-query -log2(baseline)
  double bor_opt = 0.0;               // log2(N/K), every query with one relevant item
};

/// BoR change between two depths split into its two competing terms.
struct DepthDelta {
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;
  double gain_term = 0.0;      // log2(P2/P1)
  double baseline_term = 0.0;  // log2(Pbar2/Pbar1)
  double total = 0.0;          // gain_term - baseline_term
  double predicted_plateau = 0.0;  // -m log2(K2/K1)
  bool defined = true;             // false when P1 == 0
};

/// log2(p_obs / p_rand). Never throws for a zero baseline; the status says so.
BorValue bor(double p_obs, const Probability& p_rand);

/// p_obs / p_rand. NaN when the baseline is zero.
double enrichment_factor(double p_obs, const Probability& p_rand);

/// log2(N/K).
double bor_opt(std::uint64_t corpus_size, std::uint64_t depth);

/// Both macro-averaging conventions plus bor_opt. Throws on an empty list.
CeilingReport ceilings(std::span<const Probability> per_query_baselines, std::uint64_t corpus_size,
                       std::uint64_t depth);

/// Arithmetic mean of probabilities, keeping the log-complement accurate.
Probability mean_probability(std::span<const Probability> ps);

DepthDelta depth_delta(double p1, double p2, const Probability& pbar1, const Probability& pbar2,
                       std::uint64_t k1, std::uint64_t k2, std::uint32_t min_hits);

/// BoR under the recall rule; the random expectation of recall is exactly K/N.
BorValue bor_recall(double observed_recall, std::uint64_t corpus_size, std::uint64_t depth);

}  // namespace bor
