#pragma once

// Random-selection baselines: the probability that K uniform draws without
// replacement from N items, R of them relevant, contain at least m relevant.

#include <cstdint>

namespace bor {

/// Inputs to every baseline computation.
struct BaselineParams {
  std::uint64_t corpus_size = 0;     // N
  std::uint64_t relevant_count = 0;  // R
  std::uint64_t depth = 0;           // K
  std::uint32_t min_hits = 1;        // m

  /// Throws DomainError unless 0 <= R <= N, 1 <= K <= N and m >= 1.
  void validate() const;
};

/// A probability carried together with ln(1 - value).
///
/// Values close to 1 lose their distance from 1 in a plain double; the
/// log-complement keeps it, so ceilings near zero bits stay accurate.
struct Probability {
  double value = 0.0;
  double log_complement = 0.0;  // ln(1 - value); -inf when value == 1

  static Probability from_value(double v);
  static Probability from_log_complement(double lc);

  static Probability zero() { return {0.0, 0.0}; }
  static Probability one();

  /// -log2(value), computed from whichever representation is better conditioned.
  double surprisal_bits() const;
};

/// ln C(n, k). Relative error below 1e-10 for n up to 1e8 and beyond.
double log_choose(std::uint64_t n, std::uint64_t k);

/// Exact coverage baseline 1 - C(N-R, K) / C(N, K). Requires m == 1.
Probability p_rand_coverage(const BaselineParams& params);

/// Hypergeometric survival P(X >= m).
Probability p_rand_at_least_m(const BaselineParams& params);

/// Expected number of relevant hits under random selection, K * mean_relevant / N.
double lambda_rate(std::uint64_t corpus_size, double mean_relevant, std::uint64_t depth);

/// Poisson survival P(X >= m) with rate lambda.
Probability p_rand_poisson(double lambda, std::uint32_t min_hits);

/// Independent-draw approximation 1 - (1 - R/N)^K. Requires m == 1.
Probability p_rand_binomial(const BaselineParams& params);

namespace detail {

// Two independent routes to ln(C(N-R,K)/C(N,K)); exposed for cross-checks.
double log_miss_product(std::uint64_t n, std::uint64_t r, std::uint64_t k);
double log_miss_log_choose(std::uint64_t n, std::uint64_t r, std::uint64_t k);

// Hypergeometric survival without the m == 1 shortcut.
Probability hypergeometric_survival(const BaselineParams& params);

}  // namespace detail

}  // namespace bor
