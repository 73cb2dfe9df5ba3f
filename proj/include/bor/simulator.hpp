#pragma once

// Monte Carlo oracle for random retrieval and a synthetic-dataset lab.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "bor/advisor.hpp"
#include "bor/evaluator.hpp"
#include "bor/probability.hpp"

namespace bor {

struct TrialConfig {
  BaselineParams params;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 7;
};

struct MonteCarloEstimate {
  double probability = 0.0;
  double standard_error = 0.0;
  std::uint64_t successes = 0;
  std::uint64_t trials = 0;
};

/// Each trial draws K distinct items out of N, items [0, R) being relevant,
/// and succeeds with at least m relevant drawn. Trial t uses Philox stream
/// (seed, t), so the estimate does not depend on `threads`.
MonteCarloEstimate monte_carlo_p(const TrialConfig& config, unsigned threads = 0);

struct RelevanceModel {
  enum class Kind { constant, class_sizes };

  Kind kind = Kind::constant;
  std::uint64_t relevant = 1;            // constant: R_q for every query
  std::vector<std::uint64_t> class_sizes;  // class_sizes: R_q = size - 1, query doc excluded

  static RelevanceModel constant(std::uint64_t r) { return {Kind::constant, r, {}}; }
  static RelevanceModel classes(std::vector<std::uint64_t> sizes) { return {Kind::class_sizes, 0, std::move(sizes)}; }
};

struct RetrieverModel {
  enum class Kind { random, oracle, noisy };

  Kind kind = Kind::random;
  double hit_prob = 0.0;  // noisy: chance that a slot holds a relevant item

  static RetrieverModel random() { return {Kind::random, 0.0}; }
  static RetrieverModel oracle() { return {Kind::oracle, 0.0}; }
  static RetrieverModel noisy(double q) { return {Kind::noisy, q}; }
};

struct SyntheticSpec {
  std::uint64_t corpus_size = 0;
  RelevanceModel relevance;
  std::uint64_t query_count = 0;
  RetrieverModel retriever;
  std::uint64_t seed = 7;

  void validate() const;
};

struct SyntheticDataset {
  Run run;
  Judgments judgments;
};

/// Builds judgments and model-driven rankings `max_depth` deep.
SyntheticDataset make_synthetic(const SyntheticSpec& spec, std::uint64_t max_depth);

/// Generates a synthetic dataset and evaluates it at every depth.
std::vector<SweepStep> simulate_sweep(const SyntheticSpec& spec, std::span<const std::uint64_t> depths,
                                      const SuccessRule& rule, const EvalOptions& options = {});

struct BoundaryRow {
  std::uint64_t depth = 0;
  double lambda = 0.0;
  double exact_ceiling = 0.0;
  double poisson_ceiling = 0.0;
  Zone zone = Zone::healthy;
};

/// One row per K of an ascending grid.
std::vector<BoundaryRow> boundary_map(std::uint64_t corpus_size, double mean_relevant,
                                      std::span<const std::uint64_t> depths);

/// CSV with header "K,lambda,exact_ceiling_bits,poisson_ceiling_bits,zone", full precision.
void write_boundary_csv(std::ostream& out, std::span<const BoundaryRow> rows);

}  // namespace bor
