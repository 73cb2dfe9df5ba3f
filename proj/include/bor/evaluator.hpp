#pragma once

// Per-query success at depth K, macro aggregation against exact per-query
// baselines, depth sweeps and bootstrap intervals.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bor/ingest.hpp"
#include "bor/metrics.hpp"
#include "bor/probability.hpp"

namespace bor {

struct SuccessRule {
  enum class Kind { coverage, recall };

  Kind kind = Kind::coverage;
  std::uint32_t min_hits = 1;  // coverage only

  static SuccessRule coverage(std::uint32_t m = 1) { return {Kind::coverage, m}; }
  static SuccessRule recall() { return {Kind::recall, 1}; }

  /// The m of the plateau prediction: min_hits for coverage, 1 for recall.
  std::uint32_t plateau_order() const { return kind == Kind::coverage ? min_hits : 1; }
  std::string name() const;
};

struct QueryOutcome {
  std::string query_id;
  std::uint64_t relevant = 0;
  double success = 0.0;
  Probability baseline;
};

struct BootstrapOptions {
  std::size_t replicates = 5000;
  std::uint64_t seed = 7;
  double level = 0.95;
  unsigned threads = 0;  // 0: one per hardware thread
};

struct BootstrapInterval {
  double low = 0.0;
  double high = 0.0;
  bool defined = false;
  std::size_t replicates = 0;
  std::size_t undefined_replicates = 0;  // replicates whose resampled p_obs was 0
};

struct EvalOptions {
  /// Replace p_obs = 0 by 1/(2|Q|) and record that it happened.
  bool smooth_zero_success = false;
  std::optional<BootstrapOptions> bootstrap;
  unsigned threads = 0;
  bool keep_per_query = false;
};

struct BorReport {
  std::uint64_t depth = 0;
  std::uint64_t corpus_size = 0;
  SuccessRule rule;
  std::size_t query_count = 0;
  double p_obs = 0.0;
  bool smoothed = false;
  Probability mean_baseline;
  BorValue bor;
  CeilingReport ceilings;
  std::optional<BootstrapInterval> ci;
  std::size_t excluded_zero_relevant = 0;  // judged queries with fewer than m relevant items
  std::size_t missing_from_run = 0;        // judged queries absent from the run, scored as failures
  std::vector<QueryOutcome> per_query;     // filled when EvalOptions::keep_per_query
};

struct SweepStep {
  BorReport report;
  std::optional<DepthDelta> delta;  // against the previous depth
};

/// Success of one ranking at depth K against the query's judged relevant set.
double query_success(std::span<const RankedDoc> ranking, const Judgments& judgments, std::string_view query,
                     std::uint64_t depth, const SuccessRule& rule);

/// Same rule applied to plain doc-id lists.
double query_success(std::span<const std::string> ranking, std::span<const std::string> relevant,
                     std::uint64_t depth, const SuccessRule& rule);

BorReport evaluate(const Run& run, const Judgments& judgments, std::uint64_t corpus_size, std::uint64_t depth,
                   const SuccessRule& rule, const EvalOptions& options = {});

/// Reports at every depth of an ascending list, linked by exact depth deltas.
/// Throws ErrorCode::internal if a delta fails to close against the reports.
std::vector<SweepStep> depth_sweep(const Run& run, const Judgments& judgments, std::uint64_t corpus_size,
                                   std::span<const std::uint64_t> depths, const SuccessRule& rule,
                                   const EvalOptions& options = {});

/// Links already computed reports (ascending depths) by depth deltas.
std::vector<SweepStep> link_reports(std::vector<BorReport> reports);

/// Percentile bootstrap of the aggregate BoR over queries.
BootstrapInterval bootstrap_ci(std::span<const QueryOutcome> per_query, const BootstrapOptions& options = {});

}  // namespace bor
