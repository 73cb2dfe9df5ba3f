#pragma once

// Collapse-zone diagnostics and depth recommendations.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bor {

enum class Zone { healthy, degraded, collapse };

std::string zone_name(Zone z);

/// Zone boundaries on lambda = K * mean_relevant / N.
inline constexpr double kDegradedLambda = 1.0;
inline constexpr double kCollapseLambda = 3.0;

/// healthy below 1, degraded in [1, 3), collapse from 3.
Zone classify_zone(double lambda);

struct CollapseDiagnostic {
  std::uint64_t corpus_size = 0;
  double mean_relevant = 0.0;
  std::uint64_t depth = 0;
  double lambda = 0.0;
  double exact_ceiling = 0.0;    // bits, hypergeometric
  double poisson_ceiling = 0.0;  // bits, -log2(1 - e^-lambda)
  Zone zone = Zone::healthy;
  // Fractional mean_relevant: the exact ceiling is interpolated in bits
  // between relevant counts floor and ceil. Means below 1 use one relevant item.
  bool interpolated = false;
  bool clamped_to_one = false;
  std::uint64_t relevant_low = 0;
  std::uint64_t relevant_high = 0;
};

/// Exact ceiling in bits for a possibly fractional mean relevant count.
double exact_ceiling_bits(std::uint64_t corpus_size, double mean_relevant, std::uint64_t depth);

CollapseDiagnostic diagnose(std::uint64_t corpus_size, double mean_relevant, std::uint64_t depth);

struct DepthRecommendation {
  std::uint64_t depth = 0;   // 0 when even K = 1 falls below min_bits
  bool saturated = false;
  std::optional<CollapseDiagnostic> diagnostic;
};

/// Largest K whose exact ceiling is at least min_bits.
DepthRecommendation recommend_k(std::uint64_t corpus_size, double mean_relevant, double min_bits = 0.1);

struct Scenario {
  std::string name;
  std::uint64_t corpus_size = 0;
  double mean_relevant = 0.0;
  std::uint64_t depth = 0;
};

struct CatalogRow {
  Scenario scenario;
  std::optional<CollapseDiagnostic> diagnostic;
  std::string error;  // set when the scenario was rejected
};

/// One diagnostic per scenario; a bad row records its error and the rest proceed.
std::vector<CatalogRow> catalog_report(std::span<const Scenario> scenarios);

}  // namespace bor
