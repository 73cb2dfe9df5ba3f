#include "bor/advisor.hpp"

#include <cmath>

#include "bor/error.hpp"
#include "bor/probability.hpp"

namespace bor {

std::string zone_name(Zone z) {
  switch (z) {
    case Zone::healthy: return "healthy";
    case Zone::degraded: return "degraded";
    case Zone::collapse: return "collapse";
  }
  return "unknown";
}

Zone classify_zone(double lambda) {
  if (lambda >= kCollapseLambda) return Zone::collapse;
  if (lambda >= kDegradedLambda) return Zone::degraded;
  return Zone::healthy;
}

namespace {

void check_inputs(std::uint64_t n, double mean_relevant, std::uint64_t k) {
  if (n == 0) throw DomainError("corpus size must be positive");
  if (k == 0 || k > n) throw DomainError("depth K=" + std::to_string(k) + " must lie in [1, N=" + std::to_string(n) + "]");
  if (!(mean_relevant > 0.0) || !std::isfinite(mean_relevant))
    throw DomainError("mean relevant count must be positive");
  if (mean_relevant > static_cast<double>(n)) throw DomainError("mean relevant count exceeds corpus size");
}

double integer_ceiling(std::uint64_t n, std::uint64_t r, std::uint64_t k) {
  return p_rand_coverage({n, r, k, 1}).surprisal_bits();
}

struct CeilingParts {
  double bits;
  std::uint64_t lo, hi;
  bool clamped;
};

CeilingParts ceiling_parts(std::uint64_t n, double mean_relevant, std::uint64_t k) {
  check_inputs(n, mean_relevant, k);
  if (mean_relevant < 1.0) return {integer_ceiling(n, 1, k), 1, 1, true};
  const auto lo = static_cast<std::uint64_t>(std::floor(mean_relevant));
  const auto hi = static_cast<std::uint64_t>(std::ceil(mean_relevant));
  const double at_lo = integer_ceiling(n, lo, k);
  if (lo == hi) return {at_lo, lo, hi, false};
  const double at_hi = integer_ceiling(n, hi, k);
  const double frac = mean_relevant - static_cast<double>(lo);
  return {at_lo + frac * (at_hi - at_lo), lo, hi, false};
}

}  // namespace

double exact_ceiling_bits(std::uint64_t corpus_size, double mean_relevant, std::uint64_t depth) {
  return ceiling_parts(corpus_size, mean_relevant, depth).bits;
}

CollapseDiagnostic diagnose(std::uint64_t corpus_size, double mean_relevant, std::uint64_t depth) {
  const CeilingParts parts = ceiling_parts(corpus_size, mean_relevant, depth);
  CollapseDiagnostic d;
  d.corpus_size = corpus_size;
  d.mean_relevant = mean_relevant;
  d.depth = depth;
  d.lambda = lambda_rate(corpus_size, mean_relevant, depth);
  d.exact_ceiling = parts.bits;
  d.poisson_ceiling = p_rand_poisson(d.lambda, 1).surprisal_bits();
  d.zone = classify_zone(d.lambda);
  d.interpolated = parts.lo != parts.hi;
  d.clamped_to_one = parts.clamped;
  d.relevant_low = parts.lo;
  d.relevant_high = parts.hi;
  return d;
}

DepthRecommendation recommend_k(std::uint64_t corpus_size, double mean_relevant, double min_bits) {
  if (!(min_bits > 0.0) || !std::isfinite(min_bits)) throw DomainError("min_bits must be positive");
  DepthRecommendation rec;
  if (exact_ceiling_bits(corpus_size, mean_relevant, 1) < min_bits) {
    rec.saturated = true;
    return rec;
  }
  // The ceiling is non-increasing in K: find the last K that still clears min_bits.
  std::uint64_t good = 1;
  std::uint64_t bad = corpus_size + 1;
  while (bad - good > 1) {
    const std::uint64_t mid = good + (bad - good) / 2;
    if (exact_ceiling_bits(corpus_size, mean_relevant, mid) >= min_bits) good = mid;
    else bad = mid;
  }
  rec.depth = good;
  rec.diagnostic = diagnose(corpus_size, mean_relevant, good);
  return rec;
}

std::vector<CatalogRow> catalog_report(std::span<const Scenario> scenarios) {
  std::vector<CatalogRow> rows;
  rows.reserve(scenarios.size());
  for (const auto& s : scenarios) {
    CatalogRow row{s, std::nullopt, {}};
    try {
      row.diagnostic = diagnose(s.corpus_size, s.mean_relevant, s.depth);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace bor
