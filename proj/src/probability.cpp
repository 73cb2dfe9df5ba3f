#include "bor/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "bor/error.hpp"
#include "bor/summation.hpp"

namespace bor {

namespace {

constexpr std::uint64_t kDirectSumLimit = 30;
constexpr std::uint64_t kProductCorpusLimit = 10'000;
constexpr std::uint64_t kProductTermLimit = std::uint64_t{1} << 20;

// ln(x!) - [x ln x - x + 0.5 ln(2 pi x)], valid for x > kDirectSumLimit.
double stirling_error(double x) {
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  return inv * (1.0 / 12 - inv2 * (1.0 / 360 - inv2 * (1.0 / 1260 - inv2 * (1.0 / 1680 - inv2 / 1188))));
}

std::string params_text(const BaselineParams& p) {
  return "(N=" + std::to_string(p.corpus_size) + ", R=" + std::to_string(p.relevant_count) +
         ", K=" + std::to_string(p.depth) + ", m=" + std::to_string(p.min_hits) + ")";
}

}  // namespace

void BaselineParams::validate() const {
  if (corpus_size == 0) throw DomainError("corpus size must be positive " + params_text(*this));
  if (relevant_count > corpus_size)
    throw DomainError("relevant count exceeds corpus size " + params_text(*this));
  if (depth == 0 || depth > corpus_size)
    throw DomainError("depth must lie in [1, N] " + params_text(*this));
  if (min_hits == 0) throw DomainError("min_hits must be at least 1 " + params_text(*this));
}

Probability Probability::from_value(double v) { return {v, std::log1p(-v)}; }

Probability Probability::from_log_complement(double lc) { return {-std::expm1(lc), lc}; }

Probability Probability::one() { return {1.0, -std::numeric_limits<double>::infinity()}; }

double Probability::surprisal_bits() const {
  if (!(value > 0.0)) return std::numeric_limits<double>::infinity();
  if (value <= 0.5) return -std::log2(value);
  return -std::log1p(-std::exp(log_complement)) / std::numbers::ln2;
}

double log_choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) throw DomainError("log_choose: k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  const std::uint64_t j = std::min(k, n - k);
  if (j == 0) return 0.0;
  const double nd = static_cast<double>(n);
  if (j <= kDirectSumLimit) {
    // Every factor (n-i)/(i+1) >= 1, so the terms never cancel.
    CompensatedSum s;
    for (std::uint64_t i = 0; i < j; ++i)
      s.add(std::log((nd - static_cast<double>(i)) / static_cast<double>(i + 1)));
    return s.value();
  }
  const double jd = static_cast<double>(j);
  const double rest = nd - jd;
  const double main = jd * std::log(nd / jd) - rest * std::log1p(-jd / nd);
  const double half = 0.5 * std::log(nd / (2.0 * std::numbers::pi * jd * rest));
  return main + half + stirling_error(nd) - stirling_error(jd) - stirling_error(rest);
}

namespace detail {

double log_miss_product(std::uint64_t n, std::uint64_t r, std::uint64_t k) {
  // C(n-r,k)/C(n,k) = prod_{j<min(r,k)} (1 - max(r,k)/(n-j)).
  const std::uint64_t shorter = std::min(r, k);
  const double longer = static_cast<double>(std::max(r, k));
  CompensatedSum s;
  for (std::uint64_t j = 0; j < shorter; ++j)
    s.add(std::log1p(-longer / static_cast<double>(n - j)));
  return s.value();
}

double log_miss_log_choose(std::uint64_t n, std::uint64_t r, std::uint64_t k) {
  return log_choose(n - r, k) - log_choose(n, k);
}

Probability hypergeometric_survival(const BaselineParams& params) {
  params.validate();
  const std::uint64_t n = params.corpus_size;
  const std::uint64_t r = params.relevant_count;
  const std::uint64_t k = params.depth;
  const std::uint64_t m = params.min_hits;

  const std::uint64_t hi = std::min(r, k);
  if (m > hi) return Probability::zero();
  const std::uint64_t lo = k > n - r ? k - (n - r) : 0;
  if (m <= lo) return Probability::one();

  // log pmf at the lowest feasible hit count, then the ratio recurrence
  // pmf(i+1)/pmf(i) = (r-i)(k-i) / ((i+1)(n-r-k+i+1)).
  std::vector<double> log_pmf;
  log_pmf.reserve(hi - lo + 1);
  double t = lo == 0 ? (std::min(r, k) <= kProductTermLimit || n <= kProductCorpusLimit
                            ? log_miss_product(n, r, k)
                            : log_miss_log_choose(n, r, k))
                     : log_choose(r, lo) - log_choose(n, k);
  log_pmf.push_back(t);
  const double nr = static_cast<double>(n - r);
  const double rd = static_cast<double>(r);
  const double kd = static_cast<double>(k);
  double peak = t;
  for (std::uint64_t i = lo; i < hi; ++i) {
    const double id = static_cast<double>(i);
    const double prev = t;
    t += std::log((rd - id) / (id + 1.0)) + std::log((kd - id) / (nr - kd + id + 1.0));
    log_pmf.push_back(t);
    peak = std::max(peak, t);
    // Past the mode the tail shrinks geometrically; stop once it underflows.
    if (i + 1 > m && t < prev && t < peak - 800.0) break;
  }
  const std::size_t split = static_cast<std::size_t>(m - lo);
  const double log_lower = log_sum_exp(std::span(log_pmf).first(split));
  const double log_upper = log_sum_exp(std::span(log_pmf).subspan(split));
  // Normalize through the smaller side so neither output cancels.
  if (log_upper < log_lower) {
    const double x = std::exp(log_upper - log_lower);
    return {x / (1.0 + x), -std::log1p(x)};
  }
  const double d = log_lower - log_upper;
  return Probability::from_log_complement(d - std::log1p(std::exp(d)));
}

}  // namespace detail

Probability p_rand_coverage(const BaselineParams& params) {
  params.validate();
  if (params.min_hits != 1) throw DomainError("p_rand_coverage requires m = 1");
  const std::uint64_t n = params.corpus_size;
  const std::uint64_t r = params.relevant_count;
  const std::uint64_t k = params.depth;
  if (r == 0) return Probability::zero();
  if (k > n - r) return Probability::one();
  const bool product = n <= kProductCorpusLimit || std::min(r, k) <= kProductTermLimit;
  return Probability::from_log_complement(product ? detail::log_miss_product(n, r, k)
                                                  : detail::log_miss_log_choose(n, r, k));
}

Probability p_rand_at_least_m(const BaselineParams& params) {
  params.validate();
  if (params.min_hits == 1) return p_rand_coverage(params);
  return detail::hypergeometric_survival(params);
}

double lambda_rate(std::uint64_t corpus_size, double mean_relevant, std::uint64_t depth) {
  if (corpus_size == 0 || depth == 0 || !(mean_relevant > 0.0))
    throw DomainError("lambda_rate: N, mean relevant count and K must be positive");
  return static_cast<double>(depth) * mean_relevant / static_cast<double>(corpus_size);
}

Probability p_rand_poisson(double lambda, std::uint32_t min_hits) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("p_rand_poisson: lambda must be >= 0");
  if (min_hits == 0) throw DomainError("p_rand_poisson: min_hits must be at least 1");
  if (lambda == 0.0) return Probability::zero();
  if (min_hits == 1) return Probability::from_log_complement(-lambda);

  const double log_lambda = std::log(lambda);
  auto log_term = [&](double i) { return -lambda + i * log_lambda - std::lgamma(i + 1.0); };
  std::vector<double> lower;
  for (std::uint32_t i = 0; i < min_hits; ++i) lower.push_back(log_term(i));
  std::vector<double> upper;
  const double stop = std::max<double>(min_hits, lambda + 40.0 * std::sqrt(lambda) + 50.0);
  for (double i = min_hits; i <= stop; i += 1.0) upper.push_back(log_term(i));
  const double log_lower = log_sum_exp(lower);
  const double log_upper = log_sum_exp(upper);
  // Normalize through the smaller side so neither output cancels.
  if (log_upper < log_lower) {
    const double x = std::exp(log_upper - log_lower);
    return {x / (1.0 + x), -std::log1p(x)};
  }
  const double d = log_lower - log_upper;
  return Probability::from_log_complement(d - std::log1p(std::exp(d)));
}

Probability p_rand_binomial(const BaselineParams& params) {
  params.validate();
  if (params.min_hits != 1) throw DomainError("p_rand_binomial requires m = 1");
  if (params.relevant_count == 0) return Probability::zero();
  const double density = static_cast<double>(params.relevant_count) / static_cast<double>(params.corpus_size);
  return Probability::from_log_complement(static_cast<double>(params.depth) * std::log1p(-density));
}

}  // namespace bor
