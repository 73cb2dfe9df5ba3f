#include "bor/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_set>

#include "bor/error.hpp"
#include "bor/parallel.hpp"
#include "bor/random.hpp"
#include "bor/summation.hpp"

namespace bor {

namespace {

constexpr double kClosureTolerance = 1e-9;

double success_from_hits(std::size_t hits, std::size_t relevant, const SuccessRule& rule) {
  if (rule.kind == SuccessRule::Kind::coverage) return hits >= rule.min_hits ? 1.0 : 0.0;
  if (relevant == 0) throw DomainError("recall is undefined for a query without relevant items");
  return static_cast<double>(hits) / static_cast<double>(relevant);
}

void check_rule(const SuccessRule& rule) {
  if (rule.kind == SuccessRule::Kind::coverage && rule.min_hits == 0)
    throw DomainError("coverage rule needs min_hits >= 1");
}

// Type-7 quantile of sorted data.
double quantile(const std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string SuccessRule::name() const {
  if (kind == Kind::recall) return "recall";
  return min_hits == 1 ? "coverage" : "coverage(m=" + std::to_string(min_hits) + ")";
}

double query_success(std::span<const RankedDoc> ranking, const Judgments& judgments, std::string_view query,
                     std::uint64_t depth, const SuccessRule& rule) {
  if (depth == 0) throw DomainError("depth must be at least 1");
  check_rule(rule);
  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(depth, ranking.size()));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < top; ++i)
    if (judgments.is_relevant(query, ranking[i].doc_id)) ++hits;
  const std::size_t relevant = rule.kind == SuccessRule::Kind::recall ? judgments.relevant_count(query) : 0;
  return success_from_hits(hits, relevant, rule);
}

double query_success(std::span<const std::string> ranking, std::span<const std::string> relevant,
                     std::uint64_t depth, const SuccessRule& rule) {
  if (depth == 0) throw DomainError("depth must be at least 1");
  check_rule(rule);
  const std::unordered_set<std::string> rel(relevant.begin(), relevant.end());
  const std::size_t top = static_cast<std::size_t>(std::min<std::uint64_t>(depth, ranking.size()));
  std::size_t hits = 0;
  for (std::size_t i = 0; i < top; ++i)
    if (rel.count(ranking[i])) ++hits;
  return success_from_hits(hits, rel.size(), rule);
}

BorReport evaluate(const Run& run, const Judgments& judgments, std::uint64_t corpus_size, std::uint64_t depth,
                   const SuccessRule& rule, const EvalOptions& options) {
  if (depth == 0 || depth > corpus_size)
    throw DomainError("depth K=" + std::to_string(depth) + " must lie in [1, N=" + std::to_string(corpus_size) + "]");
  check_rule(rule);

  BorReport report;
  report.depth = depth;
  report.corpus_size = corpus_size;
  report.rule = rule;

  std::vector<QueryOutcome> outcomes;
  for (const auto& q : judgments.query_ids()) {
    const std::uint64_t r = judgments.relevant_count(q);
    if (r > corpus_size)
      throw InputError("query " + q + " has " + std::to_string(r) + " relevant items, more than N=" +
                       std::to_string(corpus_size));
    const std::uint64_t needed = rule.kind == SuccessRule::Kind::coverage ? rule.min_hits : 1;
    if (r < needed) {
      ++report.excluded_zero_relevant;
      continue;
    }
    outcomes.push_back({q, r, 0.0, {}});
  }
  if (outcomes.empty()) throw Error(ErrorCode::no_queries, "no evaluable queries (every judged query lacks relevant items)");

  const double recall_baseline = static_cast<double>(depth) / static_cast<double>(corpus_size);
  parallel_for(outcomes.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      auto& o = outcomes[i];
      auto it = run.rankings.find(o.query_id);
      if (it != run.rankings.end()) o.success = query_success(it->second, judgments, o.query_id, depth, rule);
      o.baseline = rule.kind == SuccessRule::Kind::coverage
                       ? p_rand_at_least_m({corpus_size, o.relevant, depth, rule.min_hits})
                       : Probability::from_value(recall_baseline);
    }
  });

  CompensatedSum success;
  std::vector<Probability> baselines;
  baselines.reserve(outcomes.size());
  for (const auto& o : outcomes) {
    if (!run.rankings.count(o.query_id)) ++report.missing_from_run;
    success.add(o.success);
    baselines.push_back(o.baseline);
  }
  report.query_count = outcomes.size();
  report.p_obs = success.value() / static_cast<double>(outcomes.size());
  if (report.p_obs == 0.0 && options.smooth_zero_success) {
    report.p_obs = 1.0 / (2.0 * static_cast<double>(outcomes.size()));
    report.smoothed = true;
  }
  report.mean_baseline = mean_probability(baselines);
  report.bor = bor(report.p_obs, report.mean_baseline);
  report.ceilings = ceilings(baselines, corpus_size, depth);
  if (options.bootstrap) report.ci = bootstrap_ci(outcomes, *options.bootstrap);
  if (options.keep_per_query) report.per_query = std::move(outcomes);
  return report;
}

std::vector<SweepStep> link_reports(std::vector<BorReport> reports) {
  std::vector<SweepStep> steps;
  steps.reserve(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    SweepStep step{std::move(reports[i]), std::nullopt};
    if (i > 0) {
      const BorReport& prev = steps.back().report;
      const BorReport& cur = step.report;
      if (prev.rule.kind != cur.rule.kind || prev.rule.min_hits != cur.rule.min_hits ||
          prev.corpus_size != cur.corpus_size)
        throw DomainError("depth deltas need the same corpus and success rule at both depths");
      DepthDelta d = depth_delta(prev.p_obs, cur.p_obs, prev.mean_baseline, cur.mean_baseline, prev.depth, cur.depth,
                                 cur.rule.plateau_order());
      if (d.defined && prev.bor.defined() && cur.bor.defined()) {
        const double observed = cur.bor.bits - prev.bor.bits;
        if (!(std::fabs(observed - d.total) < kClosureTolerance))
          throw Error(ErrorCode::internal, "depth identity failed to close between K=" + std::to_string(prev.depth) +
                                               " and K=" + std::to_string(cur.depth));
      }
      step.delta = d;
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

std::vector<SweepStep> depth_sweep(const Run& run, const Judgments& judgments, std::uint64_t corpus_size,
                                   std::span<const std::uint64_t> depths, const SuccessRule& rule,
                                   const EvalOptions& options) {
  if (depths.empty()) throw DomainError("depth sweep needs at least one depth");
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1]) throw DomainError("depth sweep needs strictly ascending depths");
  std::vector<BorReport> reports;
  reports.reserve(depths.size());
  for (std::uint64_t k : depths) reports.push_back(evaluate(run, judgments, corpus_size, k, rule, options));
  return link_reports(std::move(reports));
}

BootstrapInterval bootstrap_ci(std::span<const QueryOutcome> per_query, const BootstrapOptions& options) {
  if (per_query.empty()) throw DomainError("bootstrap needs at least one query");
  if (options.replicates < 100) throw DomainError("bootstrap needs at least 100 replicates");
  if (!(options.level > 0.0 && options.level < 1.0)) throw DomainError("confidence level must lie in (0, 1)");

  const std::size_t n = per_query.size();
  std::vector<double> complement(n);
  for (std::size_t i = 0; i < n; ++i) complement[i] = std::exp(per_query[i].baseline.log_complement);

  std::vector<double> bits(options.replicates);
  std::vector<char> defined(options.replicates, 0);
  parallel_for(options.replicates, options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      PhiloxStream rng(options.seed, r);
      CompensatedSum success, value, comp;
      for (std::size_t i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_below(n));
        success.add(per_query[j].success);
        value.add(per_query[j].baseline.value);
        comp.add(complement[j]);
      }
      const double dn = static_cast<double>(n);
      const Probability mean{value.value() / dn, std::log(comp.value() / dn)};
      const double p_obs = success.value() / dn;
      if (p_obs > 0.0 && mean.value > 0.0) {
        bits[r] = std::log2(p_obs) + mean.surprisal_bits();
        defined[r] = 1;
      }
    }
  });

  BootstrapInterval ci;
  ci.replicates = options.replicates;
  std::vector<double> ok;
  ok.reserve(options.replicates);
  for (std::size_t r = 0; r < options.replicates; ++r) {
    if (defined[r]) ok.push_back(bits[r]);
    else ++ci.undefined_replicates;
  }
  if (ok.empty()) return ci;
  std::sort(ok.begin(), ok.end());
  const double alpha = 1.0 - options.level;
  ci.low = quantile(ok, alpha / 2.0);
  ci.high = quantile(ok, 1.0 - alpha / 2.0);
  ci.defined = true;
  return ci;
}

}  // namespace bor
