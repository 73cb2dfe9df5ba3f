#include "bor/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <unordered_set>

#include "bor/error.hpp"
#include "bor/format.hpp"
#include "bor/parallel.hpp"
#include "bor/random.hpp"

namespace bor {

namespace {

// Above this sampling fraction a partial Fisher-Yates beats rejection sampling.
constexpr double kShuffleFraction = 0.1;

// Per-worker scratch for drawing distinct indices from [0, n).
class DistinctSampler {
 public:
  explicit DistinctSampler(std::uint64_t n) : n_(n) {}

  // Calls visit(index) for k distinct uniform indices until it returns false.
  template <typename Visit>
  void draw(PhiloxStream& rng, std::uint64_t k, Visit&& visit) {
    if (static_cast<double>(k) > kShuffleFraction * static_cast<double>(n_)) {
      if (perm_.empty()) {
        perm_.resize(n_);
        std::iota(perm_.begin(), perm_.end(), std::uint64_t{0});
      }
      swaps_.clear();
      for (std::uint64_t i = 0; i < k; ++i) {
        const std::uint64_t j = i + rng.uniform_below(n_ - i);
        std::swap(perm_[i], perm_[j]);
        swaps_.push_back(j);
        if (!visit(perm_[i])) break;
      }
      // Undo in reverse so the next trial starts from the identity.
      for (std::size_t i = swaps_.size(); i-- > 0;) std::swap(perm_[i], perm_[swaps_[i]]);
      return;
    }
    if (stamp_.empty()) stamp_.assign(n_, 0);
    ++generation_;
    for (std::uint64_t drawn = 0; drawn < k;) {
      const std::uint64_t x = rng.uniform_below(n_);
      if (stamp_[x] == generation_) continue;
      stamp_[x] = generation_;
      ++drawn;
      if (!visit(x)) break;
    }
  }

 private:
  std::uint64_t n_;
  std::vector<std::uint64_t> perm_;
  std::vector<std::uint64_t> swaps_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t generation_ = 0;
};

std::string doc_name(std::uint64_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "d%09llu", static_cast<unsigned long long>(i));
  return buf;
}

}  // namespace

MonteCarloEstimate monte_carlo_p(const TrialConfig& config, unsigned threads) {
  config.params.validate();
  if (config.trials == 0) throw DomainError("Monte Carlo needs at least one trial");
  const auto& p = config.params;

  const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), config.trials);
  std::vector<std::uint64_t> chunk_successes(workers, 0);
  const std::uint64_t chunk = (config.trials + workers - 1) / workers;
  parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      DistinctSampler sampler(p.corpus_size);
      std::uint64_t successes = 0;
      const std::uint64_t begin = w * chunk;
      const std::uint64_t end = std::min(config.trials, begin + chunk);
      for (std::uint64_t t = begin; t < end; ++t) {
        if (p.relevant_count < p.min_hits) continue;
        PhiloxStream rng(config.seed, t);
        std::uint64_t hits = 0;
        sampler.draw(rng, p.depth, [&](std::uint64_t x) {
          if (x < p.relevant_count) ++hits;
          return hits < p.min_hits;
        });
        if (hits >= p.min_hits) ++successes;
      }
      chunk_successes[w] = successes;
    }
  });

  MonteCarloEstimate est;
  est.trials = config.trials;
  est.successes = std::accumulate(chunk_successes.begin(), chunk_successes.end(), std::uint64_t{0});
  est.probability = static_cast<double>(est.successes) / static_cast<double>(est.trials);
  est.standard_error = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(est.trials));
  return est;
}

void SyntheticSpec::validate() const {
  if (corpus_size == 0) throw DomainError("synthetic corpus size must be positive");
  if (query_count == 0) throw DomainError("synthetic spec needs at least one query");
  if (relevance.kind == RelevanceModel::Kind::constant) {
    if (relevance.relevant > corpus_size) throw DomainError("constant relevant count exceeds corpus size");
  } else {
    if (relevance.class_sizes.empty()) throw DomainError("class-size model needs at least one class");
    std::uint64_t total = 0;
    for (auto s : relevance.class_sizes) {
      if (s == 0) throw DomainError("class sizes must be positive");
      total += s;
    }
    if (total > corpus_size) throw DomainError("class sizes exceed corpus size");
  }
  if (!(retriever.hit_prob >= 0.0 && retriever.hit_prob <= 1.0)) throw DomainError("hit_prob must lie in [0, 1]");
}

SyntheticDataset make_synthetic(const SyntheticSpec& spec, std::uint64_t max_depth) {
  spec.validate();
  if (max_depth == 0 || max_depth > spec.corpus_size) throw DomainError("synthetic depth must lie in [1, N]");
  const std::uint64_t n = spec.corpus_size;
  const bool by_class = spec.relevance.kind == RelevanceModel::Kind::class_sizes;

  std::vector<std::uint64_t> class_start;
  std::uint64_t labelled = 0;
  if (by_class) {
    for (auto s : spec.relevance.class_sizes) {
      class_start.push_back(labelled);
      labelled += s;
    }
  }

  JudgmentsBuilder builder(1);
  std::vector<std::uint32_t> interned(n, UINT32_MAX);
  auto doc_ref = [&](std::uint64_t i) {
    if (interned[i] == UINT32_MAX) interned[i] = builder.intern(doc_name(i));
    return interned[i];
  };

  SyntheticDataset data;
  data.run.system_tag = "synthetic";
  DistinctSampler sampler(n);
  std::vector<std::uint64_t> relevant;
  std::vector<std::uint64_t> ranking;
  std::unordered_set<std::uint64_t> used;
  for (std::uint64_t qi = 0; qi < spec.query_count; ++qi) {
    PhiloxStream rng(spec.seed, qi);
    char qname[32];
    std::snprintf(qname, sizeof qname, "q%06llu", static_cast<unsigned long long>(qi));

    relevant.clear();
    std::optional<std::uint64_t> self;
    if (by_class) {
      std::uint64_t pick = rng.uniform_below(labelled);
      std::size_t c = 0;
      while (pick >= spec.relevance.class_sizes[c]) pick -= spec.relevance.class_sizes[c++];
      self = class_start[c] + pick;
      for (std::uint64_t d = class_start[c]; d < class_start[c] + spec.relevance.class_sizes[c]; ++d)
        if (d != *self) relevant.push_back(d);
    } else {
      for (std::uint64_t d = 0; d < spec.relevance.relevant; ++d) relevant.push_back(d);
    }
    builder.add_query(qname);
    for (auto d : relevant) builder.add(qname, doc_ref(d), 1);

    const std::uint64_t available = n - (self ? 1 : 0);
    const std::uint64_t length = std::min(max_depth, available);
    auto is_relevant = [&](std::uint64_t d) { return std::binary_search(relevant.begin(), relevant.end(), d); };
    ranking.clear();
    switch (spec.retriever.kind) {
      case RetrieverModel::Kind::oracle: {
        for (auto d : relevant) {
          if (ranking.size() == length) break;
          ranking.push_back(d);
        }
        for (std::uint64_t d = 0; d < n && ranking.size() < length; ++d)
          if (d != self && !is_relevant(d)) ranking.push_back(d);
        break;
      }
      case RetrieverModel::Kind::random: {
        // Draw one extra so the query's own document can be skipped.
        sampler.draw(rng, std::min(length + (self ? 1 : 0), n), [&](std::uint64_t d) {
          if (d != self) ranking.push_back(d);
          return ranking.size() < length;
        });
        break;
      }
      case RetrieverModel::Kind::noisy: {
        std::vector<std::uint64_t> pool = relevant;
        const std::uint64_t non_relevant = available - relevant.size();
        std::uint64_t placed_non_relevant = 0;
        used.clear();
        for (std::uint64_t slot = 0; slot < length; ++slot) {
          const bool want_hit = rng.uniform01() < spec.retriever.hit_prob;
          if ((want_hit || placed_non_relevant == non_relevant) && !pool.empty()) {
            const auto j = static_cast<std::size_t>(rng.uniform_below(pool.size()));
            ranking.push_back(pool[j]);
            pool[j] = pool.back();
            pool.pop_back();
            continue;
          }
          if (placed_non_relevant == non_relevant) break;
          for (;;) {
            const std::uint64_t d = rng.uniform_below(n);
            if (d == self || is_relevant(d) || used.count(d)) continue;
            used.insert(d);
            ranking.push_back(d);
            ++placed_non_relevant;
            break;
          }
        }
        break;
      }
    }
    auto& docs = data.run.rankings[qname];
    docs.reserve(ranking.size());
    for (std::size_t i = 0; i < ranking.size(); ++i)
      docs.push_back({doc_name(ranking[i]), static_cast<double>(ranking.size() - i)});
  }
  data.judgments = std::move(builder).build();
  return data;
}

std::vector<SweepStep> simulate_sweep(const SyntheticSpec& spec, std::span<const std::uint64_t> depths,
                                      const SuccessRule& rule, const EvalOptions& options) {
  if (depths.empty()) throw DomainError("simulate_sweep needs at least one depth");
  const auto data = make_synthetic(spec, *std::max_element(depths.begin(), depths.end()));
  return depth_sweep(data.run, data.judgments, spec.corpus_size, depths, rule, options);
}

std::vector<BoundaryRow> boundary_map(std::uint64_t corpus_size, double mean_relevant,
                                      std::span<const std::uint64_t> depths) {
  for (std::size_t i = 1; i < depths.size(); ++i)
    if (depths[i] <= depths[i - 1]) throw DomainError("boundary grid must be strictly ascending");
  std::vector<BoundaryRow> rows;
  rows.reserve(depths.size());
  for (auto k : depths) {
    const auto d = diagnose(corpus_size, mean_relevant, k);
    rows.push_back({k, d.lambda, d.exact_ceiling, d.poisson_ceiling, d.zone});
  }
  return rows;
}

void write_boundary_csv(std::ostream& out, std::span<const BoundaryRow> rows) {
  out << "K,lambda,exact_ceiling_bits,poisson_ceiling_bits,zone\n";
  for (const auto& r : rows)
    out << r.depth << ',' << format_double(r.lambda) << ',' << format_double(r.exact_ceiling) << ','
        << format_double(r.poisson_ceiling) << ',' << zone_name(r.zone) << '\n';
}

}  // namespace bor
