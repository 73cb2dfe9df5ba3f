#include "bor/probability.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "bor/error.hpp"
#include "oracle.hpp"

namespace {

using bor::BaselineParams;
using bor::Probability;

struct LogChooseCase {
  std::uint64_t n;
  std::uint64_t k;
  double expected;
};

// 50-digit reference values.
const LogChooseCase kLogChoose[] = {
    {10ULL, 3ULL, 4.7874917427820459942},
    {60ULL, 30ULL, 39.311700726011262416},
    {100ULL, 50ULL, 66.783841652017426009},
    {1000ULL, 20ULL, 95.628241943036976629},
    {1000ULL, 500ULL, 689.46726156785118008},
    {11314ULL, 100ULL, 569.20144276595931621},
    {11314ULL, 5657ULL, 7837.3744893181073928},
    {8841823ULL, 1000ULL, 10082.818961580699718},
    {8841823ULL, 1ULL, 15.995003635072507302},
    {100000000ULL, 12345ULL, 123439.58834088805127},
    {100000000ULL, 50000000ULL, 69314708.619862803821},
    {123456789ULL, 31ULL, 499.48122743139290395},
    {123456789ULL, 32ULL, 514.64689304366116163},
    {1099511627776ULL, 7ULL, 185.55604919570017295},
};

TEST(LogChoose, MatchesHighPrecisionReference) {
  for (const auto& c : kLogChoose) {
    const double got = bor::log_choose(c.n, c.k);
    EXPECT_NEAR(got, c.expected, 1e-10 * std::abs(c.expected)) << "n=" << c.n << " k=" << c.k;
  }
}

TEST(LogChoose, EdgesAndSymmetry) {
  EXPECT_EQ(bor::log_choose(0, 0), 0.0);
  EXPECT_EQ(bor::log_choose(17, 0), 0.0);
  EXPECT_EQ(bor::log_choose(17, 17), 0.0);
  EXPECT_NEAR(bor::log_choose(17, 1), std::log(17.0), 1e-15);
  for (std::uint64_t n : {40ULL, 1000ULL, 123457ULL})
    for (std::uint64_t k : {3ULL, 29ULL, 30ULL, 31ULL, 32ULL, 35ULL})
      EXPECT_NEAR(bor::log_choose(n, k), bor::log_choose(n, n - k), 1e-9 * bor::log_choose(n, k));
}

TEST(LogChoose, SmallValuesAreExactIntegers) {
  for (unsigned n = 0; n <= 60; ++n) {
    const auto ways = oracle::subset_counts(n, 0);
    for (unsigned k = 0; k <= n; ++k) {
      const double exact = std::log(static_cast<long double>(ways[k][0]));
      EXPECT_NEAR(bor::log_choose(n, k), exact, 1e-12 * std::max(1.0, exact)) << n << " " << k;
    }
  }
}

TEST(LogChoose, PascalRecurrenceAcrossMethodSwitch) {
  // C(n, k) = C(n-1, k-1) + C(n-1, k) in log space, around the k = 30 switch.
  for (std::uint64_t n : {70ULL, 500ULL, 9999ULL}) {
    for (std::uint64_t k = 25; k <= 36; ++k) {
      const double a = bor::log_choose(n - 1, k - 1);
      const double b = bor::log_choose(n - 1, k);
      const double rhs = std::max(a, b) + std::log1p(std::exp(std::min(a, b) - std::max(a, b)));
      EXPECT_NEAR(bor::log_choose(n, k), rhs, 1e-10 * rhs);
    }
  }
}

struct CoverageCase {
  std::uint64_t n, r, k;
  double value;
  double log_complement;
};

const CoverageCase kCoverage[] = {
    {1000ULL, 10ULL, 20ULL, 0.18368205277375494838, -0.20295135869981941632},
    {1000ULL, 10ULL, 12ULL, 0.11421044458364979531, -0.1212758786933406608},
    {58ULL, 4ULL, 5ULL, 0.30981450491432342612, -0.37079488406256862073},
    {58ULL, 4ULL, 20ULL, 0.82601880877742946708, -1.7488080820324557449},
    {8841823ULL, 1ULL, 1000ULL, 0.0001130988485066936988, -0.00011310524466373034488},
    {11314ULL, 570ULL, 100ULL, 0.99444299305081847159, -5.1926956341575968061},
    {11314ULL, 570ULL, 10ULL, 0.40377997428436539101, -0.51714550937969393619},
    {100000000ULL, 5000ULL, 20000ULL, 0.6321665460964869734, -1.0001250141686982463},
    {1000000ULL, 1ULL, 999999ULL, 0.999999, -13.815510557964274104},
    {20000ULL, 10000ULL, 5000ULL, 1.0, -4315.0283611671042549},
};

TEST(Coverage, MatchesHighPrecisionReference) {
  for (const auto& c : kCoverage) {
    const auto p = bor::p_rand_coverage({c.n, c.r, c.k, 1});
    EXPECT_NEAR(p.value, c.value, 1e-12) << c.n << " " << c.r << " " << c.k;
    EXPECT_NEAR(p.log_complement, c.log_complement, 1e-10 * std::abs(c.log_complement))
        << c.n << " " << c.r << " " << c.k;
  }
}

TEST(Coverage, ThousandBookLibrary) {
  EXPECT_NEAR(bor::p_rand_coverage({1000, 10, 20, 1}).surprisal_bits(), 2.45, 0.01);
  EXPECT_NEAR(bor::p_rand_coverage({1000, 10, 12, 1}).surprisal_bits(), 3.13, 0.01);
}

TEST(Coverage, TrivialCases) {
  EXPECT_EQ(bor::p_rand_coverage({100, 0, 10, 1}).value, 0.0);
  EXPECT_EQ(bor::p_rand_coverage({100, 0, 10, 1}).surprisal_bits(), std::numeric_limits<double>::infinity());
  // K > N - R: every subset contains a relevant item.
  const auto full = bor::p_rand_coverage({10, 10, 1, 1});
  EXPECT_EQ(full.value, 1.0);
  EXPECT_EQ(full.surprisal_bits(), 0.0);
  EXPECT_EQ(bor::p_rand_coverage({58, 4, 58, 1}).surprisal_bits(), 0.0);
  EXPECT_EQ(bor::p_rand_coverage({20, 5, 16, 1}).value, 1.0);
  // One relevant item: P = K/N exactly.
  EXPECT_NEAR(bor::p_rand_coverage({8841823, 1, 1000, 1}).value, 1000.0 / 8841823.0, 1e-18);
}

TEST(Coverage, RejectsInvalidParameters) {
  EXPECT_THROW(bor::p_rand_coverage({10, 11, 1, 1}), bor::DomainError);
  EXPECT_THROW(bor::p_rand_coverage({10, 1, 0, 1}), bor::DomainError);
  EXPECT_THROW(bor::p_rand_coverage({10, 1, 11, 1}), bor::DomainError);
  EXPECT_THROW(bor::p_rand_coverage({10, 1, 2, 2}), bor::DomainError);
  EXPECT_THROW(bor::p_rand_at_least_m({10, 1, 2, 0}), bor::DomainError);
  EXPECT_THROW(bor::p_rand_coverage({0, 0, 1, 1}), bor::DomainError);
}

TEST(Coverage, ProductAndLogChooseRoutesAgree) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t n = 2 + rng() % 2'000'000;
    const std::uint64_t r = 1 + rng() % std::min<std::uint64_t>(n - 1, 5000);
    const std::uint64_t k = 1 + rng() % std::min<std::uint64_t>(n - r, 5000);
    const double a = bor::detail::log_miss_product(n, r, k);
    const double b = bor::detail::log_miss_log_choose(n, r, k);
    EXPECT_NEAR(a, b, 1e-9 * std::max(1.0, std::abs(a))) << n << " " << r << " " << k;
  }
}

TEST(Coverage, MonotoneInDepthAndRelevance) {
  for (std::uint64_t n : {58ULL, 1000ULL, 11314ULL}) {
    double prev = -1.0;
    for (std::uint64_t k = 1; k <= n; k += std::max<std::uint64_t>(1, n / 97)) {
      const double v = bor::p_rand_coverage({n, 4, k, 1}).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
    prev = -1.0;
    for (std::uint64_t r = 0; r <= n; r += std::max<std::uint64_t>(1, n / 89)) {
      const double v = bor::p_rand_coverage({n, r, 10, 1}).value;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

struct SurvivalCase {
  std::uint64_t n, r, k;
  std::uint32_t m;
  double value;
  double log_complement;
};

const SurvivalCase kSurvival[] = {
    {1000ULL, 10ULL, 20ULL, 2u, 0.015542413798215287905, -0.015664463393426985751},
    {1000ULL, 10ULL, 20ULL, 3u, 0.00075235296240392888122, -0.00075263612192679302365},
    {11314ULL, 570ULL, 100ULL, 5u, 0.57161778491209680668, -0.84773945600442330425},
    {11314ULL, 570ULL, 100ULL, 10u, 0.02886726070599406846, -0.029292116332566705696},
    {5000ULL, 40ULL, 300ULL, 4u, 0.21669077402191131598, -0.24422773633273363835},
    {200ULL, 50ULL, 100ULL, 30u, 0.070603373152586268225, -0.073219691725177246687},
    {100000ULL, 3ULL, 100ULL, 3u, 9.702291066791545533e-10, -9.7022910714982681333e-10},
};

TEST(Survival, MatchesHighPrecisionReference) {
  for (const auto& c : kSurvival) {
    const auto p = bor::p_rand_at_least_m({c.n, c.r, c.k, c.m});
    EXPECT_NEAR(p.value, c.value, 1e-11 * std::max(1e-3, c.value) + 1e-15) << c.n << " " << c.m;
    EXPECT_NEAR(p.log_complement, c.log_complement, 1e-10 * std::abs(c.log_complement));
  }
}

TEST(Survival, MinHitsOneEqualsCoverage) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t n = 1 + rng() % 50000;
    const std::uint64_t r = rng() % (n + 1);
    const std::uint64_t k = 1 + rng() % n;
    const BaselineParams p{n, r, k, 1};
    const auto a = bor::p_rand_coverage(p);
    const auto b = bor::detail::hypergeometric_survival(p);
    EXPECT_NEAR(a.value, b.value, 1e-11);
  }
}

TEST(Survival, UnreachableMinHitsIsZero) {
  EXPECT_EQ(bor::p_rand_at_least_m({100, 3, 50, 4}).value, 0.0);
  EXPECT_EQ(bor::p_rand_at_least_m({100, 30, 3, 4}).value, 0.0);
}

TEST(Survival, ExactAgainstSubsetCounts) {
  for (unsigned n : {1u, 7u, 23u, 60u}) {
    for (unsigned r = 0; r <= n; r += (n > 20 ? 7 : 1)) {
      const auto ways = oracle::subset_counts(n, r);
      for (unsigned k = 1; k <= n; ++k)
        for (unsigned m = 1; m <= 4; ++m) {
          const double expected = static_cast<double>(oracle::survival(ways, k, m));
          EXPECT_NEAR(bor::p_rand_at_least_m({n, r, k, m}).value, expected, 1e-10)
              << n << " " << r << " " << k << " " << m;
        }
    }
  }
}

TEST(Survival, BitmaskEnumerationAgrees) {
  const unsigned n = 14;
  for (unsigned r = 0; r <= n; ++r) {
    const auto table = oracle::enumerate_subsets(n, r);
    for (unsigned k = 1; k <= n; ++k) {
      std::uint64_t total = 0;
      std::uint64_t hit = 0;
      for (unsigned h = 0; h <= r; ++h) {
        total += table[k][h];
        if (h >= 2) hit += table[k][h];
      }
      EXPECT_NEAR(bor::p_rand_at_least_m({n, r, k, 2}).value, static_cast<double>(hit) / total, 1e-12);
    }
  }
}

TEST(ProbabilityType, RepresentationsAgree) {
  const auto a = Probability::from_value(0.25);
  EXPECT_NEAR(a.log_complement, std::log(0.75), 1e-16);
  const auto b = Probability::from_log_complement(std::log(0.75));
  EXPECT_NEAR(b.value, 0.25, 1e-16);
  EXPECT_EQ(Probability::one().surprisal_bits(), 0.0);
  EXPECT_EQ(Probability::zero().surprisal_bits(), std::numeric_limits<double>::infinity());
}

TEST(ProbabilityType, SurprisalKeepsPrecisionNearOne) {
  // 1 - 1e-14 is representable only approximately; the complement is exact.
  const auto p = Probability::from_log_complement(std::log(1e-14));
  EXPECT_NEAR(p.surprisal_bits(), 1e-14 / std::log(2.0), 1e-22);
  const auto q = Probability::from_log_complement(-700.0);
  EXPECT_GT(q.surprisal_bits(), 0.0);
  EXPECT_LT(q.surprisal_bits(), 1e-300);
}

TEST(Poisson, CollapseThresholds) {
  const auto three = bor::p_rand_poisson(3.0, 1);
  EXPECT_NEAR(three.value, 0.9502, 0.0005);
  EXPECT_NEAR(three.surprisal_bits(), 0.074, 0.002);
  const auto four_six = bor::p_rand_poisson(4.6, 1);
  EXPECT_NEAR(four_six.value, 0.9899, 0.0005);
  EXPECT_NEAR(four_six.surprisal_bits(), 0.0146, 0.002);
}

TEST(Poisson, HigherOrderTails) {
  // P(X >= 2) = 1 - e^-l (1 + l).
  for (double l : {0.001, 0.3, 2.0, 9.0}) {
    EXPECT_NEAR(bor::p_rand_poisson(l, 2).value, 1.0 - std::exp(-l) * (1.0 + l), 1e-14);
    EXPECT_NEAR(bor::p_rand_poisson(l, 3).value, 1.0 - std::exp(-l) * (1.0 + l + l * l / 2), 1e-14);
  }
  EXPECT_EQ(bor::p_rand_poisson(0.0, 1).value, 0.0);
  EXPECT_THROW(bor::p_rand_poisson(-1.0, 1), bor::DomainError);
  EXPECT_THROW(bor::p_rand_poisson(1.0, 0), bor::DomainError);
}

TEST(Lambda, DefinitionAndErrors) {
  EXPECT_DOUBLE_EQ(bor::lambda_rate(58, 4.0, 58), 4.0);
  EXPECT_DOUBLE_EQ(bor::lambda_rate(20, 3.0, 5), 0.75);
  EXPECT_DOUBLE_EQ(bor::lambda_rate(10000, 1.5, 10), 0.0015);
  EXPECT_THROW(bor::lambda_rate(0, 1.0, 1), bor::DomainError);
  EXPECT_THROW(bor::lambda_rate(10, 0.0, 1), bor::DomainError);
  EXPECT_THROW(bor::lambda_rate(10, 1.0, 0), bor::DomainError);
}

TEST(Binomial, ApproximatesWithoutReplacement) {
  const auto approx = bor::p_rand_binomial({1000, 10, 12, 1});
  EXPECT_NEAR(approx.value, 1.0 - std::pow(0.99, 12), 1e-15);
  // Sampling without replacement makes success slightly more likely.
  EXPECT_LT(approx.value, bor::p_rand_coverage({1000, 10, 12, 1}).value);
  EXPECT_THROW(bor::p_rand_binomial({1000, 10, 12, 2}), bor::DomainError);
}

TEST(Poisson, CloseToExactInRareHitRegime) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t k = 1 + rng() % 200;
    const std::uint64_t r = 1 + rng() % 200;
    const std::uint64_t n = 50 * std::max(k, r) + rng() % 100000;
    const double exact = bor::p_rand_coverage({n, r, k, 1}).surprisal_bits();
    const double poisson = bor::p_rand_poisson(bor::lambda_rate(n, static_cast<double>(r), k), 1).surprisal_bits();
    EXPECT_LE(std::abs(exact - poisson), 0.05) << n << " " << r << " " << k;
  }
}

}  // namespace
