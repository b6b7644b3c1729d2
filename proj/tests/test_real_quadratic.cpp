#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "sysarith/real_quadratic.hpp"

using namespace sysarith;

namespace {

oracle::Split to_oracle(Splitting s) {
  switch (s) {
    case Splitting::split: return oracle::Split::split;
    case Splitting::inert: return oracle::Split::inert;
    case Splitting::ramified: return oracle::Split::ramified;
  }
  return oracle::Split::ramified;
}

} // namespace

TEST(RealQuadratic, SquarefreeExamples) {
  EXPECT_TRUE(is_squarefree(1));
  EXPECT_TRUE(is_squarefree(77));
  EXPECT_FALSE(is_squarefree(12));
}

TEST(RealQuadratic, KroneckerExamples) {
  EXPECT_EQ(kronecker_symbol(5, 11), 1);
  EXPECT_EQ(kronecker_symbol(5, 5), 0);
  EXPECT_EQ(kronecker_symbol(2, 31), 1);
  EXPECT_THROW((void)kronecker_symbol(5, 9), input_error);
}

TEST(RealQuadratic, KroneckerAgreesWithResidues) {
  int checked = 0;
  for (std::int64_t d = -200; d <= 200; ++d) {
    if (d == 0 || d == 1 || !oracle::is_squarefree(d)) continue;
    const auto disc = oracle::fund_disc(d);
    for (std::uint64_t p = 3; p <= 500; p += 2) {
      if (!oracle::is_prime(p) || disc % static_cast<std::int64_t>(p) == 0) continue;
      ASSERT_EQ(kronecker_symbol(d, p) == 1, oracle::legendre(disc, static_cast<std::int64_t>(p)) == 1) << d << " " << p;
      ++checked;
    }
  }
  EXPECT_GT(checked, 10000);
}

TEST(RealQuadratic, SplittingExamples) {
  EXPECT_EQ(splitting_type_q(QuadFieldQ(5), 11), Splitting::split);
  EXPECT_EQ(splitting_type_q(QuadFieldQ(2), 2), Splitting::ramified);
  EXPECT_EQ(splitting_type_q(QuadFieldQ(2), 11), Splitting::inert);
}

TEST(RealQuadratic, SplittingAgreesWithPolynomialRoots) {
  for (std::int64_t d = 2; d <= 300; ++d) {
    if (!oracle::is_squarefree(d)) continue;
    const QuadFieldQ field(d);
    for (std::uint64_t p = 2; p <= 97; ++p) {
      if (!oracle::is_prime(p)) continue;
      ASSERT_EQ(to_oracle(splitting_type_q(field, p)), oracle::split_q(d, static_cast<std::int64_t>(p))) << d << " " << p;
    }
  }
}

TEST(RealQuadratic, DyadicRuleOnlyChangesTwoForSevenModEight) {
  for (std::int64_t d = 2; d <= 400; ++d) {
    if (!oracle::is_squarefree(d)) continue;
    const QuadFieldQ field(d);
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
      ASSERT_EQ(splitting_type_q(field, p, DyadicRule::d_mod_8), splitting_type_q(field, p));
    }
    const auto legacy = splitting_type_q(field, 2, DyadicRule::d_mod_8);
    if (d % 8 == 7) {
      EXPECT_EQ(splitting_type_q(field, 2), Splitting::ramified);
      EXPECT_EQ(legacy, Splitting::split) << d;
    } else {
      // Inert and ramified may trade places; whether 2 splits does not change.
      EXPECT_EQ(legacy == Splitting::split, splitting_type_q(field, 2) == Splitting::split) << d;
    }
  }
}

TEST(RealQuadratic, FieldValidation) {
  EXPECT_THROW(QuadFieldQ(1), input_error);
  EXPECT_THROW(QuadFieldQ(12), input_error);
  EXPECT_THROW(QuadFieldQ(-5), input_error);
  EXPECT_EQ(QuadFieldQ(5).disc(), 5);
  EXPECT_EQ(QuadFieldQ(2).disc(), 8);
  EXPECT_EQ(QuadFieldQ(3).disc(), 12);
}

TEST(RealQuadratic, FundamentalUnitExamples) {
  const auto u5 = *fundamental_unit(5);
  EXPECT_EQ(u5.x, 1);
  EXPECT_EQ(u5.y, 1);
  EXPECT_EQ(u5.norm, -1);
  // disc 8: (x + y sqrt 8)/2 = 1 + sqrt 2
  const auto u2 = *fundamental_unit(2);
  EXPECT_EQ(u2.x, 2);
  EXPECT_EQ(u2.y, 1);
  EXPECT_EQ(u2.norm, -1);
  const auto u3 = *fundamental_unit(3);
  EXPECT_EQ(u3.x, 4);
  EXPECT_EQ(u3.y, 1);
  EXPECT_EQ(u3.norm, 1);
  EXPECT_THROW((void)fundamental_unit(1), input_error);
  EXPECT_THROW((void)fundamental_unit(18), input_error);
}

TEST(RealQuadratic, RegulatorExamples) {
  EXPECT_NEAR(regulator(5), std::log((1 + std::sqrt(5.0)) / 2), 1e-12);
  EXPECT_NEAR(regulator(2), std::log(1 + std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(regulator(3), std::log(2 + std::sqrt(3.0)), 1e-12);
  EXPECT_NEAR(regulator(5), 0.481212, 5e-7);
  EXPECT_NEAR(regulator(2), 0.881374, 5e-7);
  EXPECT_NEAR(regulator(3), 1.316958, 5e-7);
}

TEST(RealQuadratic, RegulatorAgreesWithPellSearch) {
  for (std::int64_t d = 2; d <= 400; ++d) {
    if (!oracle::is_squarefree(d)) continue;
    const auto ref = oracle::regulator(d, 2'000'000);
    if (!ref) continue;  // unit too large for the brute-force range
    ASSERT_NEAR(regulator(d), *ref, 1e-9 * std::max(1.0, *ref)) << d;
  }
}

TEST(RealQuadratic, LargeUnitsSatisfyNormEquation) {
  for (std::int64_t d : {94L, 151L, 331L, 661L, 9941L, 46021L}) {
    if (!oracle::is_squarefree(d)) continue;
    const auto u = *fundamental_unit(d);
    EXPECT_TRUE(u.satisfies_norm_equation()) << d;
    EXPECT_GT(u.log(), 0);
  }
}

TEST(RealQuadratic, LowerBoundExamples) {
  EXPECT_NEAR(regulator_lower_bound(5), 0.481212, 5e-7);
  EXPECT_NEAR(regulator_lower_bound(8), 0.881374, 5e-7);
  EXPECT_NEAR(regulator_lower_bound(4), 0.0, 1e-15);
  EXPECT_THROW((void)regulator_lower_bound(3), input_error);
}

TEST(RealQuadratic, FieldsBelowExamples) {
  auto ds = [](double l) {
    std::vector<std::int64_t> out;
    for (const auto& f : fields_with_regulator_below(l)) out.push_back(f.d());
    return out;
  };
  EXPECT_EQ(ds(0.5), (std::vector<std::int64_t>{5}));
  EXPECT_EQ(ds(1.0), (std::vector<std::int64_t>{2, 5}));
  EXPECT_TRUE(ds(0.4).empty());
  EXPECT_THROW((void)fields_with_regulator_below(0), input_error);
}

TEST(RealQuadratic, FieldsBelowMatchesExhaustiveScan) {
  // Reg_d >= log(sqrt d - 1) roughly, so d < 3000 covers every field below 3.
  const double bound = 3.0;
  std::vector<std::int64_t> ref;
  for (std::int64_t d = 2; d < 3000; ++d) {
    if (!oracle::is_squarefree(d)) continue;
    if (regulator(d) < bound) ref.push_back(d);
  }
  std::vector<std::int64_t> got;
  for (const auto& f : fields_with_regulator_below(bound, 3)) got.push_back(f.d());
  EXPECT_EQ(got, ref);
}

TEST(RealQuadratic, CacheRoundTrip) {
  auto& cache = RegulatorCache::global();
  (void)regulator(94);
  (void)regulator(151);
  const auto path = (std::filesystem::temp_directory_path() / "sysarith_rq_cache.txt").string();
  ASSERT_TRUE(cache.save(path));
  const double r151 = regulator(151);
  cache.clear();
  EXPECT_EQ(cache.size(), 0U);
  std::ostringstream warn;
  ASSERT_TRUE(cache.load(path, warn));
  EXPECT_TRUE(cache.find(151).has_value());
  EXPECT_DOUBLE_EQ(regulator(151), r151);

  {
    std::ofstream bad(path);
    bad << "not a cache\n";
  }
  cache.clear();
  EXPECT_FALSE(cache.load(path, warn));
  EXPECT_FALSE(warn.str().empty());
  std::filesystem::remove(path);
}

TEST(RealQuadratic, CacheDisabledGivesSameValues) {
  auto& cache = RegulatorCache::global();
  std::vector<double> with;
  for (std::int64_t d = 2; d < 200; ++d) {
    if (oracle::is_squarefree(d)) with.push_back(regulator(d));
  }
  cache.set_enabled(false);
  std::vector<double> without;
  for (std::int64_t d = 2; d < 200; ++d) {
    if (oracle::is_squarefree(d)) without.push_back(regulator(d));
  }
  cache.set_enabled(true);
  EXPECT_EQ(with, without);
}
