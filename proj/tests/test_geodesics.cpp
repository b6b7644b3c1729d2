#include <gtest/gtest.h>

#include <map>

#include "oracles.hpp"
#include "sysarith/geodesics.hpp"

using namespace sysarith;

namespace {

bool oracle_embeds(std::int64_t d, const std::vector<std::uint64_t>& ram) {
  for (auto p : ram) {
    if (oracle::split_q(d, static_cast<std::int64_t>(p)) == oracle::Split::split) return false;
  }
  return true;
}

std::int64_t oracle_squarefree_part(std::int64_t n) {
  for (std::int64_t q = 2; q * q <= n; ++q) {
    while (n % (q * q) == 0) n /= q * q;
  }
  return n;
}

struct OracleSystole {
  double length;
  std::int64_t d;
};

/// Least regulator among embeddable fields, every regulator found by the Pell
/// search. A unit below e^cap has y < e^cap / sqrt(D) and D < 4 e^{2 cap}.
std::optional<OracleSystole> oracle_paper_systole(const std::vector<std::uint64_t>& ram, double cap) {
  std::optional<OracleSystole> best;
  const auto max_d = static_cast<std::int64_t>(4 * std::exp(2 * cap)) + 4;
  for (std::int64_t d = 2; d <= max_d; ++d) {
    if (!oracle::is_squarefree(d) || !oracle_embeds(d, ram)) continue;
    const auto D = static_cast<double>(oracle::fund_disc(d));
    const auto max_y = static_cast<std::int64_t>(std::exp(cap) / std::sqrt(D)) + 2;
    const auto reg = oracle::regulator(d, max_y);
    if (!reg || *reg >= cap) continue;
    if (!best || *reg < best->length) best = OracleSystole{*reg, d};
  }
  return best;
}

} // namespace

TEST(Geodesics, LengthFromTraceExamples) {
  EXPECT_NEAR(geodesic_length_from_trace(3, 2), 0.962424, 5e-7);
  EXPECT_NEAR(geodesic_length_from_trace(3, 2), 2 * regulator(5), 1e-12);
  EXPECT_NEAR(geodesic_length_from_trace(4, 2), 1.316958, 5e-7);
  EXPECT_NEAR(geodesic_length_from_trace(4, 2), regulator(3), 1e-12);
  EXPECT_NEAR(geodesic_length_from_trace(-4, 2), regulator(3), 1e-12);
  EXPECT_NEAR(geodesic_length_from_trace(4, 3), 2 * regulator(3), 1e-12);
  EXPECT_THROW((void)geodesic_length_from_trace(2, 2), input_error);
  EXPECT_THROW((void)geodesic_length_from_trace(-1, 2), input_error);
  EXPECT_THROW((void)geodesic_length_from_trace(5, 4), input_error);
}

TEST(Geodesics, LengthMatchesOracle) {
  for (std::int64_t t = 3; t < 500; ++t) ASSERT_NEAR(geodesic_length_from_trace(t), oracle::trace_length(t), 1e-12);
}

TEST(Geodesics, FirstTraceOfEachFieldIsUnitOrSquare) {
  std::map<std::int64_t, std::int64_t> first;
  for (std::int64_t t = 3; t < 2000; ++t) first.emplace(oracle_squarefree_part(t * t - 4), t);
  for (const auto& [d, t] : first) {
    const auto c = GeodesicCandidate::from_trace(t);
    ASSERT_EQ(c.field.d(), d);
    const double ratio = c.length_trace_mode / c.length_paper_mode;
    ASSERT_TRUE(std::abs(ratio - 1) < 1e-9 || std::abs(ratio - 2) < 1e-9) << "t=" << t << " ratio " << ratio;
    // The factor 2 occurs exactly when the fundamental unit has norm -1.
    ASSERT_EQ(std::abs(ratio - 2) < 1e-9, fundamental_unit(d)->norm == -1) << d;
  }
}

TEST(Geodesics, PaperModeExamples) {
  const auto s211 = exact_systole_q(QuaternionAlgebraQ({2, 11}), LengthMode::paper, 3);
  ASSERT_TRUE(s211);
  EXPECT_EQ(s211->field.d(), 2);
  EXPECT_NEAR(s211->length, 0.881374, 1e-5);
}

TEST(Geodesics, TwoThirtyOneSystoleComesFromThirteen) {
  // 2 is inert in Q(sqrt 13) (13 = 5 mod 8) and 13 is a non-residue mod 31,
  // so Q(sqrt 13) embeds and its regulator undercuts Q(sqrt 3).
  EXPECT_TRUE(embeds_q(QuadFieldQ(13), QuaternionAlgebraQ({2, 31})));
  EXPECT_TRUE(embeds_q(QuadFieldQ(3), QuaternionAlgebraQ({2, 31})));
  EXPECT_LT(regulator(13), regulator(3));
  const auto s = exact_systole_q(QuaternionAlgebraQ({2, 31}), LengthMode::paper, 3);
  ASSERT_TRUE(s);
  const auto ref = oracle_paper_systole({2, 31}, 3);
  ASSERT_TRUE(ref);
  EXPECT_EQ(s->field.d(), ref->d);
  EXPECT_EQ(s->field.d(), 13);
  EXPECT_NEAR(s->length, ref->length, 1e-9);
  EXPECT_NEAR(s->length, 1.194763, 1e-5);
}

TEST(Geodesics, TraceModeExample) {
  const auto s = exact_systole_q(QuaternionAlgebraQ({2, 11}), LengthMode::trace, 3);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->trace, 5);
  EXPECT_EQ(s->field.d(), 21);
  EXPECT_NEAR(s->length, 1.566799, 5e-7);
}

TEST(Geodesics, CapAndAdmissibility) {
  EXPECT_FALSE(exact_systole_q(QuaternionAlgebraQ({2, 11}), LengthMode::paper, 0.5).has_value());
  EXPECT_FALSE(exact_systole_q(QuaternionAlgebraQ({2, 11}), LengthMode::trace, 1.5).has_value());
  EXPECT_THROW((void)exact_systole_q(QuaternionAlgebraQ({2}), LengthMode::paper, 3), input_error);
  EXPECT_THROW((void)exact_systole_q(QuaternionAlgebraQ({2, 11}), LengthMode::paper, 0), input_error);
}

TEST(Geodesics, PaperModeMatchesOracle) {
  const std::vector<std::vector<std::uint64_t>> sets{{2, 3}, {2, 11}, {2, 31}, {3, 31}, {2, 3, 7, 11}, {3, 5, 7, 11}, {5, 13}, {2, 7, 29, 37}};
  for (const auto& s : sets) {
    const auto got = exact_systole_q(QuaternionAlgebraQ(s), LengthMode::paper, 3.5);
    const auto ref = oracle_paper_systole(s, 3.5);
    ASSERT_EQ(got.has_value(), ref.has_value());
    if (!got) continue;
    EXPECT_EQ(got->field.d(), ref->d);
    EXPECT_NEAR(got->length, ref->length, 1e-9);
  }
}

TEST(Geodesics, TraceModeMatchesOracle) {
  const std::vector<std::vector<std::uint64_t>> sets{{2, 3}, {2, 11}, {2, 31}, {3, 5, 7, 11}, {5, 13}};
  for (const auto& s : sets) {
    const auto got = exact_systole_q(QuaternionAlgebraQ(s), LengthMode::trace, 8);
    std::optional<std::int64_t> want;
    for (std::int64_t t = 3; oracle::trace_length(t) <= 8; ++t) {
      if (oracle_embeds(oracle_squarefree_part(t * t - 4), s)) {
        want = t;
        break;
      }
    }
    ASSERT_EQ(got.has_value(), want.has_value());
    if (got) {
      EXPECT_EQ(got->trace, want);
    }
  }
}

TEST(Geodesics, TableRowsKeepTheirBound) {
  // Rows whose listed sets are optimal under the standard splitting rule.
  const std::vector<std::pair<double, std::vector<std::uint64_t>>> rows{
      {0.5, {2, 11}},        {1.0, {2, 31}},          {1.25, {3, 31}},        {1.5, {2, 3, 7, 11}},
      {1.75, {3, 5, 7, 11}}, {2.0, {3, 5, 7, 11}},    {2.25, {2, 3, 7, 131}}, {2.5, {2, 3, 17, 71}}};
  for (const auto& [l, s] : rows) {
    const auto sys = exact_systole_q(QuaternionAlgebraQ(s), LengthMode::paper, l + 2);
    ASSERT_TRUE(sys);
    EXPECT_GE(sys->length, l) << "row " << l;
  }
}

TEST(Geodesics, ListedSetsThatFallShort) {
  // Q(sqrt 15) has regulator log(4 + sqrt 15) ~ 2.063 and 2 ramifies in it.
  const auto a = exact_systole_q(QuaternionAlgebraQ({2, 3, 13, 41}), LengthMode::paper, 4.25);
  ASSERT_TRUE(a);
  EXPECT_EQ(a->field.d(), 15);
  EXPECT_LT(a->length, 2.25);
  // {2,3,7,17} has factor 192, not 2240, and lets Q(sqrt 5) through.
  const auto b = exact_systole_q(QuaternionAlgebraQ({2, 3, 7, 17}), LengthMode::paper, 4.5);
  ASSERT_TRUE(b);
  EXPECT_LT(b->length, 2.5);
}
