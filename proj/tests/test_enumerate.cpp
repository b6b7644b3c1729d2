#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "sysarith/enumerate.hpp"

using namespace sysarith;

namespace {

using Sets = std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>>;

Sets drain(std::uint64_t bound, std::size_t card) {
  Sets out;
  auto stream = enumerate_prime_sets(bound, card);
  while (auto item = stream->next()) out.push_back({item->factor, item->primes});
  return out;
}

} // namespace

TEST(Enumerate, SmallExamples) {
  const Sets want{{2, {2, 3}}, {4, {2, 5}}, {6, {2, 7}}, {8, {3, 5}}, {10, {2, 11}}};
  EXPECT_EQ(drain(11, 2), want);
  EXPECT_TRUE(drain(2, 2).empty());
  const auto four = drain(49, 4);
  ASSERT_FALSE(four.empty());
  EXPECT_EQ(four.front().second, (std::vector<std::uint64_t>{2, 3, 5, 7}));
  EXPECT_EQ(four.front().first, 48U);
}

TEST(Enumerate, MatchesNaiveFilter) {
  for (std::uint64_t bound : {1ULL, 2ULL, 3ULL, 50ULL, 481ULL, 2000ULL, 10000ULL}) {
    for (std::size_t card = 1; card <= 4; ++card) {
      const auto got = drain(bound, card);
      const auto ref = oracle::naive_prime_sets(bound, card);
      // Same sets, and factors never decrease.
      std::set<std::vector<std::uint64_t>> a;
      std::set<std::vector<std::uint64_t>> b;
      for (std::size_t i = 0; i < got.size(); ++i) {
        a.insert(got[i].second);
        if (i > 0) {
          ASSERT_LE(got[i - 1].first, got[i].first);
        }
        std::uint64_t f = 1;
        for (auto p : got[i].second) f *= p - 1;
        ASSERT_EQ(f, got[i].first);
      }
      for (const auto& r : ref) b.insert(r.second);
      ASSERT_EQ(a.size(), got.size()) << "duplicate emitted";
      ASSERT_EQ(a, b) << "bound " << bound << " card " << card;
      // Ties come out in lexicographic order.
      ASSERT_EQ(got, ref);
    }
  }
}

TEST(Enumerate, PrimeLimit) {
  EXPECT_EQ(PrimeSetStream::prime_limit(11, 2), 11U);   // (q - 1) * 1 < 11
  EXPECT_EQ(PrimeSetStream::prime_limit(49, 4), 7U);    // (q - 1) * 1 * 2 * 4 < 49
  EXPECT_EQ(PrimeSetStream::prime_limit(1, 2), 1U);
}

TEST(Enumerate, MergedStreamOrdersAcrossCardinalities) {
  std::vector<std::uint64_t> weights;
  for (auto p : primes_up_to(5001)) weights.push_back(p - 1);
  MergedSubsetEnumerator merged(weights, {2, 4}, 5000);
  std::uint64_t last = 0;
  std::size_t count = 0;
  std::set<std::vector<std::uint32_t>> seen;
  while (auto s = merged.next()) {
    ASSERT_GE(s->product, last);
    last = s->product;
    ASSERT_TRUE(seen.insert(s->indices).second);
    ++count;
  }
  EXPECT_EQ(count, oracle::naive_prime_sets(5000, 2).size() + oracle::naive_prime_sets(5000, 4).size());
  EXPECT_GT(merged.nodes_expanded(), count);
}

TEST(Enumerate, Limits) {
  std::vector<std::uint64_t> w{1, 2, 4};
  EXPECT_THROW(OrderedSubsetEnumerator(w, max_subset_size + 1, 100), input_error);
  OrderedSubsetEnumerator too_many(w, 4, 1000);
  EXPECT_FALSE(too_many.next().has_value());
  OrderedSubsetEnumerator zero(w, 0, 2);
  auto empty = zero.next();
  ASSERT_TRUE(empty.has_value());
  EXPECT_TRUE(empty->indices.empty());
  EXPECT_EQ(empty->product, 1U);
  EXPECT_FALSE(zero.next().has_value());
}

TEST(Enumerate, PeekKeyIsALowerBound) {
  std::vector<std::uint64_t> weights;
  for (auto p : primes_up_to(100)) weights.push_back(p - 1);
  OrderedSubsetEnumerator e(weights, 3, 3000);
  while (true) {
    const auto key = e.peek_key();
    auto s = e.next();
    if (!s) break;
    ASSERT_GE(s->product, key);
  }
  EXPECT_EQ(e.peek_key(), std::numeric_limits<std::uint64_t>::max());
}
