#pragma once

/**
 * @file enumerate.hpp
 * @brief Best-first enumeration of fixed-size subsets of an ascending weight
 * list in nondecreasing order of the product of their weights.
 *
 * A frontier node is a sorted index prefix plus the smallest index allowed
 * for its next element. Its key is the least product of any completion,
 * i.e. the prefix product times the next (c - len) consecutive weights.
 * Popping a node pushes the child that takes `next` and the sibling that
 * skips it; both keys are >= the parent's, so complete subsets leave the
 * priority queue in (product, lexicographic index) order without duplicates.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <vector>

#include "arith.hpp"

namespace sysarith {

inline constexpr std::size_t max_subset_size = 16;

struct WeightedSubset {
  std::vector<std::uint32_t> indices;  // ascending
  std::uint64_t product = 1;
};

class OrderedSubsetEnumerator {
public:
  /// weights ascending and >= 1; emits subsets of exactly `cardinality`
  /// elements whose product is < bound.
  OrderedSubsetEnumerator(const std::vector<std::uint64_t>& weights, std::size_t cardinality, std::uint64_t bound)
      : weights_(&weights), cardinality_(cardinality), bound_(bound) {
    if (cardinality > max_subset_size) throw input_error("OrderedSubsetEnumerator: cardinality too large");
    Node root;
    root.len = 0;
    root.next = 0;
    root.prefix_product = 1;
    push(root);
  }

  std::optional<WeightedSubset> next() {
    while (!frontier_.empty()) {
      Node node = frontier_.top();
      frontier_.pop();
      ++expanded_;
      if (node.len == cardinality_) {
        WeightedSubset out;
        out.indices.assign(node.idx.begin(), node.idx.begin() + node.len);
        out.product = node.prefix_product;
        return out;
      }
      Node child = node;
      child.idx[child.len] = node.next;
      child.prefix_product = saturating_mul(node.prefix_product, (*weights_)[node.next]);
      ++child.len;
      ++child.next;
      push(child);
      Node sibling = node;
      ++sibling.next;
      push(sibling);
    }
    return std::nullopt;
  }

  /// Least product any future subset can have (UINT64_MAX when exhausted).
  [[nodiscard]] std::uint64_t peek_key() const {
    return frontier_.empty() ? std::numeric_limits<std::uint64_t>::max() : frontier_.top().key;
  }

  [[nodiscard]] std::uint64_t nodes_expanded() const { return expanded_; }
  [[nodiscard]] std::size_t cardinality() const { return cardinality_; }

private:
  struct Node {
    std::uint64_t key = 0;
    std::uint64_t prefix_product = 1;
    std::uint32_t next = 0;
    std::uint8_t len = 0;
    std::array<std::uint32_t, max_subset_size> idx{};
  };

  struct Later {
    bool operator()(const Node& a, const Node& b) const {
      if (a.key != b.key) return a.key > b.key;
      // Lexicographic order of the least completion.
      const std::size_t n = std::max<std::size_t>(a.len, b.len) + 1;
      for (std::size_t i = 0; i < n; ++i) {
        const auto ai = i < a.len ? a.idx[i] : a.next + static_cast<std::uint32_t>(i - a.len);
        const auto bi = i < b.len ? b.idx[i] : b.next + static_cast<std::uint32_t>(i - b.len);
        if (ai != bi) return ai > bi;
      }
      return a.len < b.len;
    }
  };

  void push(Node node) {
    const auto& w = *weights_;
    const std::size_t missing = cardinality_ - node.len;
    if (node.next + missing > w.size()) return;
    std::uint64_t key = node.prefix_product;
    for (std::size_t j = 0; j < missing && key < bound_; ++j) key = saturating_mul(key, w[node.next + j]);
    if (key >= bound_) return;
    node.key = key;
    frontier_.push(node);
  }

  const std::vector<std::uint64_t>* weights_;
  std::size_t cardinality_;
  std::uint64_t bound_;
  std::uint64_t expanded_ = 0;
  std::priority_queue<Node, std::vector<Node>, Later> frontier_;
};

/// Merges enumerators for several cardinalities into one stream ordered by
/// (product, cardinality, lexicographic indices).
class MergedSubsetEnumerator {
public:
  MergedSubsetEnumerator(const std::vector<std::uint64_t>& weights, const std::vector<std::size_t>& cardinalities,
                         std::uint64_t bound) {
    for (auto c : cardinalities) streams_.emplace_back(weights, c, bound);
    heads_.resize(streams_.size());
    for (std::size_t i = 0; i < streams_.size(); ++i) heads_[i] = streams_[i].next();
  }

  std::optional<WeightedSubset> next() {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < heads_.size(); ++i) {
      if (!heads_[i]) continue;
      if (!best || heads_[i]->product < heads_[*best]->product) best = i;
    }
    if (!best) return std::nullopt;
    auto out = std::move(*heads_[*best]);
    heads_[*best] = streams_[*best].next();
    return out;
  }

  [[nodiscard]] std::uint64_t nodes_expanded() const {
    std::uint64_t n = 0;
    for (const auto& s : streams_) n += s.nodes_expanded();
    return n;
  }

private:
  std::vector<OrderedSubsetEnumerator> streams_;
  std::vector<std::optional<WeightedSubset>> heads_;
};

/// Stream of prime sets of a given cardinality with prod (p - 1) < bound,
/// in nondecreasing order of that product.
class PrimeSetStream {
public:
  PrimeSetStream(std::uint64_t bound, std::size_t cardinality)
      : primes_(primes_up_to(prime_limit(bound, cardinality))), weights_(make_weights(primes_)),
        inner_(weights_, cardinality, bound) {}

  PrimeSetStream(const PrimeSetStream&) = delete;
  PrimeSetStream& operator=(const PrimeSetStream&) = delete;

  struct Item {
    std::vector<std::uint64_t> primes;
    std::uint64_t factor = 1;
  };

  std::optional<Item> next() {
    auto s = inner_.next();
    if (!s) return std::nullopt;
    Item item;
    item.factor = s->product;
    for (auto i : s->indices) item.primes.push_back(primes_[i]);
    return item;
  }

  /// Largest prime that can occur in a set with prod (p - 1) < bound.
  static std::uint64_t prime_limit(std::uint64_t bound, std::size_t cardinality) {
    if (cardinality == 0 || bound <= 1) return 1;
    const auto small = first_primes(cardinality - 1);
    std::uint64_t rest = 1;
    for (auto p : small) rest = saturating_mul(rest, p - 1);
    // (q - 1) * rest < bound  =>  q <= (bound - 1) / rest + 1
    return (bound - 1) / rest + 1;
  }

private:
  static std::vector<std::uint64_t> make_weights(const std::vector<std::uint64_t>& primes) {
    std::vector<std::uint64_t> w;
    w.reserve(primes.size());
    for (auto p : primes) w.push_back(p - 1);
    return w;
  }

  std::vector<std::uint64_t> primes_;
  std::vector<std::uint64_t> weights_;
  OrderedSubsetEnumerator inner_;
};

inline std::unique_ptr<PrimeSetStream> enumerate_prime_sets(std::uint64_t factor_bound, std::size_t cardinality) {
  return std::make_unique<PrimeSetStream>(factor_bound, cardinality);
}

} // namespace sysarith
