// Copyright 2026 The Zest Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Incremental evaluation of the add-alpha Markov measures of every order at
// once, over one or more diamond-separated samples.
//
// Contexts live in a suffix trie walked backwards from the current position.
// A node seen exactly once stays a deferred leaf that remembers where its one
// occurrence was, so random data costs O(t log t) and only genuinely repeated
// contexts are materialised. If the walk for position p stops at depth D, the
// context of every order >= D is new (or longer than the sample so far) and
// each of those orders assigns the symbol probability 1/|A|; those factors
// are kept as a histogram rather than added to every order.

#ifndef ZEST_CONTEXT_MIXTURE_HPP_
#define ZEST_CONTEXT_MIXTURE_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "zest/alphabet.hpp"
#include "zest/distribution.hpp"
#include "zest/omega.hpp"

namespace zest {

class ContextMixture {
 public:
  static constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  struct Options {
    // Pseudo-count: 1/2 gives the Krichevsky measures, 1 the Laplace ones.
    double alpha = 0.5;
    // Orders below this are tracked exactly; higher orders are treated as if
    // every context were new. kUnbounded keeps the mixture exact.
    std::size_t max_order = kUnbounded;
  };

  explicit ContextMixture(std::size_t alphabet_size) : ContextMixture(alphabet_size, Options{}) {}
  ContextMixture(std::size_t alphabet_size, Options options);

  // Starts a new diamond-separated sample. The first sample is implicit.
  void BeginSample();
  void Append(Symbol a);
  void AppendAll(std::span<const Symbol> symbols) {
    for (Symbol a : symbols) Append(a);
  }
  void Reset();

  std::size_t alphabet_size() const { return alphabet_size_; }
  double alpha() const { return options_.alpha; }
  std::size_t total_length() const { return total_length_; }
  std::size_t current_sample_length() const { return samples_.back().size(); }
  // Orders >= this value all assign the same probability to the data so far.
  std::size_t distinct_orders() const { return dmax_; }
  // True when max_order hid a repeated context of higher order.
  bool approximate() const { return approximate_; }
  std::size_t node_count() const { return nodes_.size(); }

  // log2 of the order-m measure of everything appended so far.
  double Log2Order(std::size_t m) const;
  // log2 sum_{i>=0} w_{i+1} * (order-i measure), with the infinite tail summed
  // in closed form.
  double Log2Mixture(const OmegaWeights& omega) const;

  // Next-symbol conditional, context taken from the current sample.
  Distribution NextOrder(std::size_t m) const;
  Distribution NextMixture(const OmegaWeights& omega) const;

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  struct Node {
    std::uint32_t total = 0;
    std::uint32_t counts = kNone;    // links keyed by next symbol
    std::uint32_t children = kNone;  // links keyed by preceding symbol
    std::uint32_t occ_sample = kNone;  // deferred leaf: its single occurrence
    std::uint32_t occ_pos = 0;
    bool deferred() const { return occ_sample != kNone; }
  };
  struct Link {
    Symbol key;
    std::uint32_t value;
    std::uint32_t next;
  };
  // Counts seen at one context along the current path; `link` is kNone for a
  // deferred leaf whose single successor is `leaf_symbol`.
  struct ContextView {
    std::uint32_t total;
    std::uint32_t link;
    Symbol leaf_symbol;
  };

  std::uint32_t NewLeaf(std::uint32_t sample, std::uint32_t pos);
  std::uint32_t FindLink(std::uint32_t head, Symbol key) const;
  std::uint32_t CountOf(const Node& node, Symbol a) const;
  void Materialise(std::uint32_t node, std::size_t depth);
  void Increment(std::uint32_t node, Symbol a);
  // Contexts of the next position, ordered by depth; stops at the first new one.
  std::vector<ContextView> NextContexts() const;
  // log2 of every order measure below `limit`.
  std::vector<double> Log2Orders(std::size_t limit) const;

  std::size_t alphabet_size_;
  Options options_;
  double log2_alphabet_;
  std::vector<std::vector<Symbol>> samples_;
  std::size_t total_length_ = 0;
  std::vector<Node> nodes_;
  std::vector<Link> links_;
  std::uint32_t root_ = kNone;
  // explicit_[j]: log2 of the factors of order j that used real counts.
  std::vector<double> explicit_;
  // stop_depth_[d]: positions whose walk stopped at depth d.
  std::vector<std::uint64_t> stop_depth_;
  std::size_t dmax_ = 0;
  bool approximate_ = false;
};

}  // namespace zest

#endif  // ZEST_CONTEXT_MIXTURE_HPP_
