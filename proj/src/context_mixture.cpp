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

#include "zest/context_mixture.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zest/log_prob.hpp"

namespace zest {

ContextMixture::ContextMixture(std::size_t alphabet_size, Options options)
    : alphabet_size_(alphabet_size),
      options_(options),
      log2_alphabet_(std::log2(double(alphabet_size))),
      samples_(1) {
  if (alphabet_size == 0) throw std::invalid_argument("alphabet size must be positive");
  if (!(options.alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (options.max_order == 0) throw std::invalid_argument("max_order must be positive");
  if (alphabet_size > kNone) throw std::invalid_argument("alphabet too large");
}

void ContextMixture::Reset() {
  samples_.assign(1, {});
  total_length_ = 0;
  nodes_.clear();
  links_.clear();
  root_ = kNone;
  explicit_.clear();
  stop_depth_.clear();
  dmax_ = 0;
  approximate_ = false;
}

void ContextMixture::BeginSample() {
  if (samples_.size() >= kNone) throw std::length_error("too many samples");
  samples_.emplace_back();
}

std::uint32_t ContextMixture::NewLeaf(std::uint32_t sample, std::uint32_t pos) {
  if (nodes_.size() >= kNone) throw std::length_error("context trie is full");
  Node node;
  node.total = 1;
  node.occ_sample = sample;
  node.occ_pos = pos;
  nodes_.push_back(node);
  return std::uint32_t(nodes_.size() - 1);
}

std::uint32_t ContextMixture::FindLink(std::uint32_t head, Symbol key) const {
  for (std::uint32_t l = head; l != kNone; l = links_[l].next) {
    if (links_[l].key == key) return l;
  }
  return kNone;
}

std::uint32_t ContextMixture::CountOf(const Node& node, Symbol a) const {
  if (node.deferred()) return samples_[node.occ_sample][node.occ_pos] == a ? 1 : 0;
  std::uint32_t l = FindLink(node.counts, a);
  return l == kNone ? 0 : links_[l].value;
}

// Turns a deferred leaf into an ordinary node: its single successor becomes
// an explicit count and the next-deeper context of its occurrence becomes a
// deferred child.
void ContextMixture::Materialise(std::uint32_t id, std::size_t depth) {
  if (!nodes_[id].deferred()) return;
  const std::uint32_t s = nodes_[id].occ_sample;
  const std::uint32_t q = nodes_[id].occ_pos;
  links_.push_back({samples_[s][q], 1, kNone});
  nodes_[id].counts = std::uint32_t(links_.size() - 1);
  if (q >= depth + 1) {
    std::uint32_t child = NewLeaf(s, q);
    links_.push_back({samples_[s][q - depth - 1], child, kNone});
    nodes_[id].children = std::uint32_t(links_.size() - 1);
  }
  nodes_[id].occ_sample = kNone;
}

void ContextMixture::Increment(std::uint32_t id, Symbol a) {
  Node& node = nodes_[id];
  std::uint32_t l = FindLink(node.counts, a);
  if (l == kNone) {
    links_.push_back({a, 1, node.counts});
    nodes_[id].counts = std::uint32_t(links_.size() - 1);
  } else {
    ++links_[l].value;
  }
  ++nodes_[id].total;
}

void ContextMixture::Append(Symbol a) {
  if (a >= alphabet_size_) throw std::out_of_range("symbol outside alphabet");
  const auto c = std::uint32_t(samples_.size() - 1);
  auto& x = samples_[c];
  if (x.size() >= kNone) throw std::length_error("sample too long");
  const auto p = std::uint32_t(x.size());
  x.push_back(a);
  ++total_length_;

  const double a_alpha = double(alphabet_size_) * options_.alpha;
  std::size_t stop = 0;
  if (root_ == kNone) {
    root_ = NewLeaf(c, p);
  } else {
    std::uint32_t node = root_;
    std::size_t d = 0;
    for (;;) {
      if (explicit_.size() <= d) explicit_.resize(d + 1, 0.0);
      const Node& n = nodes_[node];
      explicit_[d] += std::log2((CountOf(n, a) + options_.alpha) / (n.total + a_alpha));
      const bool room = d + 1 <= p;
      if (!room || d + 1 >= options_.max_order) {
        if (room) {
          // Capped: note whether a longer repeated context was ignored.
          const Symbol key = x[p - d - 1];
          bool deeper = n.deferred()
                            ? (n.occ_pos >= d + 1 &&
                               samples_[n.occ_sample][n.occ_pos - d - 1] == key)
                            : FindLink(n.children, key) != kNone;
          approximate_ = approximate_ || deeper;
        }
        Materialise(node, d);
        Increment(node, a);
        stop = d + 1;
        break;
      }
      Materialise(node, d);
      Increment(node, a);
      const Symbol key = x[p - d - 1];
      std::uint32_t l = FindLink(nodes_[node].children, key);
      if (l == kNone) {
        std::uint32_t child = NewLeaf(c, p);
        links_.push_back({key, child, nodes_[node].children});
        nodes_[node].children = std::uint32_t(links_.size() - 1);
        stop = d + 1;
        break;
      }
      node = links_[l].value;
      ++d;
    }
  }
  if (stop_depth_.size() <= stop) stop_depth_.resize(stop + 1, 0);
  ++stop_depth_[stop];
  dmax_ = std::max(dmax_, stop);
}

std::vector<double> ContextMixture::Log2Orders(std::size_t limit) const {
  std::vector<double> out(limit);
  std::uint64_t uniform = 0;
  for (std::size_t j = 0; j < limit; ++j) {
    if (j < stop_depth_.size()) uniform += stop_depth_[j];
    const double e = j < explicit_.size() ? explicit_[j] : 0.0;
    out[j] = e - log2_alphabet_ * double(uniform);
  }
  return out;
}

double ContextMixture::Log2Order(std::size_t m) const {
  std::uint64_t uniform = 0;
  for (std::size_t d = 0; d < stop_depth_.size() && d <= m; ++d) uniform += stop_depth_[d];
  const double e = m < explicit_.size() ? explicit_[m] : 0.0;
  return e - log2_alphabet_ * double(uniform);
}

double ContextMixture::Log2Mixture(const OmegaWeights& omega) const {
  auto terms = Log2Orders(dmax_);
  for (std::size_t j = 0; j < terms.size(); ++j) terms[j] += omega.log2_weight(j + 1);
  terms.push_back(omega.log2_tail(dmax_ + 1) - log2_alphabet_ * double(total_length_));
  return std::min(LogSumExp2(terms), 0.0);
}

std::vector<ContextMixture::ContextView> ContextMixture::NextContexts() const {
  std::vector<ContextView> views;
  if (root_ == kNone) return views;
  const auto& x = samples_.back();
  const std::size_t p = x.size();
  const std::size_t cap = options_.max_order;
  std::uint32_t node = root_;
  std::size_t d = 0;
  for (;;) {
    const Node& n = nodes_[node];
    if (n.deferred()) {
      // One occurrence; follow it for as long as it agrees with our suffix.
      const auto& occ = samples_[n.occ_sample];
      const Symbol next = occ[n.occ_pos];
      views.push_back({1, kNone, next});
      while (d + 1 <= p && d + 1 < cap && n.occ_pos >= d + 1 &&
             occ[n.occ_pos - d - 1] == x[p - d - 1]) {
        views.push_back({1, kNone, next});
        ++d;
      }
      break;
    }
    views.push_back({n.total, n.counts, 0});
    if (d + 1 > p || d + 1 >= cap) break;
    std::uint32_t l = FindLink(n.children, x[p - d - 1]);
    if (l == kNone) break;
    node = links_[l].value;
    ++d;
  }
  return views;
}

Distribution ContextMixture::NextOrder(std::size_t m) const {
  const double n_symbols = double(alphabet_size_);
  auto views = NextContexts();
  if (m >= views.size()) return Uniform(Eigen::Index(alphabet_size_));
  const auto& v = views[m];
  const double denom = v.total + n_symbols * options_.alpha;
  Distribution dist = Distribution::Constant(Eigen::Index(alphabet_size_), options_.alpha / denom);
  if (v.link == kNone) {
    dist[v.leaf_symbol] += 1.0 / denom;
  } else {
    for (std::uint32_t l = v.link; l != kNone; l = links_[l].next) {
      dist[links_[l].key] += links_[l].value / denom;
    }
  }
  return dist / dist.sum();
}

Distribution ContextMixture::NextMixture(const OmegaWeights& omega) const {
  const double n_symbols = double(alphabet_size_);
  auto views = NextContexts();
  const std::size_t reach = std::max(dmax_, views.size());
  auto log_w = Log2Orders(reach);
  for (std::size_t j = 0; j < reach; ++j) log_w[j] += omega.log2_weight(j + 1);
  const double log_tail = omega.log2_tail(reach + 1) - log2_alphabet_ * double(total_length_);
  double top = log_tail;
  for (double v : log_w) top = std::max(top, v);

  Distribution dist = Distribution::Zero(Eigen::Index(alphabet_size_));
  double per_symbol = std::exp2(log_tail - top) / n_symbols;
  for (std::size_t j = 0; j < reach; ++j) {
    const double w = std::exp2(log_w[j] - top);
    if (j >= views.size()) {
      per_symbol += w / n_symbols;
      continue;
    }
    const auto& v = views[j];
    const double scale = w / (v.total + n_symbols * options_.alpha);
    per_symbol += scale * options_.alpha;
    if (v.link == kNone) {
      dist[v.leaf_symbol] += scale;
    } else {
      for (std::uint32_t l = v.link; l != kNone; l = links_[l].next) {
        dist[links_[l].key] += scale * links_[l].value;
      }
    }
  }
  dist.array() += per_symbol;
  return dist / dist.sum();
}

}  // namespace zest
