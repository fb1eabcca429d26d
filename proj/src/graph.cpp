// Copyright 2026 The ginv Authors
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

#include "ginv/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ginv/error.hpp"

namespace ginv {
namespace {

constexpr std::size_t kMaxBruteForceNodes = 8;

std::vector<std::size_t> identity_perm(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

}  // namespace

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n) {
  if (n == 0) throw DomainError("graph must have at least one node");
  for (auto& [a, b] : edges) {
    if (a >= n || b >= n) throw DomainError("graph edge index out of range");
    if (a == b) throw DomainError("graph self-loops are not allowed");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);
}

Graph Graph::empty(std::size_t n) { return Graph(n, {}); }

Graph Graph::path(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, std::move(e));
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) throw DomainError("cycle graph needs at least 3 nodes");
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, std::move(e));
}

Graph Graph::star(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, std::move(e));
}

Graph Graph::complete(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return Graph(n, std::move(e));
}

Graph Graph::parse(const std::string& text) {
  auto sized = [&](const std::string& prefix) -> std::size_t {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      throw DomainError("malformed graph name '" + text + "'");
    }
    return std::stoul(digits);
  };
  if (text == "triangle") return complete(3);
  for (const char* name : {"path", "cycle", "star", "complete", "empty"}) {
    const std::string prefix(name);
    if (text.rfind(prefix, 0) == 0 && text.find(':') == std::string::npos) {
      const std::size_t n = sized(prefix);
      if (prefix == "path") return path(n);
      if (prefix == "cycle") return cycle(n);
      if (prefix == "star") return star(n);
      if (prefix == "complete") return complete(n);
      return empty(n);
    }
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw DomainError("unrecognized graph '" + text + "'");
  const std::size_t n = std::stoul(text.substr(0, colon));
  std::vector<Edge> edges;
  std::stringstream ss(text.substr(colon + 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw DomainError("malformed edge '" + item + "'");
    edges.emplace_back(std::stoul(item.substr(0, dash)), std::stoul(item.substr(dash + 1)));
  }
  return Graph(n, std::move(edges));
}

bool Graph::has_edge(std::size_t a, std::size_t b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

Graph Graph::relabeled(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw DomainError("relabeling size mismatch");
  std::vector<Edge> e;
  e.reserve(edges_.size());
  for (const auto& [a, b] : edges_) e.emplace_back(perm[a], perm[b]);
  return Graph(n_, std::move(e));
}

std::vector<std::vector<std::size_t>> Graph::automorphisms() const {
  if (n_ > kMaxBruteForceNodes) throw DomainError("automorphism search limited to 8 nodes");
  std::vector<std::vector<std::size_t>> out;
  auto p = identity_perm(n_);
  do {
    if (relabeled(p) == *this) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::string Graph::to_string() const {
  std::string s = std::to_string(n_) + ":";
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(edges_[i].first) + "-" + std::to_string(edges_[i].second);
  }
  return s;
}

bool is_isomorphic(const Graph& g0, const Graph& g1) {
  if (g0.nodes() > kMaxBruteForceNodes || g1.nodes() > kMaxBruteForceNodes) {
    throw DomainError("is_isomorphic: brute force limited to 8 nodes");
  }
  if (g0.nodes() != g1.nodes() || g0.edges().size() != g1.edges().size()) return false;
  auto p = identity_perm(g0.nodes());
  do {
    if (g0.relabeled(p) == g1) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

}  // namespace ginv
