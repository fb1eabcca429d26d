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

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ginv {

/// Simple undirected graph on nodes 0..n-1. Edges are stored as sorted pairs
/// (smaller index first), deduplicated and in lexicographic order.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  Graph() = default;
  /// Throws DomainError on self-loops or out-of-range indices.
  Graph(std::size_t n, std::vector<Edge> edges);

  static Graph empty(std::size_t n);
  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph star(std::size_t n);
  static Graph complete(std::size_t n);
  /// Parses a named graph ("triangle", "path4", "cycle4", "star4", "complete3",
  /// "empty2") or an edge list "0-1,1-2" prefixed with the node count: "3:0-1,1-2".
  static Graph parse(const std::string& text);

  std::size_t nodes() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(std::size_t a, std::size_t b) const;

  /// Node i becomes node perm[i].
  Graph relabeled(std::span<const std::size_t> perm) const;

  /// Permutations that map the edge set onto itself (n <= 8).
  std::vector<std::vector<std::size_t>> automorphisms() const;

  std::string to_string() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
};

/// Exhaustive search over all n! relabelings. Requires n <= 8.
bool is_isomorphic(const Graph& g0, const Graph& g1);

}  // namespace ginv
