// Copyright 2026 The Script Forge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense-index digraph helpers used for the temporal order of a script.
// Nodes are 0..n-1; edges are (from, to) pairs.

#ifndef SCRIPTFORGE_ORDER_GRAPH_H_
#define SCRIPTFORGE_ORDER_GRAPH_H_

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace scriptforge {

using Edge = std::pair<size_t, size_t>;

class OrderGraph {
 public:
  OrderGraph(size_t node_count, const std::vector<Edge> &edges);

  size_t size() const { return adjacency_.size(); }

  // Shortest path from -> ... -> to following edges, if any.
  std::optional<std::vector<size_t>> FindPath(size_t from, size_t to) const;

  // reach[u][v] is true iff a non-empty path u -> v exists.
  std::vector<std::vector<bool>> Closure() const;

  // Kahn's algorithm with smallest-index-first; nullopt on a cycle.
  std::optional<std::vector<size_t>> TopologicalOrder() const;

  // Any directed cycle as a closed node sequence (first == last).
  std::optional<std::vector<size_t>> FindCycle() const;

  // Minimal edge set with the same reachability. Requires an acyclic graph.
  // Sorted by (from, to).
  std::vector<Edge> TransitiveReduction() const;

  // Pairs (a, b), a < b, with no path in either direction.
  std::vector<Edge> UnorderedPairs() const;

 private:
  std::vector<std::vector<size_t>> adjacency_;
};

}  // namespace scriptforge

#endif  // SCRIPTFORGE_ORDER_GRAPH_H_
