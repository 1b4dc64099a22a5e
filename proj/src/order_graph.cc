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

#include "scriptforge/order_graph.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

namespace scriptforge {

OrderGraph::OrderGraph(size_t node_count, const std::vector<Edge> &edges)
    : adjacency_(node_count) {
  for (const auto &[from, to] : edges) adjacency_[from].push_back(to);
  for (auto &next : adjacency_) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }
}

std::optional<std::vector<size_t>> OrderGraph::FindPath(size_t from,
                                                        size_t to) const {
  const size_t kNone = size();
  std::vector<size_t> parent(size(), kNone);
  std::vector<bool> seen(size(), false);
  std::deque<size_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    const size_t u = queue.front();
    queue.pop_front();
    for (size_t v : adjacency_[u]) {
      if (v == to) {
        std::vector<size_t> path{to};
        for (size_t w = u; w != kNone; w = parent[w]) path.push_back(w);
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (!seen[v]) {
        seen[v] = true;
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<bool>> OrderGraph::Closure() const {
  std::vector<std::vector<bool>> reach(size(), std::vector<bool>(size(), false));
  for (size_t s = 0; s < size(); ++s) {
    std::vector<size_t> stack(adjacency_[s].begin(), adjacency_[s].end());
    while (!stack.empty()) {
      const size_t u = stack.back();
      stack.pop_back();
      if (reach[s][u]) continue;
      reach[s][u] = true;
      for (size_t v : adjacency_[u]) {
        if (!reach[s][v]) stack.push_back(v);
      }
    }
  }
  return reach;
}

std::optional<std::vector<size_t>> OrderGraph::TopologicalOrder() const {
  std::vector<size_t> indegree(size(), 0);
  for (const auto &next : adjacency_) {
    for (size_t v : next) ++indegree[v];
  }
  std::priority_queue<size_t, std::vector<size_t>, std::greater<>> ready;
  for (size_t u = 0; u < size(); ++u) {
    if (indegree[u] == 0) ready.push(u);
  }
  std::vector<size_t> order;
  while (!ready.empty()) {
    const size_t u = ready.top();
    ready.pop();
    order.push_back(u);
    for (size_t v : adjacency_[u]) {
      if (--indegree[v] == 0) ready.push(v);
    }
  }
  if (order.size() != size()) return std::nullopt;
  return order;
}

std::optional<std::vector<size_t>> OrderGraph::FindCycle() const {
  for (size_t u = 0; u < size(); ++u) {
    for (size_t v : adjacency_[u]) {
      if (auto path = FindPath(v, u)) {
        path->push_back(v);
        return path;
      }
    }
  }
  return std::nullopt;
}

std::vector<Edge> OrderGraph::TransitiveReduction() const {
  const auto reach = Closure();
  std::vector<Edge> reduced;
  for (size_t u = 0; u < size(); ++u) {
    for (size_t v = 0; v < size(); ++v) {
      if (!reach[u][v]) continue;
      bool implied = false;
      for (size_t w = 0; w < size() && !implied; ++w) {
        implied = w != u && w != v && reach[u][w] && reach[w][v];
      }
      if (!implied) reduced.emplace_back(u, v);
    }
  }
  return reduced;
}

std::vector<Edge> OrderGraph::UnorderedPairs() const {
  const auto reach = Closure();
  std::vector<Edge> pairs;
  for (size_t a = 0; a < size(); ++a) {
    for (size_t b = a + 1; b < size(); ++b) {
      if (!reach[a][b] && !reach[b][a]) pairs.emplace_back(a, b);
    }
  }
  return pairs;
}

}  // namespace scriptforge
