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

#include "setcard/graph.hpp"

#include <algorithm>
#include <string>

namespace setcard {

std::size_t CardGraph::position(SetId v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw VertexMissing("set term #" + std::to_string(v) + " is not a vertex");
  return it->second;
}

bool CardGraph::add_vertex(SetId v) {
  if (contains(v)) return false;
  index_.emplace(v, vertices_.size());
  vertices_.push_back(v);
  children_.emplace_back();
  return true;
}

bool CardGraph::add_edge(SetId parent, SetId child) {
  const std::size_t p = position(parent);
  position(child);
  if (!edge_set_.insert(key(parent, child)).second) return false;
  edges_.emplace_back(parent, child);
  children_[p].push_back(child);
  return true;
}

const std::vector<SetId>& CardGraph::children(SetId v) const { return children_[position(v)]; }

std::vector<SetId> CardGraph::leaves(SetId v) const {
  std::vector<char> seen(vertices_.size(), 0);
  std::vector<SetId> stack{v};
  std::vector<std::size_t> found;
  seen[position(v)] = 1;
  while (!stack.empty()) {
    const SetId u = stack.back();
    stack.pop_back();
    const auto& kids = children(u);
    if (kids.empty()) found.push_back(position(u));
    for (SetId k : kids) {
      const std::size_t pk = position(k);
      if (!seen[pk]) {
        seen[pk] = 1;
        stack.push_back(k);
      }
    }
  }
  std::sort(found.begin(), found.end());
  std::vector<SetId> out;
  out.reserve(found.size());
  for (std::size_t p : found) out.push_back(vertices_[p]);
  return out;
}

std::vector<SetId> CardGraph::leaves() const {
  std::vector<SetId> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (children_[i].empty()) out.push_back(vertices_[i]);
  }
  return out;
}

bool CardGraph::acyclic() const {
  // Kahn's algorithm over in-degrees.
  std::vector<std::size_t> indeg(vertices_.size(), 0);
  for (const auto& [p, c] : edges_) ++indeg[position(c)];
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < indeg.size(); ++i) {
    if (indeg[i] == 0) ready.push_back(i);
  }
  std::size_t done = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.back();
    ready.pop_back();
    ++done;
    for (SetId c : children_[i]) {
      if (--indeg[position(c)] == 0) ready.push_back(position(c));
    }
  }
  return done == vertices_.size();
}

void CardGraph::rollback(Mark mark) {
  while (edges_.size() > mark.edges) {
    const auto [p, c] = edges_.back();
    edges_.pop_back();
    edge_set_.erase(key(p, c));
    children_[position(p)].pop_back();
  }
  while (vertices_.size() > mark.vertices) {
    index_.erase(vertices_.back());
    vertices_.pop_back();
    children_.pop_back();
  }
}

}  // namespace setcard
