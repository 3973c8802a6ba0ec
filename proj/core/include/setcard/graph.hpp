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

#pragma once

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace setcard {

using SetId = std::uint32_t;
using ElemId = std::uint32_t;

class VertexMissing : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Directed graph over interned set terms. Vertices and edges are kept in
/// insertion order and can only be removed by rolling back to a mark.
class CardGraph {
 public:
  struct Mark {
    std::size_t vertices = 0;
    std::size_t edges = 0;
  };

  bool contains(SetId v) const { return index_.count(v) != 0; }
  /// Position of `v` in insertion order.
  std::size_t position(SetId v) const;

  /// Returns false if the vertex already exists.
  bool add_vertex(SetId v);
  /// Both endpoints must be vertices. Returns false if the edge exists.
  bool add_edge(SetId parent, SetId child);

  const std::vector<SetId>& vertices() const { return vertices_; }
  const std::vector<std::pair<SetId, SetId>>& edges() const { return edges_; }
  const std::vector<SetId>& children(SetId v) const;
  bool is_leaf(SetId v) const { return children(v).empty(); }

  /// Childless vertices reachable from `v` (including `v`), in insertion order.
  std::vector<SetId> leaves(SetId v) const;
  /// All childless vertices, in insertion order.
  std::vector<SetId> leaves() const;
  bool acyclic() const;

  Mark mark() const { return {vertices_.size(), edges_.size()}; }
  void rollback(Mark mark);

 private:
  static std::uint64_t key(SetId a, SetId b) { return (std::uint64_t{a} << 32) | b; }

  std::vector<SetId> vertices_;
  std::unordered_map<SetId, std::size_t> index_;
  std::vector<std::vector<SetId>> children_;
  std::vector<std::pair<SetId, SetId>> edges_;
  std::unordered_set<std::uint64_t> edge_set_;
};

}  // namespace setcard
