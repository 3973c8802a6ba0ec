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
#include <vector>

namespace setcard {

class InconsistentState : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Closure over element equalities and disequalities with undo support.
/// Variables are dense indices registered through `ensure`.
class EqEngine {
 public:
  enum class Result { Consistent, Inconsistent };

  struct Mark {
    std::size_t trail = 0;
  };

  /// Makes indices [0, n) valid.
  void ensure(std::uint32_t n);
  std::uint32_t size() const { return static_cast<std::uint32_t>(parent_.size()); }

  Result assert_eq(std::uint32_t x, std::uint32_t y);
  Result assert_neq(std::uint32_t x, std::uint32_t y);

  bool in_mstar_eq(std::uint32_t x, std::uint32_t y) const { return root(x) == root(y); }
  bool in_mstar_neq(std::uint32_t x, std::uint32_t y) const;
  bool inconsistent() const { return inconsistent_; }

  /// Representative without path compression.
  std::uint32_t root(std::uint32_t x) const;
  /// Representative with (trailed) path compression.
  std::uint32_t find(std::uint32_t x);

  /// Partition of all registered indices, each class sorted, classes ordered
  /// by their smallest member.
  std::vector<std::vector<std::uint32_t>> classes() const;

  /// Pairs of class representatives (r1 < r2) known to be distinct.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> disequal_roots() const;

  Mark snapshot() const { return Mark{trail_.size()}; }
  void rollback(Mark mark);

 private:
  enum class Slot : std::uint8_t { Parent, Size, DiseqLen, Inconsistent };
  struct Undo {
    Slot slot;
    std::uint32_t index;
    std::uint32_t old;
  };

  void set_parent(std::uint32_t i, std::uint32_t p);

  std::vector<std::uint32_t> parent_;
  std::vector<std::uint32_t> size_;
  // Disequality partners, stored on representatives; entries are arbitrary
  // members and are resolved through root() on lookup.
  std::vector<std::vector<std::uint32_t>> diseq_;
  bool inconsistent_ = false;
  std::vector<Undo> trail_;
};

}  // namespace setcard
