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

#include "setcard/eqengine.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace setcard {

void EqEngine::ensure(std::uint32_t n) {
  while (parent_.size() < n) {
    parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
    size_.push_back(1);
    diseq_.emplace_back();
  }
}

std::uint32_t EqEngine::root(std::uint32_t x) const {
  while (parent_[x] != x) x = parent_[x];
  return x;
}

void EqEngine::set_parent(std::uint32_t i, std::uint32_t p) {
  trail_.push_back({Slot::Parent, i, parent_[i]});
  parent_[i] = p;
}

std::uint32_t EqEngine::find(std::uint32_t x) {
  const std::uint32_t r = root(x);
  while (parent_[x] != r && x != r) {
    const std::uint32_t next = parent_[x];
    set_parent(x, r);
    x = next;
  }
  return r;
}

bool EqEngine::in_mstar_neq(std::uint32_t x, std::uint32_t y) const {
  const std::uint32_t rx = root(x);
  const std::uint32_t ry = root(y);
  const auto& lx = diseq_[rx];
  const auto& ly = diseq_[ry];
  const auto& scan = lx.size() <= ly.size() ? lx : ly;
  const std::uint32_t other = lx.size() <= ly.size() ? ry : rx;
  return std::any_of(scan.begin(), scan.end(), [&](std::uint32_t d) { return root(d) == other; });
}

EqEngine::Result EqEngine::assert_eq(std::uint32_t x, std::uint32_t y) {
  std::uint32_t rx = find(x);
  std::uint32_t ry = find(y);
  if (rx == ry) return inconsistent_ ? Result::Inconsistent : Result::Consistent;
  if (size_[rx] > size_[ry]) std::swap(rx, ry);
  set_parent(rx, ry);
  trail_.push_back({Slot::Size, ry, size_[ry]});
  size_[ry] += size_[rx];
  auto& into = diseq_[ry];
  trail_.push_back({Slot::DiseqLen, ry, static_cast<std::uint32_t>(into.size())});
  into.insert(into.end(), diseq_[rx].begin(), diseq_[rx].end());
  if (!inconsistent_) {
    for (std::uint32_t d : into) {
      if (root(d) == ry) {
        trail_.push_back({Slot::Inconsistent, 0, 0});
        inconsistent_ = true;
        break;
      }
    }
  }
  return inconsistent_ ? Result::Inconsistent : Result::Consistent;
}

EqEngine::Result EqEngine::assert_neq(std::uint32_t x, std::uint32_t y) {
  const std::uint32_t rx = find(x);
  const std::uint32_t ry = find(y);
  if (!in_mstar_neq(x, y)) {
    trail_.push_back({Slot::DiseqLen, rx, static_cast<std::uint32_t>(diseq_[rx].size())});
    diseq_[rx].push_back(y);
    if (ry != rx) {
      trail_.push_back({Slot::DiseqLen, ry, static_cast<std::uint32_t>(diseq_[ry].size())});
      diseq_[ry].push_back(x);
    }
  }
  if (rx == ry && !inconsistent_) {
    trail_.push_back({Slot::Inconsistent, 0, 0});
    inconsistent_ = true;
  }
  return inconsistent_ ? Result::Inconsistent : Result::Consistent;
}

std::vector<std::vector<std::uint32_t>> EqEngine::classes() const {
  if (inconsistent_) throw InconsistentState("element constraints are inconsistent");
  std::map<std::uint32_t, std::vector<std::uint32_t>> by_root;
  for (std::uint32_t i = 0; i < parent_.size(); ++i) by_root[root(i)].push_back(i);
  std::vector<std::vector<std::uint32_t>> out;
  out.reserve(by_root.size());
  for (auto& [r, members] : by_root) out.push_back(std::move(members));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> EqEngine::disequal_roots() const {
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < parent_.size(); ++i) {
    if (parent_[i] != i) continue;
    for (std::uint32_t d : diseq_[i]) {
      const std::uint32_t rd = root(d);
      pairs.insert({std::min(i, rd), std::max(i, rd)});
    }
  }
  return {pairs.begin(), pairs.end()};
}

void EqEngine::rollback(Mark mark) {
  while (trail_.size() > mark.trail) {
    const Undo u = trail_.back();
    trail_.pop_back();
    switch (u.slot) {
      case Slot::Parent: parent_[u.index] = u.old; break;
      case Slot::Size: size_[u.index] = u.old; break;
      case Slot::DiseqLen: diseq_[u.index].resize(u.old); break;
      case Slot::Inconsistent: inconsistent_ = false; break;
    }
  }
}

}  // namespace setcard
