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

#include "setcard/lia.hpp"

#include <gmpxx.h>

#include <numeric>

namespace setcard {

LinearSystem::LinearSystem(std::vector<CardAtom> atoms) {
  for (auto& a : atoms) add(std::move(a));
}

void LinearSystem::add(CardAtom atom) {
  for (const auto& [c, v] : atom.lhs.terms()) add_variable(v);
  atoms_.push_back(std::move(atom));
}

void LinearSystem::add_variable(const Term& var) {
  if (index_.count(var)) return;
  index_.emplace(var, vars_.size());
  vars_.push_back(var);
}

std::optional<std::size_t> LinearSystem::index_of(const Term& var) const {
  auto it = index_.find(var);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool holds(const CardAtom& atom, const std::map<Term, std::int64_t>& model) {
  std::int64_t v = atom.lhs.constant();
  for (const auto& [c, var] : atom.lhs.terms()) {
    auto it = model.find(var);
    v += c * (it == model.end() ? 0 : it->second);
  }
  switch (atom.rel) {
    case Relation::Eq: return v == 0;
    case Relation::Neq: return v != 0;
    case Relation::Lt: return v < 0;
    case Relation::Ge: return v >= 0;
  }
  return false;
}

bool syntactic_geq(const std::vector<CardAtom>& atoms, const Term& card_var, std::int64_t n) {
  for (const auto& a : atoms) {
    if (a.rel != Relation::Ge || a.lhs.terms().size() != 1) continue;
    const auto& [c, v] = a.lhs.terms().front();
    if (c == 1 && v == card_var && -a.lhs.constant() >= n) return true;
  }
  return false;
}

namespace {

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

struct Bound {
  bool set = false;
  mpq_class value;
};

// General simplex over originals x_0..x_{n-1} and one slack per atom row.
class Simplex {
 public:
  Simplex(std::size_t originals, const std::vector<std::vector<std::int64_t>>& rows)
      : n_(originals), total_(originals + rows.size()) {
    value_.assign(total_, 0);
    lo_.resize(total_);
    hi_.resize(total_);
    row_of_.assign(total_, -1);
    for (std::size_t i = 0; i < n_; ++i) {
      lo_[i].set = true;
      lo_[i].value = 0;
    }
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::vector<mpq_class> row(total_, 0);
      for (std::size_t j = 0; j < n_; ++j) row[j] = rows[r][j];
      tableau_.push_back(std::move(row));
      basic_.push_back(n_ + r);
      row_of_[n_ + r] = static_cast<long>(r);
    }
  }

  std::size_t originals() const { return n_; }
  const mpq_class& value(std::size_t v) const { return value_[v]; }
  Bound& lo(std::size_t v) { return lo_[v]; }
  Bound& hi(std::size_t v) { return hi_[v]; }

  void set_lo(std::size_t v, const mpq_class& b) {
    lo_[v].set = true;
    lo_[v].value = b;
    if (row_of_[v] < 0 && value_[v] < b) update(v, b);
  }

  void set_hi(std::size_t v, const mpq_class& b) {
    hi_[v].set = true;
    hi_[v].value = b;
    if (row_of_[v] < 0 && value_[v] > b) update(v, b);
  }

  bool check() {
    for (;;) {
      long bad_row = -1;
      std::size_t bad_var = total_;
      for (std::size_t r = 0; r < basic_.size(); ++r) {
        const std::size_t b = basic_[r];
        if (b < bad_var && (below(b) || above(b))) {
          bad_var = b;
          bad_row = static_cast<long>(r);
        }
      }
      if (bad_row < 0) return true;
      const auto& row = tableau_[bad_row];
      const bool raise = below(bad_var);
      std::size_t entering = total_;
      for (std::size_t j = 0; j < total_; ++j) {
        if (row_of_[j] >= 0 || sgn(row[j]) == 0) continue;
        const bool pos = sgn(row[j]) > 0;
        const bool can_inc = !hi_[j].set || value_[j] < hi_[j].value;
        const bool can_dec = !lo_[j].set || value_[j] > lo_[j].value;
        if (raise ? (pos ? can_inc : can_dec) : (pos ? can_dec : can_inc)) {
          entering = j;
          break;
        }
      }
      if (entering == total_) return false;
      pivot_and_update(static_cast<std::size_t>(bad_row), entering,
                       raise ? lo_[bad_var].value : hi_[bad_var].value);
    }
  }

 private:
  bool below(std::size_t v) const { return lo_[v].set && value_[v] < lo_[v].value; }
  bool above(std::size_t v) const { return hi_[v].set && value_[v] > hi_[v].value; }

  void update(std::size_t v, const mpq_class& target) {
    const mpq_class delta = target - value_[v];
    for (std::size_t r = 0; r < basic_.size(); ++r) {
      if (sgn(tableau_[r][v]) != 0) value_[basic_[r]] += tableau_[r][v] * delta;
    }
    value_[v] = target;
  }

  void pivot_and_update(std::size_t r, std::size_t entering, const mpq_class& target) {
    const std::size_t leaving = basic_[r];
    const mpq_class theta = (target - value_[leaving]) / tableau_[r][entering];
    value_[leaving] = target;
    value_[entering] += theta;
    for (std::size_t k = 0; k < basic_.size(); ++k) {
      if (k != r && sgn(tableau_[k][entering]) != 0) value_[basic_[k]] += tableau_[k][entering] * theta;
    }
    pivot(r, entering);
  }

  void pivot(std::size_t r, std::size_t entering) {
    const std::size_t leaving = basic_[r];
    auto& row = tableau_[r];
    const mpq_class a = row[entering];
    // leaving = sum row[j] x_j  =>  entering = (leaving - sum_{j != entering} row[j] x_j) / a
    for (std::size_t j = 0; j < total_; ++j) {
      if (j == entering) continue;
      if (sgn(row[j]) != 0) row[j] = -row[j] / a;
    }
    row[entering] = 0;
    row[leaving] = mpq_class(1) / a;
    for (std::size_t k = 0; k < basic_.size(); ++k) {
      if (k == r) continue;
      auto& other = tableau_[k];
      const mpq_class c = other[entering];
      if (sgn(c) == 0) continue;
      other[entering] = 0;
      for (std::size_t j = 0; j < total_; ++j) {
        if (sgn(row[j]) != 0) other[j] += c * row[j];
      }
    }
    basic_[r] = entering;
    row_of_[entering] = static_cast<long>(r);
    row_of_[leaving] = -1;
  }

  std::size_t n_;
  std::size_t total_;
  std::vector<std::vector<mpq_class>> tableau_;
  std::vector<std::size_t> basic_;
  std::vector<long> row_of_;
  std::vector<mpq_class> value_;
  std::vector<Bound> lo_;
  std::vector<Bound> hi_;
};

struct NeqRow {
  std::size_t slack;
  mpq_class forbidden;
};

class BranchAndBound {
 public:
  BranchAndBound(Simplex& simplex, std::vector<NeqRow> neqs, const LiaOptions& options)
      : simplex_(simplex), neqs_(std::move(neqs)), options_(options) {}

  bool solve() {
    if (++nodes_ > options_.node_budget) {
      throw ResourceLimit("arithmetic branch-and-bound budget exhausted");
    }
    if (!simplex_.check()) return false;

    std::size_t pick = simplex_.originals();
    mpq_class best_dist = 0;
    for (std::size_t v = 0; v < simplex_.originals(); ++v) {
      const mpq_class& x = simplex_.value(v);
      if (x.get_den() == 1) continue;
      const mpq_class frac = x - mpq_class(floor_q(x));
      const mpq_class dist = frac < mpq_class(1, 2) ? frac : mpq_class(1) - frac;
      if (pick == simplex_.originals() || dist > best_dist) {
        pick = v;
        best_dist = dist;
      }
    }
    if (pick != simplex_.originals()) {
      const mpq_class x = simplex_.value(pick);
      return branch(pick, mpq_class(floor_q(x)), mpq_class(ceil_q(x)));
    }
    for (const auto& neq : neqs_) {
      if (simplex_.value(neq.slack) == neq.forbidden) {
        return branch(neq.slack, neq.forbidden - 1, neq.forbidden + 1);
      }
    }
    return true;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  // Left: v <= upper. Right: v >= lower.
  bool branch(std::size_t v, const mpq_class& upper, const mpq_class& lower) {
    {
      const Bound saved = simplex_.hi(v);
      if (!saved.set || upper < saved.value) {
        simplex_.set_hi(v, upper);
        if (!simplex_.lo(v).set || simplex_.lo(v).value <= upper) {
          if (solve()) return true;
        }
        simplex_.hi(v) = saved;
      }
    }
    const Bound saved = simplex_.lo(v);
    if (!saved.set || lower > saved.value) {
      simplex_.set_lo(v, lower);
      if (!simplex_.hi(v).set || simplex_.hi(v).value >= lower) {
        if (solve()) return true;
      }
      simplex_.lo(v) = saved;
    }
    return false;
  }

  Simplex& simplex_;
  std::vector<NeqRow> neqs_;
  const LiaOptions& options_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

LiaResult check(const LinearSystem& system, const LiaOptions& options) {
  LiaResult result;
  const std::size_t n = system.variables().size();

  std::vector<std::vector<std::int64_t>> rows;
  struct RowBounds {
    std::optional<mpq_class> lo;
    std::optional<mpq_class> hi;
    bool neq = false;
    std::int64_t rhs = 0;
  };
  std::vector<RowBounds> bounds;

  for (const auto& atom : system.atoms()) {
    const std::int64_t rhs = -atom.lhs.constant();
    if (atom.lhs.terms().empty()) {
      if (!holds(atom, {})) return result;
      continue;
    }
    std::vector<std::int64_t> row(n, 0);
    std::int64_t g = 0;
    for (const auto& [c, v] : atom.lhs.terms()) {
      row[*system.index_of(v)] = c;
      g = std::gcd(g, c < 0 ? -c : c);
    }
    // The slack only takes multiples of g.
    RowBounds b;
    switch (atom.rel) {
      case Relation::Eq:
        if (rhs % g != 0) return result;
        b.lo = rhs;
        b.hi = rhs;
        break;
      case Relation::Ge:
        b.lo = mpq_class(ceil_q(mpq_class(rhs, g)) * g);
        break;
      case Relation::Lt:
        b.hi = mpq_class(floor_q(mpq_class(rhs - 1, g)) * g);
        break;
      case Relation::Neq:
        if (rhs % g != 0) continue;
        b.neq = true;
        b.rhs = rhs;
        break;
    }
    rows.push_back(std::move(row));
    bounds.push_back(std::move(b));
  }

  Simplex simplex(n, rows);
  std::vector<NeqRow> neqs;
  for (std::size_t r = 0; r < bounds.size(); ++r) {
    const std::size_t slack = n + r;
    if (bounds[r].lo) simplex.set_lo(slack, *bounds[r].lo);
    if (bounds[r].hi) simplex.set_hi(slack, *bounds[r].hi);
    if (bounds[r].neq) neqs.push_back({slack, mpq_class(bounds[r].rhs)});
  }
  BranchAndBound bnb(simplex, std::move(neqs), options);
  const bool sat = bnb.solve();
  result.nodes = bnb.nodes();
  if (!sat) return result;
  result.sat = true;
  for (std::size_t v = 0; v < n; ++v) {
    result.model[system.variables()[v]] = simplex.value(v).get_num().get_si();
  }
  return result;
}

}  // namespace setcard
