#include "grg/tensor.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "grg/error.hpp"

namespace grg {

std::string to_string(const IndexTuple& idx) {
  std::string s = "{";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(idx[i]);
  }
  return s + "}";
}

std::size_t IndexTupleHash::operator()(const IndexTuple& idx) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ull;
  for (int v : idx) h = (h ^ static_cast<std::size_t>(v + 64)) * 0x100000001b3ull;
  return h;
}

Symmetry swap_slots(int rank, int a, int b, int sign) {
  Symmetry s;
  s.perm.resize(static_cast<std::size_t>(rank));
  for (int i = 0; i < rank; ++i) s.perm[static_cast<std::size_t>(i)] = i;
  std::swap(s.perm[static_cast<std::size_t>(a)], s.perm[static_cast<std::size_t>(b)]);
  s.sign = sign;
  return s;
}

namespace {

bool is_permutation_of_rank(const std::vector<int>& p, int rank) {
  if (static_cast<int>(p.size()) != rank) return false;
  std::vector<bool> seen(p.size(), false);
  for (int v : p) {
    if (v < 0 || v >= rank || seen[static_cast<std::size_t>(v)]) return false;
    seen[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

IndexTuple apply(const std::vector<int>& perm, const IndexTuple& idx) {
  IndexTuple out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = idx[static_cast<std::size_t>(perm[i])];
  return out;
}

}  // namespace

SymmetryGroup::SymmetryGroup(int rank, const std::vector<Symmetry>& generators) : generators_(generators) {
  for (const auto& g : generators) {
    if (!is_permutation_of_rank(g.perm, rank) || (g.sign != 1 && g.sign != -1)) {
      throw DomainError("symmetry is not a signed permutation of the tensor slots");
    }
  }
  Symmetry id;
  for (int i = 0; i < rank; ++i) id.perm.push_back(i);
  std::map<std::vector<int>, int> found{{id.perm, 1}};
  std::deque<Symmetry> queue{id};
  elements_.push_back(id);
  while (!queue.empty()) {
    const Symmetry cur = queue.front();
    queue.pop_front();
    for (const auto& g : generators_) {
      Symmetry next;
      next.perm.resize(cur.perm.size());
      for (std::size_t i = 0; i < cur.perm.size(); ++i) {
        next.perm[i] = cur.perm[static_cast<std::size_t>(g.perm[i])];
      }
      next.sign = cur.sign * g.sign;
      auto [it, inserted] = found.emplace(next.perm, next.sign);
      if (!inserted) {
        if (it->second != next.sign) throw DomainError("inconsistent symmetry declarations");
        continue;
      }
      elements_.push_back(next);
      queue.push_back(next);
    }
  }
}

SymmetryGroup::Canonical SymmetryGroup::canonicalize(const IndexTuple& idx) const {
  Canonical best{idx, 1};
  for (const auto& e : elements_) {
    IndexTuple t = apply(e.perm, idx);
    if (t == idx) {
      if (e.sign == -1) return {idx, 0};
      continue;
    }
    if (t < best.idx) best = {std::move(t), e.sign};
  }
  return best;
}

// ---------------------------------------------------------------------------

TensorField::TensorField(Session& session, TensorSpec spec, BaseFn fn)
    : session_(&session), spec_(std::move(spec)), fn_(std::move(fn)) {
  if (spec_.rank < 0) throw DomainError("negative tensor rank");
  if (spec_.base_valence.empty()) spec_.base_valence.assign(static_cast<std::size_t>(spec_.rank), 1);
  if (static_cast<int>(spec_.base_valence.size()) != spec_.rank) {
    throw DomainError("valence length does not match the rank of '" + spec_.name + "'");
  }
  for (int v : spec_.base_valence) {
    if (v != 1 && v != -1) throw DomainError("valence entries must be +1 or -1");
  }
  group_ = SymmetryGroup(spec_.rank, spec_.symmetries);
}

void TensorField::check(const IndexTuple& idx) const {
  if (static_cast<int>(idx.size()) != spec_.rank) {
    throw IndexError("'" + spec_.name + "' takes " + std::to_string(spec_.rank) + " indices, got " +
                     std::to_string(idx.size()));
  }
  const int n = session_->dim();
  for (int v : idx) {
    if (v == 0 || v > n || v < -n) {
      throw IndexError("index " + std::to_string(v) + " out of range for '" + spec_.name + "' " + to_string(idx));
    }
  }
}

Expr TensorField::component(const IndexTuple& idx) {
  std::lock_guard lock(session_->mutex());
  check(idx);
  auto it = cache_.find(idx);
  if (it != cache_.end()) return it->second;
  return compute(idx);
}

void TensorField::store(const IndexTuple& idx, const Expr& value) {
  if (cache_.emplace(idx, value).second) order_.push_back(idx);
}

Expr TensorField::compute(const IndexTuple& idx) {
  const Manifold& m = session_->manifold();
  if (spec_.mode == ValenceMode::Any) {
    Expr v = m.simplify(fn_(idx));
    ++base_evals_;
    store(idx, v);
    return v;
  }

  std::size_t flip = idx.size();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if ((idx[k] > 0 ? 1 : -1) != spec_.base_valence[k]) {
      flip = k;
      break;
    }
  }

  if (flip == idx.size()) {
    if (!group_.trivial()) {
      const auto c = group_.canonicalize(idx);
      if (c.sign == 0) return Expr(0);
      if (c.idx != idx) {
        Expr v = component(c.idx);
        if (c.sign < 0) v = m.simplify(-v);
        store(idx, v);
        return v;
      }
    }
    Expr v = m.simplify(fn_(idx));
    ++base_evals_;
    store(idx, v);
    return v;
  }

  if (spec_.mode == ValenceMode::Fixed) {
    throw IndexError("'" + spec_.name + "' is only defined at its base valence");
  }

  const int a = idx[flip];
  const int base_sign = spec_.base_valence[flip];
  std::vector<Expr> terms;
  IndexTuple sub = idx;
  for (int s = 1; s <= m.dim(); ++s) {
    const Expr g = m.metric(a, a > 0 ? s : -s);
    if (g.is_zero()) continue;
    sub[flip] = base_sign * s;
    Expr t = component(sub);
    if (!t.is_zero()) terms.push_back(g * t);
  }
  Expr v = m.simplify(Expr::sum(std::move(terms)));
  store(idx, v);
  return v;
}

std::vector<IndexTuple> TensorField::cacheview() const {
  std::lock_guard lock(session_->mutex());
  return order_;
}

std::size_t TensorField::evaluated_count() const {
  std::lock_guard lock(session_->mutex());
  return cache_.size();
}

std::size_t TensorField::base_evaluations() const {
  std::lock_guard lock(session_->mutex());
  return base_evals_;
}

bool TensorField::cached(const IndexTuple& idx) const {
  std::lock_guard lock(session_->mutex());
  return cache_.count(idx) > 0;
}

void TensorField::retreat() {
  std::lock_guard lock(session_->mutex());
  cache_.clear();
  order_.clear();
  base_evals_ = 0;
}

}  // namespace grg
