#include <algorithm>

#include "grg/curvature.hpp"
#include "grg/error.hpp"
#include "grg/tensor.hpp"

namespace grg {

Session::Session() = default;

Session::Session(Manifold m) { open(std::move(m)); }

void Session::open(Manifold m) {
  std::lock_guard lock(mu_);
  manifold_ = std::move(m);
  clear_caches();
  installing_ = true;
  try {
    install_curvature(*this);
  } catch (...) {
    installing_ = false;
    throw;
  }
  installing_ = false;
}

const Manifold& Session::manifold() const {
  if (!manifold_) throw ManifoldError("no manifold is open");
  return *manifold_;
}

TensorField& Session::define_tensor(TensorSpec spec, TensorField::BaseFn fn) {
  std::lock_guard lock(mu_);
  if (spec.name.empty()) throw DomainError("tensor name must not be empty");
  auto owned = std::make_unique<TensorField>(*this, spec, std::move(fn));
  auto it = registry_.find(spec.name);
  if (it != registry_.end()) {
    if (!installing_) {
      warnings_.push_back("tensor '" + spec.name + "' redefined; all caches cleared");
    }
    it->second = std::move(owned);
    clear_caches();
    return *it->second;
  }
  insertion_.push_back(spec.name);
  auto& ref = *owned;
  registry_.emplace(spec.name, std::move(owned));
  return ref;
}

TensorField& Session::define_tensor(const std::string& name, int rank, TensorField::BaseFn fn,
                                    std::vector<Symmetry> symmetries) {
  TensorSpec spec;
  spec.name = name;
  spec.rank = rank;
  spec.symmetries = std::move(symmetries);
  return define_tensor(std::move(spec), std::move(fn));
}

TensorField& Session::tensor_ext(const std::string& name, std::vector<int> valence, std::vector<Expr> values,
                                 std::vector<Symmetry> symmetries) {
  const int n = dim();
  const int rank = static_cast<int>(valence.size());
  std::size_t expected = 1;
  for (int k = 0; k < rank; ++k) expected *= static_cast<std::size_t>(n);
  if (values.size() != expected) {
    throw DomainError("tensor_ext: " + std::to_string(values.size()) + " values do not fill rank " +
                      std::to_string(rank) + " in dimension " + std::to_string(n));
  }
  TensorSpec spec;
  spec.name = name;
  spec.rank = rank;
  spec.base_valence = std::move(valence);
  spec.symmetries = std::move(symmetries);
  auto data = std::make_shared<std::vector<Expr>>(std::move(values));
  return define_tensor(std::move(spec), [data, n](const IndexTuple& idx) {
    std::size_t pos = 0;
    for (int v : idx) pos = pos * static_cast<std::size_t>(n) + static_cast<std::size_t>(std::abs(v) - 1);
    return (*data)[pos];
  });
}

TensorField& Session::tensor_ext(const std::string& name, const Matrix& matrix, std::vector<int> valence) {
  const auto n = static_cast<std::size_t>(dim());
  if (valence.size() != 2) throw DomainError("tensor_ext: a matrix needs a valence of length 2");
  if (matrix.size() != n) throw DomainError("tensor_ext: ragged or mis-sized matrix");
  std::vector<Expr> flat;
  for (const auto& row : matrix) {
    if (row.size() != n) throw DomainError("tensor_ext: ragged or mis-sized matrix");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return tensor_ext(name, std::move(valence), std::move(flat));
}

TensorField& Session::tensor_ext(const std::string& name, const std::vector<Expr>& vector, int valence) {
  if (vector.size() != static_cast<std::size_t>(dim())) throw DomainError("tensor_ext: vector length is not dim");
  return tensor_ext(name, std::vector<int>{valence}, vector);
}

TensorField& Session::tensor(const std::string& name) {
  if (auto* t = find(name)) return *t;
  throw UnknownTensorError("unknown tensor '" + name + "'");
}

TensorField* Session::find(const std::string& name) {
  std::lock_guard lock(mu_);
  auto it = registry_.find(name);
  return it == registry_.end() ? nullptr : it->second.get();
}

std::vector<std::string> Session::tensor_names() const {
  std::lock_guard lock(mu_);
  return insertion_;
}

bool Session::derived_from(const TensorField& t, const std::string& name) const {
  for (const auto& s : t.sources()) {
    if (s == name) return true;
    auto it = registry_.find(s);
    if (it != registry_.end() && it->second.get() != &t && derived_from(*it->second, name)) return true;
  }
  return false;
}

std::vector<std::pair<std::string, IndexTuple>> Session::associated(const std::string& name) {
  std::lock_guard lock(mu_);
  std::vector<std::pair<std::string, IndexTuple>> out;
  for (const auto& key : tensor(name).cacheview()) out.emplace_back(name, key);
  for (const auto& n : insertion_) {
    const auto& t = *registry_.at(n);
    if (n == name || !derived_from(t, name)) continue;
    for (const auto& key : t.cacheview()) out.emplace_back(n, key);
  }
  return out;
}

void Session::retreat(const std::string& name, RetreatScope scope) {
  std::lock_guard lock(mu_);
  tensor(name).retreat();
  if (scope == RetreatScope::Self) return;
  for (const auto& n : insertion_) {
    auto& t = *registry_.at(n);
    if (derived_from(t, name)) t.retreat();
  }
}

void Session::clear_caches() {
  std::lock_guard lock(mu_);
  for (auto& [n, t] : registry_) t->retreat();
}

}  // namespace grg
