#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "grg/manifold.hpp"
#include "grg/symexpr.hpp"

namespace grg {

/// Signed 1-based component indices: positive covariant, negative
/// contravariant.
using IndexTuple = std::vector<int>;

std::string to_string(const IndexTuple& idx);

struct IndexTupleHash {
  std::size_t operator()(const IndexTuple& idx) const noexcept;
};

/// T(idx[perm[0]], ..., idx[perm[n-1]]) = sign * T(idx), perm 0-based.
struct Symmetry {
  std::vector<int> perm;
  int sign = 1;
};

/// Swap of two 0-based slots in a tensor of the given rank.
Symmetry swap_slots(int rank, int a, int b, int sign);

/// Closure of a set of generators; canonicalizes index tuples to the
/// lexicographically least element of their orbit.
class SymmetryGroup {
 public:
  SymmetryGroup() = default;
  SymmetryGroup(int rank, const std::vector<Symmetry>& generators);

  struct Canonical {
    IndexTuple idx;
    /// +1 or -1; 0 when the symmetries force the component to vanish.
    int sign = 1;
  };
  Canonical canonicalize(const IndexTuple& idx) const;

  const std::vector<Symmetry>& elements() const { return elements_; }
  const std::vector<Symmetry>& generators() const { return generators_; }
  bool trivial() const { return elements_.size() <= 1; }

 private:
  std::vector<Symmetry> generators_;
  std::vector<Symmetry> elements_;
};

class Session;

enum class ValenceMode {
  /// Only base-valence tuples reach the base function; other valences are
  /// converted with one metric factor per flipped slot.
  Convert,
  /// The base function accepts every valence (metric, scalars).
  Any,
  /// Only the base valence is accepted (Christoffel symbols).
  Fixed,
};

struct TensorSpec {
  std::string name;
  int rank = 0;
  /// +1 covariant or -1 contravariant per slot; empty means all covariant.
  std::vector<int> base_valence;
  std::vector<Symmetry> symmetries;
  ValenceMode mode = ValenceMode::Convert;
  /// Names of the tensors this one is derived from; used by associated().
  std::vector<std::string> sources;
};

/// A named, memoized component function on the session manifold.
class TensorField {
 public:
  using BaseFn = std::function<Expr(const IndexTuple&)>;

  TensorField(Session& session, TensorSpec spec, BaseFn fn);
  TensorField(const TensorField&) = delete;
  TensorField& operator=(const TensorField&) = delete;

  const std::string& name() const { return spec_.name; }
  int rank() const { return spec_.rank; }
  const std::vector<int>& base_valence() const { return spec_.base_valence; }
  const std::vector<std::string>& sources() const { return spec_.sources; }
  const SymmetryGroup& symmetry() const { return group_; }
  ValenceMode mode() const { return spec_.mode; }
  Session& session() const { return *session_; }

  /// Simplified component. Throws IndexError on wrong arity or range.
  Expr component(const IndexTuple& idx);
  Expr operator()(const IndexTuple& idx) { return component(idx); }
  template <typename... I>
  Expr operator()(int first, I... rest) {
    return component(IndexTuple{first, static_cast<int>(rest)...});
  }

  /// Cached keys in insertion order.
  std::vector<IndexTuple> cacheview() const;
  /// Number of distinct cached keys since the last invalidation.
  std::size_t evaluated_count() const;
  /// Number of base-function invocations since the last invalidation.
  std::size_t base_evaluations() const;
  bool cached(const IndexTuple& idx) const;
  void retreat();

 private:
  Expr compute(const IndexTuple& idx);
  void check(const IndexTuple& idx) const;
  void store(const IndexTuple& idx, const Expr& value);

  Session* session_;
  TensorSpec spec_;
  BaseFn fn_;
  SymmetryGroup group_;
  std::unordered_map<IndexTuple, Expr, IndexTupleHash> cache_;
  std::vector<IndexTuple> order_;
  std::size_t base_evals_ = 0;
};

enum class RetreatScope { Self, Associated };

/// One active manifold, the registry of memoizing tensors, and warnings.
/// Evaluation is serialized through an internal recursive lock.
class Session {
 public:
  Session();
  explicit Session(Manifold m);
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  /// Installs a new manifold, empties every registered cache and rebinds
  /// the predefined curvature tensors.
  void open(Manifold m);
  bool has_manifold() const { return manifold_.has_value(); }
  const Manifold& manifold() const;
  int dim() const { return manifold().dim(); }
  Expr simplify(const Expr& e) const { return manifold().simplify(e); }

  /// Registers a tensor. A duplicate name replaces the old definition,
  /// records a warning and clears every cache.
  TensorField& define_tensor(TensorSpec spec, TensorField::BaseFn fn);
  /// Convenience for all-covariant tensors.
  TensorField& define_tensor(const std::string& name, int rank, TensorField::BaseFn fn,
                             std::vector<Symmetry> symmetries = {});
  /// Tensor backed by a dense array at the given valence (+1/-1 per slot).
  /// `values` is indexed by the flattened 0-based component position.
  TensorField& tensor_ext(const std::string& name, std::vector<int> valence, std::vector<Expr> values,
                          std::vector<Symmetry> symmetries = {});
  TensorField& tensor_ext(const std::string& name, const Matrix& matrix, std::vector<int> valence = {1, 1});
  TensorField& tensor_ext(const std::string& name, const std::vector<Expr>& vector, int valence = 1);

  TensorField& tensor(const std::string& name);
  TensorField* find(const std::string& name);
  bool has(const std::string& name) const { return registry_.count(name) > 0; }
  std::vector<std::string> tensor_names() const;

  /// Cached keys of `name` plus those of every tensor derived from it.
  std::vector<std::pair<std::string, IndexTuple>> associated(const std::string& name);
  void retreat(const std::string& name, RetreatScope scope = RetreatScope::Self);
  void clear_caches();

  const std::vector<std::string>& warnings() const { return warnings_; }
  std::recursive_mutex& mutex() const { return mu_; }

 private:
  friend class TensorField;
  bool derived_from(const TensorField& t, const std::string& name) const;

  std::optional<Manifold> manifold_;
  std::map<std::string, std::unique_ptr<TensorField>> registry_;
  std::vector<std::string> insertion_;
  std::vector<std::string> warnings_;
  bool installing_ = false;
  mutable std::recursive_mutex mu_;
};

/// One factor of a contraction: a tensor and its index pattern, e.g.
/// "-a b" for T^a_b. Letters repeated across the factors are summed over
/// 1..dim; letters bound in `fixed` take the given value.
struct Factor {
  TensorField* tensor;
  std::string pattern;
};

/// Einstein-convention contraction evaluated depth first; a partial product
/// that is zero prunes the remaining sums. The result is simplified.
Expr contract(Session& s, const std::vector<Factor>& factors, const std::map<char, int>& fixed = {});

}  // namespace grg
