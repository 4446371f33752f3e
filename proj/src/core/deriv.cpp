#include "grg/deriv.hpp"

#include "grg/curvature.hpp"
#include "grg/error.hpp"

namespace grg {

namespace {

std::vector<Symmetry> extend(const std::vector<Symmetry>& syms, int rank) {
  std::vector<Symmetry> out;
  for (const auto& s : syms) {
    Symmetry e = s;
    e.perm.push_back(rank);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TensorField& scalar_field(Session& s, const std::string& name, const Expr& f) {
  TensorSpec spec;
  spec.name = name;
  spec.rank = 0;
  spec.mode = ValenceMode::Any;
  return s.define_tensor(std::move(spec), [f](const IndexTuple&) { return f; });
}

TensorField& covariant_d(Session& s, const std::string& tensor) {
  std::lock_guard lock(s.mutex());
  const std::string name = "covariantD[" + tensor + "]";
  if (TensorField* existing = s.find(name)) return *existing;
  TensorField& t = s.tensor(tensor);

  TensorSpec spec;
  spec.name = name;
  spec.rank = t.rank() + 1;
  spec.base_valence = t.base_valence();
  spec.base_valence.push_back(1);
  spec.symmetries = extend(t.symmetry().generators(), t.rank());
  spec.sources = {tensor};

  return s.define_tensor(std::move(spec), [&s, tensor](const IndexTuple& idx) {
    TensorField& T = s.tensor(tensor);
    TensorField& G = s.tensor(names::christoffel);
    const int n = s.dim();
    const int m = idx.back();
    IndexTuple sub(idx.begin(), idx.end() - 1);

    std::vector<Expr> terms{diff(T(sub), s.manifold().coord(m))};
    for (std::size_t p = 0; p < sub.size(); ++p) {
      const int i = sub[p];
      IndexTuple shifted = sub;
      for (int k = 1; k <= n; ++k) {
        if (i > 0) {
          const Expr gamma = G(-k, m, i);
          if (gamma.is_zero()) continue;
          shifted[p] = k;
          terms.push_back(-(gamma * T(shifted)));
        } else {
          const Expr gamma = G(i, m, k);
          if (gamma.is_zero()) continue;
          shifted[p] = -k;
          terms.push_back(gamma * T(shifted));
        }
      }
    }
    return Expr::sum(std::move(terms));
  });
}

Expr covariant_d2(Session& s, const std::string& tensor, const IndexTuple& idx, int m, int n) {
  std::lock_guard lock(s.mutex());
  const std::string first = covariant_d(s, tensor).name();
  IndexTuple full = idx;
  full.push_back(m);
  full.push_back(n);
  return covariant_d(s, first).component(full);
}

Expr scalar_laplacian(Session& s, const Expr& f) {
  std::lock_guard lock(s.mutex());
  const std::string name = "scalar[" + print(f) + "]";
  if (!s.has(name)) scalar_field(s, name, f);
  TensorField& dd = covariant_d(s, covariant_d(s, name).name());
  std::vector<Expr> terms;
  for (int i = 1; i <= s.dim(); ++i) terms.push_back(dd(i, -i));
  return s.simplify(Expr::sum(std::move(terms)));
}

TensorField& lie_d(Session& s, const std::string& u, const std::string& tensor) {
  std::lock_guard lock(s.mutex());
  if (s.tensor(u).rank() != 1) throw DomainError("lieD needs a rank-1 field, '" + u + "' has rank " +
                                                 std::to_string(s.tensor(u).rank()));
  const std::string name = "lieD[" + u + "][" + tensor + "]";
  if (TensorField* existing = s.find(name)) return *existing;
  TensorField& t = s.tensor(tensor);

  TensorSpec spec;
  spec.name = name;
  spec.rank = t.rank();
  spec.base_valence = t.base_valence();
  spec.symmetries = t.symmetry().generators();
  spec.sources = {u, tensor};

  return s.define_tensor(std::move(spec), [&s, u, tensor](const IndexTuple& idx) {
    TensorField& U = s.tensor(u);
    TensorField& T = s.tensor(tensor);
    const Manifold& m = s.manifold();
    const int n = s.dim();

    std::vector<Expr> terms;
    for (int k = 1; k <= n; ++k) {
      const Expr uk = U(-k);
      if (!uk.is_zero()) terms.push_back(uk * diff(T(idx), m.coord(k)));
    }
    for (std::size_t p = 0; p < idx.size(); ++p) {
      const int i = idx[p];
      IndexTuple shifted = idx;
      for (int k = 1; k <= n; ++k) {
        if (i > 0) {
          const Expr du = diff(U(-k), m.coord(i));
          if (du.is_zero()) continue;
          shifted[p] = k;
          terms.push_back(du * T(shifted));
        } else {
          const Expr du = diff(U(i), m.coord(k));
          if (du.is_zero()) continue;
          shifted[p] = -k;
          terms.push_back(-(du * T(shifted)));
        }
      }
    }
    return Expr::sum(std::move(terms));
  });
}

}  // namespace grg
