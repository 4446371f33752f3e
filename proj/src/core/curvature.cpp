#include "grg/curvature.hpp"

#include <algorithm>

#include "grg/error.hpp"

namespace grg {

namespace {

Expr d(const Session& s, const Expr& e, int coord) { return diff(e, s.manifold().coord(coord)); }

Expr christoffel_fn(Session& s, const IndexTuple& idx) {
  const Manifold& m = s.manifold();
  const int a = -idx[0], b = idx[1], c = idx[2];
  std::vector<Expr> terms;
  for (int k = 1; k <= m.dim(); ++k) {
    const Expr gi = m.metric(-a, -k);
    if (gi.is_zero()) continue;
    Expr bracket = d(s, m.metric(k, c), b) + d(s, m.metric(k, b), c) - d(s, m.metric(b, c), k);
    terms.push_back(gi * bracket);
  }
  return Expr::rational(1, 2) * Expr::sum(std::move(terms));
}

Expr riemann_fn(Session& s, const IndexTuple& idx) {
  TensorField& G = s.tensor(names::christoffel);
  const int a = -idx[0], b = idx[1], c = idx[2], dd = idx[3];
  std::vector<Expr> terms{d(s, G(-a, dd, b), c), -d(s, G(-a, c, b), dd)};
  for (int e = 1; e <= s.dim(); ++e) {
    const Expr g1 = G(-a, c, e);
    if (!g1.is_zero()) terms.push_back(g1 * G(-e, dd, b));
    const Expr g2 = G(-a, dd, e);
    if (!g2.is_zero()) terms.push_back(-(g2 * G(-e, c, b)));
  }
  return Expr::sum(std::move(terms));
}

Expr ricci_fn(Session& s, const IndexTuple& idx) {
  return contract(s, {{&s.tensor(names::riemann), "-s i s j"}}, {{'i', idx[0]}, {'j', idx[1]}});
}

void require_dim4(const Session& s, const char* what) {
  if (s.dim() != 4) {
    throw DimensionError(std::string(what) + " requires dimension 4, manifold has dimension " +
                         std::to_string(s.dim()));
  }
}

Expr weyl_fn(Session& s, const IndexTuple& idx) {
  const int n = s.dim();
  if (n < 3) throw DimensionError("weyl requires dimension 3 or more");
  if (n == 3) return Expr(0);
  const Manifold& m = s.manifold();
  TensorField& R = s.tensor(names::riemann);
  TensorField& Ric = s.tensor(names::ricci);
  const int a = idx[0], b = idx[1], c = idx[2], dd = idx[3];

  std::vector<Expr> ricci_terms;
  auto add = [&](int g1, int g2, int r1, int r2, int sign) {
    const Expr g = m.metric(g1, g2);
    if (g.is_zero()) return;
    const Expr r = Ric(r1, r2);
    if (r.is_zero()) return;
    ricci_terms.push_back(Expr(sign) * g * r);
  };
  add(a, c, b, dd, 1);
  add(a, dd, b, c, -1);
  add(b, c, a, dd, -1);
  add(b, dd, a, c, 1);

  std::vector<Expr> terms{R(a, b, c, dd)};
  if (!ricci_terms.empty()) {
    terms.push_back(Expr::rational(-1, n - 2) * Expr::sum(std::move(ricci_terms)));
  }
  const Expr gg = m.metric(a, c) * m.metric(b, dd) - m.metric(a, dd) * m.metric(b, c);
  if (!gg.is_zero()) {
    const Expr rs = s.tensor(names::ricci_scalar).component({});
    if (!rs.is_zero()) terms.push_back(Expr::rational(1, (n - 1) * (n - 2)) * rs * gg);
  }
  return Expr::sum(std::move(terms));
}

Expr dual_weyl_fn(Session& s, const IndexTuple& idx) {
  require_dim4(s, "dualweyl");
  return Expr::rational(1, 2) *
         contract(s, {{&s.tensor(names::levi_civita), "a b e f"}, {&s.tensor(names::weyl), "-e -f c d"}},
                  {{'a', idx[0]}, {'b', idx[1]}, {'c', idx[2]}, {'d', idx[3]}});
}

Expr levi_civita_fn(Session& s, const IndexTuple& idx) {
  std::vector<int> p(idx.begin(), idx.end());
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) return Expr(0);
      if (p[i] > p[j]) sign = -sign;
    }
  }
  return Expr(sign) * s.manifold().sqrt_abs_det();
}

std::vector<Symmetry> total_antisymmetry(int rank) {
  std::vector<Symmetry> out;
  for (int i = 0; i + 1 < rank; ++i) out.push_back(swap_slots(rank, i, i + 1, -1));
  return out;
}

TensorSpec spec(const char* name, int rank, std::vector<Symmetry> sym = {}, std::vector<int> valence = {},
                ValenceMode mode = ValenceMode::Convert) {
  TensorSpec t;
  t.name = name;
  t.rank = rank;
  t.symmetries = std::move(sym);
  t.base_valence = std::move(valence);
  t.mode = mode;
  return t;
}

}  // namespace

std::vector<Symmetry> riemann_symmetries() {
  return {swap_slots(4, 0, 1, -1), swap_slots(4, 2, 3, -1), Symmetry{{2, 3, 0, 1}, 1}};
}

void install_curvature(Session& s) {
  const int n = s.dim();
  const Symmetry sym2 = swap_slots(2, 0, 1, 1);

  s.define_tensor(spec(names::metric, 2, {}, {}, ValenceMode::Any),
                  [&s](const IndexTuple& i) { return s.manifold().metric(i[0], i[1]); });

  s.define_tensor(spec(names::christoffel, 3, {swap_slots(3, 1, 2, 1)}, {-1, 1, 1}, ValenceMode::Fixed),
                  [&s](const IndexTuple& i) { return christoffel_fn(s, i); });

  // R^a_bcd is computed directly at valence (-,+,+,+) without slot
  // canonicalization, so every requested key is a genuine evaluation.
  s.define_tensor(spec(names::riemann, 4, {}, {-1, 1, 1, 1}),
                  [&s](const IndexTuple& i) { return riemann_fn(s, i); });

  s.define_tensor(spec(names::ricci, 2, {sym2}), [&s](const IndexTuple& i) { return ricci_fn(s, i); });

  s.define_tensor(spec(names::ricci_scalar, 0, {}, {}, ValenceMode::Any), [&s](const IndexTuple&) {
    return contract(s, {{&s.tensor(names::metric), "-i -j"}, {&s.tensor(names::ricci), "i j"}});
  });

  s.define_tensor(spec(names::einstein, 2, {sym2}), [&s](const IndexTuple& i) {
    const Expr g = s.manifold().metric(i[0], i[1]);
    Expr r = s.tensor(names::ricci)(i[0], i[1]);
    if (g.is_zero()) return r;
    return r - Expr::rational(1, 2) * s.tensor(names::ricci_scalar).component({}) * g;
  });

  s.define_tensor(spec(names::plebanski, 2, {sym2}), [&s](const IndexTuple& i) {
    require_dim4(s, "plebanski");
    const Expr g = s.manifold().metric(i[0], i[1]);
    Expr r = s.tensor(names::ricci)(i[0], i[1]);
    if (g.is_zero()) return r;
    return r - Expr::rational(1, 4) * s.tensor(names::ricci_scalar).component({}) * g;
  });

  s.define_tensor(spec(names::weyl, 4, riemann_symmetries()),
                  [&s](const IndexTuple& i) { return weyl_fn(s, i); });

  s.define_tensor(spec(names::dual_weyl, 4, {swap_slots(4, 0, 1, -1), swap_slots(4, 2, 3, -1)}),
                  [&s](const IndexTuple& i) { return dual_weyl_fn(s, i); });

  s.define_tensor(spec(names::levi_civita, n, total_antisymmetry(n)),
                  [&s](const IndexTuple& i) { return levi_civita_fn(s, i); });
}

Expr ricci_scalar(Session& s) { return s.tensor(names::ricci_scalar).component({}); }

Expr kretschmann(Session& s) {
  TensorField& R = s.tensor(names::riemann);
  return contract(s, {{&R, "a b c d"}, {&R, "-a -b -c -d"}});
}

}  // namespace grg
