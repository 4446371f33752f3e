#include "grg/hypersurface.hpp"

#include "grg/deriv.hpp"
#include "grg/error.hpp"

namespace grg {

namespace {

void require_vector(Session& s, const std::string& v) {
  if (s.tensor(v).rank() != 1) throw DomainError("'" + v + "' is not a vector field");
}

int norm_sign(Session& s, const Expr& n2) {
  const Manifold& m = s.manifold();
  const auto names = free_symbols(n2);
  for (int attempt = 0; attempt < 24; ++attempt) {
    try {
      const double x = eval_numeric(n2, sample_point(names, m.assumptions(), 20150101, attempt)).real();
      if (x != 0.0) return x > 0 ? 1 : -1;
    } catch (const EvalError&) {
    }
  }
  throw DomainError("cannot determine the sign of the norm of the vector");
}

}  // namespace

Expr vector_squared(Session& s, const std::string& v) {
  std::lock_guard lock(s.mutex());
  require_vector(s, v);
  TensorField* t = &s.tensor(v);
  const Expr n2 = contract(s, {{t, "a"}, {t, "-a"}});
  if (n2.is_zero() || s.manifold().equivalent(n2, Expr(0))) throw DomainError("null vector");
  return n2;
}

TensorField& induced_metric(Session& s, const std::string& v) {
  std::lock_guard lock(s.mutex());
  const std::string name = "h[" + v + "]";
  if (TensorField* existing = s.find(name)) return *existing;
  const Expr inv = pow(vector_squared(s, v), Expr(-1));

  TensorSpec spec;
  spec.name = name;
  spec.rank = 2;
  spec.symmetries = {swap_slots(2, 0, 1, 1)};
  spec.sources = {v};
  return s.define_tensor(std::move(spec), [&s, v, inv](const IndexTuple& idx) {
    TensorField& V = s.tensor(v);
    return s.manifold().metric(idx[0], idx[1]) - V(idx[0]) * V(idx[1]) * inv;
  });
}

TensorField& second_fundamental_form(Session& s, const std::string& v) {
  std::lock_guard lock(s.mutex());
  const std::string name = "K[" + v + "]";
  if (TensorField* existing = s.find(name)) return *existing;
  const std::string h = induced_metric(s, v).name();

  const std::string unit = "unit[" + v + "]";
  if (!s.has(unit)) {
    const Expr n2 = vector_squared(s, v);
    const Expr scale = s.simplify(pow(Expr(norm_sign(s, n2)) * n2, Expr::rational(-1, 2)));
    TensorSpec u;
    u.name = unit;
    u.rank = 1;
    u.sources = {v};
    s.define_tensor(std::move(u), [&s, v, scale](const IndexTuple& idx) { return scale * s.tensor(v)(idx[0]); });
  }
  const std::string du = covariant_d(s, unit).name();

  TensorSpec spec;
  spec.name = name;
  spec.rank = 2;
  spec.sources = {h, du};
  return s.define_tensor(std::move(spec), [&s, h, du](const IndexTuple& idx) {
    TensorField* H = &s.tensor(h);
    return contract(s, {{H, "i -a"}, {H, "j -b"}, {&s.tensor(du), "b a"}}, {{'i', idx[0]}, {'j', idx[1]}});
  });
}

}  // namespace grg
