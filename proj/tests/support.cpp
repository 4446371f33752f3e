#include "support.hpp"

#include <random>

namespace grg::test {

AssumptionSet assumptions(const std::vector<std::string>& lines) {
  AssumptionSet a;
  for (const auto& l : lines) a.assume(l);
  return a;
}

std::unique_ptr<Session> session(const std::vector<std::string>& coords, const std::string& line_element,
                                 const std::vector<std::string>& assume) {
  return std::make_unique<Session>(Manifold::open(coords, to_matrix(P(line_element), coords), assumptions(assume)));
}

std::unique_ptr<Session> schwarzschild() {
  return session({"t", "r", "theta", "phi"},
                 "-(1 - 2*M/r)*Dt[t]^2 + Dt[r]^2/(1 - 2*M/r) + r^2*(Dt[theta]^2 + Sin[theta]^2*Dt[phi]^2)",
                 {"0 < t", "0 < r", "0 < theta < Pi", "0 < phi < 2*Pi", "0 < M"});
}

std::unique_ptr<Session> catenoid() {
  return session({"r", "u", "v"},
                 "Cosh[v/r]^2*(r^2*Dt[u]^2 + Dt[v]^2) + Dt[r]^2*(r*Cosh[v/r] - v*Sinh[v/r])^2/r^2"
                 " + Dt[r]*Dt[v]*(v - v*Cosh[2*v/r] + r*Sinh[2*v/r])/r",
                 {"1 < r < 3", "0 < u < 2*Pi", "0 < v < 2"});
}

std::unique_ptr<Session> sphere2() {
  return session({"theta", "phi"}, "a^2*Dt[theta]^2 + a^2*Sin[theta]^2*Dt[phi]^2",
                 {"0 < a", "0 < theta < Pi", "0 < phi < 2*Pi"});
}

std::unique_ptr<Session> polar() {
  return session({"r", "phi"}, "Dt[r]^2 + r^2*Dt[phi]^2", {"0 < r", "0 < phi < 2*Pi"});
}

std::unique_ptr<Session> minkowski() {
  return session({"t", "x", "y", "z"}, "-Dt[t]^2 + Dt[x]^2 + Dt[y]^2 + Dt[z]^2", {});
}

std::unique_ptr<Session> cartesian(int dim) {
  std::vector<std::string> coords;
  std::string form;
  for (int i = 1; i <= dim; ++i) {
    coords.push_back("x" + std::to_string(i));
    form += (i > 1 ? " + Dt[x" : "Dt[x") + std::to_string(i) + "]^2";
  }
  return session(coords, form, {});
}

std::unique_ptr<Session> flrw() {
  return session({"t", "x", "y", "z"}, "-Dt[t]^2 + a[t]^2*(Dt[x]^2 + Dt[y]^2 + Dt[z]^2)", {});
}

std::unique_ptr<Session> random_diagonal3(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> c(1, 5);
  const std::vector<std::string> xs{"x", "y", "z"};
  std::string form;
  for (int i = 0; i < 3; ++i) {
    const std::string entry = std::to_string(c(rng)) + " + " + std::to_string(c(rng)) + "*" +
                              xs[static_cast<std::size_t>((i + 1) % 3)] + "^2 + " + std::to_string(c(rng)) +
                              "*" + xs[static_cast<std::size_t>((i + 2) % 3)];
    form += (i ? " + (" : "(") + entry + ")*Dt[" + xs[static_cast<std::size_t>(i)] + "]^2";
  }
  return session(xs, form, {"0 < x < 2", "0 < y < 2", "0 < z < 2"});
}

bool equiv(const Session& s, const Expr& a, const Expr& b) { return s.manifold().equivalent(a, b); }

// ---------------------------------------------------------------------------

Oracle::Oracle(const Manifold& m) : m_(m), n_(m.dim()) {
  gamma_.resize(static_cast<std::size_t>(n_ * n_ * n_));
  for (int a = 1; a <= n_; ++a) {
    for (int b = 1; b <= n_; ++b) {
      for (int c = 1; c <= n_; ++c) {
        Expr sum(0);
        for (int s = 1; s <= n_; ++s) {
          const Expr dgsb_c = diff(m.metric(s, b), m.coord(c));
          const Expr dgsc_b = diff(m.metric(s, c), m.coord(b));
          const Expr dgbc_s = diff(m.metric(b, c), m.coord(s));
          sum = sum + m.metric(-a, -s) * (dgsb_c + dgsc_b - dgbc_s);
        }
        gamma_[static_cast<std::size_t>(((a - 1) * n_ + (b - 1)) * n_ + (c - 1))] =
            m.simplify(sum / Expr(2));
      }
    }
  }
}

const Expr& Oracle::gamma(int a, int b, int c) const {
  return gamma_[static_cast<std::size_t>(((a - 1) * n_ + (b - 1)) * n_ + (c - 1))];
}

Expr Oracle::riemann_up(int a, int b, int c, int d) const {
  const std::vector<int> key{a, b, c, d};
  if (auto it = riemann_up_.find(key); it != riemann_up_.end()) return it->second;
  Expr v = diff(gamma(a, d, b), m_.coord(c)) - diff(gamma(a, c, b), m_.coord(d));
  for (int e = 1; e <= n_; ++e) v = v + gamma(a, c, e) * gamma(e, d, b) - gamma(a, d, e) * gamma(e, c, b);
  v = m_.simplify(v);
  riemann_up_.emplace(key, v);
  return v;
}

Expr Oracle::riemann(int a, int b, int c, int d) const {
  Expr v(0);
  for (int s = 1; s <= n_; ++s) v = v + m_.metric(a, s) * riemann_up(s, b, c, d);
  return m_.simplify(v);
}

Expr Oracle::ricci(int i, int j) const {
  Expr v(0);
  for (int s = 1; s <= n_; ++s) v = v + riemann_up(s, i, s, j);
  return m_.simplify(v);
}

Expr Oracle::ricci_scalar() const {
  Expr v(0);
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) v = v + m_.metric(-i, -j) * ricci(i, j);
  }
  return m_.simplify(v);
}

Oracle::Field Oracle::nabla(Field t) const {
  auto memo = std::make_shared<std::map<std::vector<int>, Expr>>();
  return [this, t, memo](const std::vector<int>& idx) {
    if (auto it = memo->find(idx); it != memo->end()) return it->second;
    const int m = idx.back();
    std::vector<int> base(idx.begin(), idx.end() - 1);
    Expr v = diff(t(base), m_.coord(m));
    for (std::size_t p = 0; p < base.size(); ++p) {
      for (int s = 1; s <= n_; ++s) {
        std::vector<int> shifted = base;
        shifted[p] = s;
        v = v - gamma(s, m, base[p]) * t(shifted);
      }
    }
    v = m_.simplify(v);
    memo->emplace(idx, v);
    return v;
  };
}

}  // namespace grg::test
