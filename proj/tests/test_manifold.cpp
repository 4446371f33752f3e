#include "doctest.h"
#include "grg/error.hpp"
#include "support.hpp"

using namespace grg;
using grg::test::P;

TEST_SUITE("manifold") {
  TEST_CASE("schwarzschild metric access in both valences") {
    auto s = test::schwarzschild();
    const Manifold& m = s->manifold();
    CHECK(m.dim() == 4);
    CHECK(test::equiv(*s, m.metric(-1, -1), P("-1/(1 - 2*M/r)")));
    CHECK(m.metric(4, 4) == simplify(P("r^2*Sin[theta]^2")));
    CHECK(m.metric(1, -1) == Expr(1));
    CHECK(m.metric(1, -2) == Expr(0));
    CHECK_THROWS_AS(m.metric(0, 1), IndexError);
    CHECK_THROWS_AS(m.metric(5, 1), IndexError);
  }

  TEST_CASE("determinant and its square root") {
    auto s = test::schwarzschild();
    CHECK(test::equiv(*s, s->manifold().det(), P("-r^4*Sin[theta]^2")));
    CHECK(print(s->manifold().sqrt_abs_det()) == "r^2*Sin[theta]");
    CHECK(s->manifold().det_sign() == -1);
    CHECK(test::polar()->manifold().sqrt_abs_det() == P("r"));
    CHECK(test::cartesian(3)->manifold().det() == Expr(1));
  }

  TEST_CASE("inverse times metric is the identity") {
    for (auto& s : test::all(test::schwarzschild(), test::catenoid(), test::sphere2())) {
      const Manifold& m = s->manifold();
      for (int i = 1; i <= m.dim(); ++i) {
        for (int j = 1; j <= m.dim(); ++j) {
          Expr sum(0);
          for (int k = 1; k <= m.dim(); ++k) sum = sum + m.metric(i, k) * m.metric(-k, -j);
          CHECK(test::equiv(*s, sum, Expr(i == j ? 1 : 0)));
        }
      }
    }
  }

  TEST_CASE("open rejects malformed metrics") {
    const Matrix id{{Expr(1), Expr(0)}, {Expr(0), Expr(1)}};
    CHECK_NOTHROW(Manifold::open({"x", "y"}, id));
    CHECK_THROWS_WITH_AS(Manifold::open({"x", "y"}, {{Expr(1), Expr(0)}, {Expr(0), Expr(0)}}), "singular metric",
                         ManifoldError);
    CHECK_THROWS_AS(Manifold::open({"x", "x"}, id), ManifoldError);
    CHECK_THROWS_AS(Manifold::open({"x", "y"}, {{Expr(1), P("x")}, {Expr(0), Expr(1)}}), ManifoldError);
    CHECK_THROWS_AS(Manifold::open({"x", "y", "z"}, id), ManifoldError);
    CHECK_THROWS_AS(Manifold::open({"x", "y"}, {{Expr(1), Expr(0)}, {Expr(0)}}), ManifoldError);
  }

  TEST_CASE("line elements become matrices") {
    const Matrix cat = to_matrix(P("Cosh[v/r]^2*(r^2*Dt[u]^2 + Dt[v]^2) + Dt[r]^2*(r*Cosh[v/r] - v*Sinh[v/r])^2/r^2"
                                   " + Dt[r]*Dt[v]*(v - v*Cosh[2*v/r] + r*Sinh[2*v/r])/r"),
                                 {"r", "u", "v"});
    CHECK(grg::equivalent(cat[1][1], P("r^2*Cosh[v/r]^2")));
    CHECK(grg::equivalent(cat[2][2], P("Cosh[v/r]^2")));
    CHECK(grg::equivalent(cat[0][0], P("(r*Cosh[v/r] - v*Sinh[v/r])^2/r^2")));
    CHECK(grg::equivalent(cat[0][2], P("(v - v*Cosh[2*v/r] + r*Sinh[2*v/r])/(2*r)")));
    CHECK(cat[0][2] == cat[2][0]);
    CHECK(cat[0][1] == Expr(0));

    const Matrix flat = to_matrix(P("Dt[x]^2 + Dt[y]^2"), {"x", "y"});
    CHECK(flat == Matrix{{Expr(1), Expr(0)}, {Expr(0), Expr(1)}});
    const Matrix pol = to_matrix(P("Dt[r]^2 + r^2*Dt[phi]^2"), {"r", "phi"});
    CHECK(pol[1][1] == P("r^2"));
  }

  TEST_CASE("line element errors") {
    CHECK_THROWS_AS(to_matrix(P("Dt[x]^2 + Dt[w]^2"), {"x", "y"}), ManifoldError);
    CHECK_THROWS_AS(to_matrix(P("Dt[x]^3 + Dt[y]^2"), {"x", "y"}), ManifoldError);
    CHECK_THROWS_AS(to_matrix(P("Dt[x] + Dt[y]^2"), {"x", "y"}), ManifoldError);
  }

  TEST_CASE("matrix to form and back is stable") {
    for (auto& s : test::all(test::catenoid(), test::schwarzschild())) {
      const Manifold& m = s->manifold();
      Matrix g(static_cast<std::size_t>(m.dim()));
      for (int i = 1; i <= m.dim(); ++i) {
        for (int j = 1; j <= m.dim(); ++j) g[static_cast<std::size_t>(i - 1)].push_back(m.metric(i, j));
      }
      const Matrix back = to_matrix(from_matrix(g, m.coords()), m.coords());
      for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) CHECK(m.simplify(back[i][j]) == g[i][j]);
      }
    }
  }

  TEST_CASE("reopening empties every cache") {
    auto s = test::schwarzschild();
    s->tensor(names::riemann)(1, 2, 1, 2);
    ricci_scalar(*s);
    s->open(test::polar()->manifold());
    for (const auto& n : s->tensor_names()) CHECK(s->tensor(n).cacheview().empty());
    CHECK(s->tensor(names::riemann)(1, 2, 1, 2) == Expr(0));
  }
}
