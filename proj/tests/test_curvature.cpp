#include <random>

#include "doctest.h"
#include "grg/error.hpp"
#include "support.hpp"

using namespace grg;
using grg::test::P;

namespace {

IndexTuple random_cov(std::mt19937& rng, int rank, int dim) {
  std::uniform_int_distribution<int> v(1, dim);
  IndexTuple idx;
  for (int k = 0; k < rank; ++k) idx.push_back(v(rng));
  return idx;
}

IndexTuple permuted(const IndexTuple& idx, const std::vector<int>& perm) {
  IndexTuple out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = idx[static_cast<std::size_t>(perm[i])];
  return out;
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("christoffel symbols") {
    auto p = test::polar();
    TensorField& G = p->tensor(names::christoffel);
    CHECK(G(-1, 2, 2) == P("-r"));
    CHECK(G(-2, 1, 2) == P("1/r"));
    CHECK(G(-2, 2, 1) == P("1/r"));

    auto c = test::cartesian(3);
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) {
        for (int d = 1; d <= 3; ++d) CHECK(c->tensor(names::christoffel)(-a, b, d) == Expr(0));
      }
    }

    auto s = test::schwarzschild();
    test::Oracle o(s->manifold());
    CHECK(test::equiv(*s, s->tensor(names::christoffel)(-2, 1, 1), P("M*(r - 2*M)/r^3")));
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= 4; ++b) {
        for (int d = 1; d <= 4; ++d) CHECK(s->simplify(s->tensor(names::christoffel)(-a, b, d) - o.gamma(a, b, d)) == Expr(0));
      }
    }
  }

  TEST_CASE("schwarzschild riemann agrees with the dense oracle") {
    auto s = test::schwarzschild();
    test::Oracle o(s->manifold());
    TensorField& R = s->tensor(names::riemann);
    CHECK(R(1, 2, 1, 2) == P("-2*M/r^3"));
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= 4; ++b) {
        for (int c = 1; c <= 4; ++c) {
          for (int d = 1; d <= 4; ++d) {
            CHECK(s->simplify(R(a, b, c, d) - o.riemann(a, b, c, d)) == Expr(0));
          }
        }
      }
    }
    // fully contravariant component pinned from the dense oracle
    const Expr up = o.riemann(1, 2, 1, 2) * pow(s->manifold().metric(-1, -1) * s->manifold().metric(-2, -2), Expr(2));
    CHECK(test::equiv(*s, up, P("-2*M/r^3")));
    CHECK(test::equiv(*s, R(-1, -2, -1, -2), up));
  }

  TEST_CASE("mixed component with the fourth index raised") {
    auto s = test::schwarzschild();
    // raising the last index of R_1212 with g^22 = 1 - 2M/r
    CHECK(test::equiv(*s, s->tensor(names::riemann)(1, 2, 1, -2), P("2*M*(2*M - r)/r^4")));
  }

  TEST_CASE("two-sphere curvature pinned by the oracle") {
    auto s = test::sphere2();
    test::Oracle o(s->manifold());
    const Expr r1212 = P("a^2*Sin[theta]^2");
    REQUIRE(test::equiv(*s, o.riemann(1, 2, 1, 2), r1212));
    REQUIRE(test::equiv(*s, o.ricci_scalar(), P("2/a^2")));
    CHECK(test::equiv(*s, s->tensor(names::riemann)(1, 2, 1, 2), r1212));
    CHECK(test::equiv(*s, ricci_scalar(*s), P("2/a^2")));
    for (int i = 1; i <= 2; ++i) {
      for (int j = 1; j <= 2; ++j) {
        CHECK(test::equiv(*s, s->tensor(names::ricci)(i, j), s->manifold().metric(i, j) / P("a^2")));
        CHECK(test::equiv(*s, o.ricci(i, j), s->tensor(names::ricci)(i, j)));
      }
    }
  }

  TEST_CASE("flat metrics have no curvature") {
    for (auto& s : test::all(test::polar(), test::cartesian(3), test::minkowski())) {
      const int n = s->dim();
      TensorField& R = s->tensor(names::riemann);
      for (int a = 1; a <= n; ++a) {
        for (int b = 1; b <= n; ++b) {
          for (int c = 1; c <= n; ++c) {
            for (int d = 1; d <= n; ++d) CHECK(R(-a, b, c, d) == Expr(0));
          }
        }
      }
      CHECK(ricci_scalar(*s) == Expr(0));
    }
  }

  TEST_CASE("vacuum tensors vanish on schwarzschild") {
    auto s = test::schwarzschild();
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        CHECK(s->tensor(names::ricci)(i, j) == Expr(0));
        CHECK(s->tensor(names::einstein)(i, j) == Expr(0));
        CHECK(s->tensor(names::plebanski)(i, j) == Expr(0));
      }
    }
    CHECK(ricci_scalar(*s) == Expr(0));
    CHECK(kretschmann(*s) == P("48*M^2/r^6"));
  }

  TEST_CASE("einstein trace on the two-sphere") {
    auto s = test::sphere2();
    TensorField* g = &s->tensor(names::metric);
    const Expr trace = contract(*s, {{g, "-i -j"}, {&s->tensor(names::einstein), "i j"}});
    CHECK(test::equiv(*s, trace, (Expr(1) - Expr(2) / Expr(2)) * ricci_scalar(*s)));
  }

  TEST_CASE("plebanski tensor") {
    auto f = test::flrw();
    TensorField* g = &f->tensor(names::metric);
    CHECK(contract(*f, {{g, "-i -j"}, {&f->tensor(names::plebanski), "i j"}}) == Expr(0));

    test::Oracle o(f->manifold());
    const Expr s11 = f->simplify(o.ricci(1, 1) - o.ricci_scalar() * f->manifold().metric(1, 1) / Expr(4));
    const Expr a = P("a[t]");
    const Expr a1 = diff(a, "t");
    const Expr a2 = diff(a1, "t");
    const Expr frozen = Expr(3) * (pow(a1, Expr(2)) - a * a2) / (Expr(2) * pow(a, Expr(2)));
    REQUIRE(f->simplify(s11 - frozen) == Expr(0));
    CHECK(f->simplify(f->tensor(names::plebanski)(1, 1) - frozen) == Expr(0));

    CHECK_THROWS_AS(test::polar()->tensor(names::plebanski)(1, 1), DimensionError);
  }

  TEST_CASE("weyl tensor") {
    auto s = test::schwarzschild();
    TensorField& C = s->tensor(names::weyl);
    CHECK(C(1, 2, 1, 2) == P("-2*M/r^3"));
    TensorField* g = &s->tensor(names::metric);
    for (int b = 1; b <= 4; ++b) {
      for (int d = 1; d <= 4; ++d) {
        CHECK(contract(*s, {{g, "-a -c"}, {&C, "a b c d"}}, {{'b', b}, {'d', d}}) == Expr(0));
      }
    }

    auto f = test::flrw();
    for (int a = 1; a <= 4; ++a) {
      for (int b = a + 1; b <= 4; ++b) {
        for (int c = 1; c <= 4; ++c) {
          for (int d = c + 1; d <= 4; ++d) CHECK(f->tensor(names::weyl)(a, b, c, d) == Expr(0));
        }
      }
    }

    auto three = test::random_diagonal3(5);
    CHECK(three->tensor(names::weyl)(1, 2, 1, 2) == Expr(0));
    CHECK_THROWS_AS(test::sphere2()->tensor(names::weyl)(1, 2, 1, 2), DimensionError);
  }

  TEST_CASE("levi-civita tensor") {
    auto s = test::schwarzschild();
    TensorField& e = s->tensor(names::levi_civita);
    CHECK(e(1, 2, 3, 4) == P("r^2*Sin[theta]"));
    CHECK(e(2, 1, 3, 4) == P("-r^2*Sin[theta]"));
    CHECK(e(1, 1, 3, 4) == Expr(0));
    CHECK(e(4, 3, 2, 1) == e(1, 2, 3, 4));
    // raising every index brings sign(det g)/|det g|
    CHECK(test::equiv(*s, e(-1, -2, -3, -4), P("-1/(r^2*Sin[theta])")));
    const Manifold& m = s->manifold();
    Expr naive = e(1, 2, 3, 4);
    for (int k = 1; k <= 4; ++k) naive = naive * m.metric(-k, -k);
    CHECK(test::equiv(*s, e(-1, -2, -3, -4), naive));
  }

  TEST_CASE("dual weyl tensor") {
    auto s = test::schwarzschild();
    TensorField* C = &s->tensor(names::weyl);
    TensorField* D = &s->tensor(names::dual_weyl);
    CHECK(contract(*s, {{D, "a b c d"}, {C, "-a -b -c -d"}}) == Expr(0));
    CHECK((*D)(1, 1, 2, 3) == Expr(0));
    CHECK(test::equiv(*s, (*D)(2, 1, 3, 4), -(*D)(1, 2, 3, 4)));

    std::mt19937 rng(11);
    TensorField* eps = &s->tensor(names::levi_civita);
    for (int k = 0; k < 20; ++k) {
      const IndexTuple idx = random_cov(rng, 4, 4);
      const Expr dd = Expr::rational(1, 2) * contract(*s, {{eps, "a b e f"}, {D, "-e -f c d"}},
                                                      {{'a', idx[0]}, {'b', idx[1]}, {'c', idx[2]}, {'d', idx[3]}});
      CHECK(test::equiv(*s, dd, -(*C)(idx)));
    }

    auto flat = test::minkowski();
    CHECK(flat->tensor(names::dual_weyl)(1, 2, 1, 2) == Expr(0));
    CHECK_THROWS_AS(test::random_diagonal3(1)->tensor(names::dual_weyl)(1, 2, 1, 2), DimensionError);
  }

  TEST_CASE("first bianchi identity on random three-metrics") {
    std::mt19937 rng(3);
    for (unsigned seed : {21u, 22u}) {
      auto s = test::random_diagonal3(seed);
      TensorField& R = s->tensor(names::riemann);
      for (int k = 0; k < 15; ++k) {
        const IndexTuple i = random_cov(rng, 4, 3);
        const Expr sum = R(i[0], i[1], i[2], i[3]) + R(i[0], i[2], i[3], i[1]) + R(i[0], i[3], i[1], i[2]);
        CHECK(test::equiv(*s, sum, Expr(0)));
      }
    }
  }

  TEST_CASE("riemann and weyl symmetries on random tuples") {
    auto s = test::schwarzschild();
    SymmetryGroup group(4, riemann_symmetries());
    std::mt19937 rng(30);
    for (const char* name : {names::riemann, names::weyl}) {
      TensorField& T = s->tensor(name);
      for (int k = 0; k < 30; ++k) {
        const IndexTuple idx = random_cov(rng, 4, 4);
        for (const auto& g : group.generators()) {
          CHECK(test::equiv(*s, T(permuted(idx, g.perm)), Expr(g.sign) * T(idx)));
        }
        const auto c = group.canonicalize(idx);
        CHECK(test::equiv(*s, T(idx), Expr(c.sign) * T(c.idx)));
      }
    }
  }
}
