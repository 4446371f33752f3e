#include "doctest.h"
#include "grg/error.hpp"
#include "grg/hypersurface.hpp"
#include "support.hpp"

using namespace grg;
using grg::test::P;

namespace {

std::unique_ptr<Session> static_observer() {
  auto s = test::schwarzschild();
  s->tensor_ext("v", std::vector<Expr>{P("Sqrt[1 - 2*M/r]"), Expr(0), Expr(0), Expr(0)});
  return s;
}

}  // namespace

TEST_SUITE("hypersurface") {
  TEST_CASE("vector norms") {
    auto s = static_observer();
    CHECK(test::equiv(*s, vector_squared(*s, "v"), Expr(-1)));
    auto e = test::cartesian(3);
    e->tensor_ext("x", std::vector<Expr>{Expr(1), Expr(0), Expr(0)});
    CHECK(vector_squared(*e, "x") == Expr(1));
    e->tensor_ext("zero", std::vector<Expr>{Expr(0), Expr(0), Expr(0)});
    CHECK_THROWS_WITH_AS(vector_squared(*e, "zero"), "null vector", DomainError);
    CHECK_THROWS_AS(induced_metric(*e, "zero"), DomainError);
  }

  TEST_CASE("static observer induced metric") {
    auto s = static_observer();
    TensorField& h = induced_metric(*s, "v");
    CHECK(h.name() == "h[v]");
    CHECK(h(1, 1) == Expr(0));
    CHECK(h(2, 2) == s->manifold().metric(2, 2));
    TensorField* H = &h;
    TensorField* V = &s->tensor("v");
    for (int i = 1; i <= 4; ++i) CHECK(contract(*s, {{H, "i j"}, {V, "-j"}}, {{'i', i}}) == Expr(0));
  }

  TEST_CASE("projector is idempotent with trace dim - 1") {
    auto s = static_observer();
    TensorField* H = &induced_metric(*s, "v");
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) {
        CHECK(test::equiv(*s, contract(*s, {{H, "i -s"}, {H, "s j"}}, {{'i', i}, {'j', j}}), (*H)(i, j)));
      }
    }
    CHECK(contract(*s, {{H, "i -i"}}) == Expr(3));
  }

  TEST_CASE("non-unit vectors are normalized") {
    auto s = test::polar();
    s->tensor_ext("w", std::vector<Expr>{P("2*r"), Expr(0)});
    TensorField& h = induced_metric(*s, "w");
    CHECK(h(1, 1) == Expr(0));
    CHECK(h(2, 2) == P("r^2"));
    CHECK(contract(*s, {{&h, "i -i"}}) == Expr(1));
  }

  TEST_CASE("symmetry guard") {
    auto s = static_observer();
    TensorField& h = induced_metric(*s, "v");
    h(1, 2);
    const auto n = h.base_evaluations();
    h(2, 1);
    CHECK(h.base_evaluations() == n);
  }

  TEST_CASE("second fundamental form") {
    auto s = static_observer();
    TensorField& K = second_fundamental_form(*s, "v");
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) CHECK(K(i, j) == Expr(0));
    }

    // spheres of constant r in flat polar coordinates: K = h_i^a h_j^b n_b;a
    auto p = test::session({"r", "theta", "phi"}, "Dt[r]^2 + r^2*(Dt[theta]^2 + Sin[theta]^2*Dt[phi]^2)",
                           {"0 < r", "0 < theta < Pi"});
    p->tensor_ext("n", std::vector<Expr>{Expr(1), Expr(0), Expr(0)});
    TensorField& k = second_fundamental_form(*p, "n");
    CHECK(k(2, 2) == P("r"));
    CHECK(k(3, 3) == P("r*Sin[theta]^2"));
    CHECK(k(2, 3) == k(3, 2));
    TensorField* N = &p->tensor("n");
    for (int i = 1; i <= 3; ++i) CHECK(contract(*p, {{&k, "i j"}, {N, "-j"}}, {{'i', i}}) == Expr(0));
  }
}
