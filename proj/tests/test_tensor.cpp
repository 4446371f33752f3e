#include <random>

#include "doctest.h"
#include "grg/deriv.hpp"
#include "grg/error.hpp"
#include "support.hpp"

using namespace grg;
using grg::test::P;

namespace {

IndexTuple random_tuple(std::mt19937& rng, int rank, int dim, bool mixed) {
  std::uniform_int_distribution<int> v(1, dim);
  std::bernoulli_distribution flip(0.5);
  IndexTuple idx;
  for (int k = 0; k < rank; ++k) idx.push_back(mixed && flip(rng) ? -v(rng) : v(rng));
  return idx;
}

}  // namespace

TEST_SUITE("tensor") {
  TEST_CASE("symmetry group closure and canonical orbit minimum") {
    SymmetryGroup riemann(4, riemann_symmetries());
    CHECK(riemann.elements().size() == 8);
    auto c = riemann.canonicalize({2, 1, 1, 2});
    CHECK(c.idx == IndexTuple{1, 2, 1, 2});
    CHECK(c.sign == -1);
    c = riemann.canonicalize({3, 4, 1, 2});
    CHECK(c.idx == IndexTuple{1, 2, 3, 4});
    CHECK(c.sign == 1);
    CHECK(riemann.canonicalize({1, 1, 2, 3}).sign == 0);
    CHECK(riemann.canonicalize({1, 2, 3, 3}).sign == 0);

    std::mt19937 rng(7);
    for (int k = 0; k < 200; ++k) {
      const IndexTuple idx = random_tuple(rng, 4, 4, false);
      const auto once = riemann.canonicalize(idx);
      if (once.sign == 0) continue;
      const auto twice = riemann.canonicalize(once.idx);
      CHECK(twice.idx == once.idx);
      CHECK(twice.sign == 1);
    }

    CHECK_THROWS_AS(SymmetryGroup(2, {Symmetry{{0, 0}, 1}}), DomainError);
    CHECK_THROWS_AS(SymmetryGroup(2, {swap_slots(2, 0, 1, 1), swap_slots(2, 0, 1, -1)}), DomainError);
    CHECK(SymmetryGroup(3, {}).trivial());
  }

  TEST_CASE("symmetric tensor evaluates one representative") {
    auto s = test::polar();
    int calls = 0;
    TensorField& t = s->define_tensor(
        "T", 2, [&](const IndexTuple& i) { ++calls; return pow(P("r"), Expr(i[0] + i[1])); }, {swap_slots(2, 0, 1, 1)});
    t(1, 2);
    CHECK(calls == 1);
    t(2, 1);
    CHECK(calls == 1);
    CHECK(t.base_evaluations() == 1);
    CHECK(t.evaluated_count() == 2);
    CHECK(t(2, 1) == t(1, 2));
  }

  TEST_CASE("antisymmetry forces diagonal zeros without evaluation") {
    auto s = test::polar();
    int calls = 0;
    TensorField& f = s->define_tensor(
        "F", 2, [&](const IndexTuple&) { ++calls; return P("r"); }, {swap_slots(2, 0, 1, -1)});
    CHECK(f(1, 1) == Expr(0));
    CHECK(calls == 0);
    CHECK(f(2, 1) == P("-r"));
    CHECK(calls == 1);
  }

  TEST_CASE("arity and range errors") {
    auto s = test::schwarzschild();
    TensorField& r = s->tensor(names::riemann);
    CHECK_THROWS_AS(r(1, 2, 1), IndexError);
    CHECK_THROWS_AS(r(1, 2, 1, 5), IndexError);
    CHECK_THROWS_AS(r(1, 2, 0, 1), IndexError);
    CHECK_THROWS_AS(s->tensor("nope"), UnknownTensorError);
    CHECK_THROWS_AS(s->tensor(names::christoffel)(1, 2, 2), IndexError);
  }

  TEST_CASE("valence conversion matches explicit metric contraction") {
    auto s = test::schwarzschild();
    test::Oracle o(s->manifold());
    TensorField& r = s->tensor(names::riemann);
    // every index raised: g^11 g^22 g^11 g^22 R_1212
    const Expr up = r(-1, -2, -1, -2);
    const Manifold& m = s->manifold();
    const Expr dense = m.metric(-1, -1) * m.metric(-2, -2) * m.metric(-1, -1) * m.metric(-2, -2) * o.riemann(1, 2, 1, 2);
    CHECK(test::equiv(*s, up, dense));
    CHECK(test::equiv(*s, up, P("-2*M/r^3")));
  }

  TEST_CASE("tensor_ext matrix and vector forms") {
    auto s = test::schwarzschild();
    const Manifold& m = s->manifold();
    Matrix g(4);
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) g[static_cast<std::size_t>(i - 1)].push_back(m.metric(i, j));
    }
    TensorField& G = s->tensor_ext("G", g);
    for (int i = 1; i <= 4; ++i) {
      for (int j = 1; j <= 4; ++j) CHECK(test::equiv(*s, G(-i, -j), m.metric(-i, -j)));
    }
    TensorField& v = s->tensor_ext("v", std::vector<Expr>{P("t"), P("r"), Expr(0), Expr(0)});
    CHECK(test::equiv(*s, v(-1), m.metric(-1, -1) * P("t")));
    CHECK_THROWS_AS(s->tensor_ext("bad", {1, 1}, {Expr(1)}), DomainError);
    CHECK_THROWS_AS(s->tensor_ext("bad", Matrix{{Expr(1)}}), DomainError);
  }

  TEST_CASE("cacheview keeps mixed-valence keys in insertion order") {
    auto s = test::schwarzschild();
    TensorField& r = s->tensor(names::riemann);
    CHECK(r.cacheview().empty());
    r(-4, 1, 4, 1);
    r(-3, 1, 3, 1);
    CHECK(r.cacheview() == std::vector<IndexTuple>{{-4, 1, 4, 1}, {-3, 1, 3, 1}});
    r.retreat();
    CHECK(r.cacheview().empty());
    CHECK(r.evaluated_count() == 0);
  }

  TEST_CASE("associated and retreat scopes") {
    auto s = test::schwarzschild();
    TensorField& r = s->tensor(names::riemann);
    TensorField& dr = covariant_d(*s, names::riemann);
    dr(1, 2, 1, 2, 2);
    const auto own = r.cacheview().size();
    const auto all = s->associated(names::riemann);
    CHECK(all.size() == own + dr.cacheview().size());
    CHECK(all.back().first == "covariantD[riemann]");
    CHECK(all.back().second == IndexTuple{1, 2, 1, 2, 2});

    s->retreat(names::riemann, RetreatScope::Self);
    CHECK(r.cacheview().empty());
    CHECK_FALSE(dr.cacheview().empty());
    s->retreat(names::riemann, RetreatScope::Associated);
    CHECK(s->associated(names::riemann).empty());
    CHECK_NOTHROW(s->retreat(names::riemann));
  }

  TEST_CASE("fresh tensor without derived caches") {
    auto s = test::schwarzschild();
    TensorField& r = s->tensor(names::riemann);
    CHECK(r.evaluated_count() == 0);
    r(1, 2, 1, 2);
    const auto a = s->associated(names::riemann);
    REQUIRE(a.size() == r.cacheview().size());
    for (std::size_t k = 0; k < a.size(); ++k) CHECK(a[k].second == r.cacheview()[k]);
  }

  TEST_CASE("ricci scalar reads 16 riemann components, full ricci 40") {
    auto s = test::schwarzschild();
    CHECK(ricci_scalar(*s) == Expr(0));
    CHECK(s->tensor(names::riemann).evaluated_count() == 16);

    auto t = test::schwarzschild();
    TensorField& ric = t->tensor(names::ricci);
    for (int i = 1; i <= 4; ++i) {
      for (int j = i; j <= 4; ++j) CHECK(ric(i, j) == Expr(0));
    }
    CHECK(t->tensor(names::riemann).evaluated_count() == 40);
    const auto before = t->tensor(names::riemann).base_evaluations();
    ric(2, 1);
    CHECK(t->tensor(names::riemann).base_evaluations() == before);
  }

  TEST_CASE("redefinition warns and clears caches") {
    auto s = test::polar();
    TensorField& t = s->define_tensor("T", 1, [](const IndexTuple&) { return Expr(1); });
    t(1);
    s->tensor(names::metric)(1, 1);
    CHECK(s->warnings().empty());
    TensorField& t2 = s->define_tensor("T", 1, [](const IndexTuple&) { return Expr(2); });
    CHECK(s->warnings().size() == 1);
    CHECK(s->tensor(names::metric).cacheview().empty());
    CHECK(t2(1) == Expr(2));
  }

  TEST_CASE("repeated requests never reevaluate and retreat reproduces values") {
    auto s = test::schwarzschild();
    std::mt19937 rng(20150101);
    const std::vector<std::string> pool{names::riemann, names::ricci, names::weyl, names::christoffel, names::metric};
    for (int k = 0; k < 100; ++k) {
      const std::string& name = pool[static_cast<std::size_t>(k) % pool.size()];
      TensorField& t = s->tensor(name);
      IndexTuple idx = random_tuple(rng, t.rank(), 4, name != names::christoffel);
      if (name == names::christoffel) idx[0] = -idx[0];
      const Expr first = t(idx);
      std::vector<std::size_t> evals;
      for (const auto& n : s->tensor_names()) evals.push_back(s->tensor(n).base_evaluations());
      CHECK(t(idx) == first);
      std::size_t i = 0;
      for (const auto& n : s->tensor_names()) CHECK(s->tensor(n).base_evaluations() == evals[i++]);
    }
    TensorField& r = s->tensor(names::riemann);
    const auto keys = r.cacheview();
    std::vector<Expr> values;
    for (const auto& k : keys) values.push_back(r(k));
    s->clear_caches();
    for (std::size_t k = 0; k < keys.size(); ++k) CHECK(r(keys[k]) == values[k]);
  }

  TEST_CASE("lowering then raising returns the original component") {
    for (unsigned seed : {1u, 2u, 3u}) {
      auto s = test::random_diagonal3(seed);
      std::vector<Expr> values;
      for (int k = 0; k < 9; ++k) values.push_back(P("x") * Expr(k + 1) + P("y*z") * Expr(k % 3));
      TensorField& t = s->tensor_ext("T", {-1, 1}, values);
      const Manifold& m = s->manifold();
      for (int a = 1; a <= 3; ++a) {
        for (int b = 1; b <= 3; ++b) {
          Expr raised(0);
          for (int c = 1; c <= 3; ++c) raised = raised + m.metric(-a, -c) * t(c, b);
          CHECK(test::equiv(*s, raised, t(-a, b)));
        }
      }
    }
  }

  TEST_CASE("joint evaluation shares the cache") {
    auto joint = test::schwarzschild();
    ricci_scalar(*joint);
    kretschmann(*joint);
    auto a = test::schwarzschild();
    ricci_scalar(*a);
    auto b = test::schwarzschild();
    kretschmann(*b);
    const auto count = [](Session& s) { return s.tensor(names::riemann).evaluated_count(); };
    CHECK(count(*joint) <= count(*a) + count(*b));
  }

  TEST_CASE("contraction validates patterns") {
    auto s = test::polar();
    TensorField* g = &s->tensor(names::metric);
    CHECK(contract(*s, {{g, "a -a"}}) == Expr(2));
    CHECK_THROWS_AS(contract(*s, {{g, "a b"}}), IndexError);
    CHECK_THROWS_AS(contract(*s, {{g, "a"}}), IndexError);
    CHECK_THROWS_AS(contract(*s, {{g, "a 1"}}), IndexError);
    CHECK(contract(*s, {{g, "a b"}}, {{'a', 2}, {'b', 2}}) == P("r^2"));
  }
}
