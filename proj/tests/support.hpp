#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "grg/curvature.hpp"
#include "grg/symexpr.hpp"

namespace grg::test {

inline Expr P(std::string_view text) { return parse(text); }

AssumptionSet assumptions(const std::vector<std::string>& lines);

/// Sessions on the worked metrics.
std::unique_ptr<Session> schwarzschild();
std::unique_ptr<Session> catenoid();
std::unique_ptr<Session> sphere2();
std::unique_ptr<Session> polar();
std::unique_ptr<Session> minkowski();
std::unique_ptr<Session> cartesian(int dim);
/// diag(-1, a(t)^2, a(t)^2, a(t)^2) with a opaque.
std::unique_ptr<Session> flrw();
/// Random diagonal dim-3 metric with polynomial entries, positive on the
/// sampling box.
std::unique_ptr<Session> random_diagonal3(unsigned seed);

template <typename... S>
std::vector<std::unique_ptr<Session>> all(S&&... s) {
  std::vector<std::unique_ptr<Session>> v;
  (v.push_back(std::forward<S>(s)), ...);
  return v;
}

std::unique_ptr<Session> session(const std::vector<std::string>& coords, const std::string& line_element,
                                 const std::vector<std::string>& assume);

bool equiv(const Session& s, const Expr& a, const Expr& b);

/// Dense curvature computed straight from the metric with nested loops,
/// sharing no code with the tensor registry.
class Oracle {
 public:
  explicit Oracle(const Manifold& m);

  const Expr& gamma(int a, int b, int c) const;  // Gamma^a_bc, 1-based
  Expr riemann_up(int a, int b, int c, int d) const;  // R^a_bcd
  Expr riemann(int a, int b, int c, int d) const;     // R_abcd
  Expr ricci(int i, int j) const;
  Expr ricci_scalar() const;

  /// Covariant derivative of an all-covariant tensor given as a function,
  /// derivative index appended last.
  using Field = std::function<Expr(const std::vector<int>&)>;
  Field nabla(Field t) const;

 private:
  const Manifold& m_;
  int n_;
  std::vector<Expr> gamma_;
  mutable std::map<std::vector<int>, Expr> riemann_up_;
};

}  // namespace grg::test
