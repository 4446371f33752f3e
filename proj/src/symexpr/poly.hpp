#pragma once

// Sparse multivariate polynomials over Q in interned kernel variables.
// Internal to the simplifier.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

namespace grg::detail {

using Var = std::uint32_t;

/// Sparse monomial, packed as (var << 32 | exponent), sorted by var.
class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Var v, unsigned exponent = 1);

  bool is_one() const { return data_.empty(); }
  unsigned exponent(Var v) const;
  unsigned total_degree() const;
  bool divides(const Monomial& other) const;
  Monomial without(Var v) const;
  Monomial quotient(const Monomial& divisor) const;  // assumes divides()
  static Monomial gcd(const Monomial& a, const Monomial& b);

  template <typename F>
  void for_each(F&& f) const {
    for (auto p : data_) f(static_cast<Var>(p >> 32), static_cast<unsigned>(p & 0xffffffffu));
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.data_ == b.data_; }
  /// Lexicographic monomial order, smaller variable ids dominate.
  friend int mono_cmp(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint64_t> data_;
};

struct Term {
  Monomial mono;
  mpq_class coef;
};

/// Terms sorted by strictly decreasing monomial order, no zero coefficients.
class Poly {
 public:
  Poly() = default;
  static Poly constant(const mpq_class& c);
  static Poly monomial(const Monomial& m, const mpq_class& c = 1);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  mpq_class constant_value() const { return terms_.empty() ? mpq_class(0) : terms_[0].coef; }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  Poly operator-() const;
  Poly scaled(const mpq_class& c) const;
  Poly times_monomial(const Monomial& m, const mpq_class& c = 1) const;
  Poly divided_by_monomial(const Monomial& m) const;
  Poly pow(unsigned n) const;

  std::optional<Poly> divide_exact(const Poly& d) const;

  unsigned degree(Var v) const;
  /// Coefficient of v^k as a polynomial free of v.
  Poly coeff(Var v, unsigned k) const;
  std::vector<Var> variables() const;
  bool has_var(Var v) const;
  Monomial monomial_content() const;
  /// Positive rational c such that this/c has coprime integer coefficients.
  mpq_class content() const;

  static Poly from_terms(std::vector<Term> terms);  // sorts and combines

 private:
  static Poly merge(const Poly& a, const Poly& b, bool subtract);

  std::vector<Term> terms_;
};

/// Greatest common divisor, normalized to primitive integer coefficients
/// with positive leading coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace grg::detail
