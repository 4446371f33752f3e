#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace grg {

enum class ExprKind : std::uint8_t {
  Rational,
  Imaginary,
  Symbol,
  Opaque,
  Function,
  Power,
  Product,
  Sum,
};

enum class FnKind : std::uint8_t {
  Sin, Cos, Tan, Cot, Sec, Csc,
  Sinh, Cosh, Tanh, Coth, Sech, Csch,
  Exp, Log, Sqrt,
};

/// Output spelling, e.g. "Cosh".
std::string_view fn_name(FnKind fn);

/// Accepts both the capitalized output spelling and the lowercase form.
std::optional<FnKind> fn_from_name(std::string_view name);

namespace detail {
struct Node;
}

/// Immutable symbolic expression.
///
/// Every factory applies light canonicalization: sums and products are
/// flattened and sorted, rational constants merged, like terms and like
/// bases combined, I^2 rewritten to -1, 0*x to 0, 1*x to x and x^1 to x.
/// No algebraic rewriting beyond that happens here; see simplify().
class Expr {
 public:
  Expr();
  Expr(int value);  // NOLINT(google-explicit-constructor)
  Expr(long value);  // NOLINT(google-explicit-constructor)

  static Expr rational(const mpq_class& value);
  static Expr rational(long num, long den);
  static Expr symbol(std::string name);
  static Expr imaginary_unit();
  static Expr sum(std::vector<Expr> operands);
  static Expr product(std::vector<Expr> operands);
  static Expr power(const Expr& base, const Expr& exponent);
  static Expr function(FnKind fn, const Expr& arg);
  /// Opaque function of coordinate symbols with per-argument partial
  /// derivative orders; an empty `orders` means all zero.
  static Expr opaque(std::string name, std::vector<Expr> args, std::vector<int> orders = {});

  ExprKind kind() const noexcept;
  bool is(ExprKind k) const noexcept { return kind() == k; }
  bool is_rational() const noexcept { return kind() == ExprKind::Rational; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;
  bool is_integer() const noexcept;
  bool is_negative_rational() const noexcept;

  /// Rational value; only valid for Rational nodes.
  const mpq_class& value() const;
  /// Symbol or opaque-function name.
  const std::string& name() const;
  /// Sum/Product operands, Power {base, exponent}, Function {arg}, Opaque args.
  std::span<const Expr> operands() const noexcept;
  const Expr& base() const;
  const Expr& exponent() const;
  const Expr& arg() const;
  FnKind fn() const;
  std::span<const int> orders() const;

  std::size_t hash() const noexcept;
  bool same_node(const Expr& other) const noexcept { return node_ == other.node_; }

  friend bool operator==(const Expr& a, const Expr& b) noexcept;
  friend bool operator!=(const Expr& a, const Expr& b) noexcept { return !(a == b); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  Expr& operator+=(const Expr& other) { return *this = *this + other; }
  Expr& operator-=(const Expr& other) { return *this = *this - other; }
  Expr& operator*=(const Expr& other) { return *this = *this * other; }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> node) : node_(std::move(node)) {}
  friend struct detail::Node;
  friend class ExprBuilder;

  std::shared_ptr<const detail::Node> node_;
};

Expr pow(const Expr& base, const Expr& exponent);
Expr sqrt(const Expr& e);

/// Total structural order on canonical expressions; 0 iff structurally equal.
int compare(const Expr& a, const Expr& b);

struct ExprHash {
  std::size_t operator()(const Expr& e) const noexcept { return e.hash(); }
};

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

/// True if `e` contains `x` anywhere in its tree.
bool depends_on(const Expr& e, const Expr& x);

/// Names of all free symbols, sorted.
std::vector<std::string> free_symbols(const Expr& e);

/// Splits a term into rational coefficient and remaining factor (1 if none).
std::pair<mpq_class, Expr> split_coefficient(const Expr& term);

}  // namespace grg

template <>
struct std::hash<grg::Expr> {
  std::size_t operator()(const grg::Expr& e) const noexcept { return e.hash(); }
};
