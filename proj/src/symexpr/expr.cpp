#include "grg/expr.hpp"

#include <algorithm>
#include <array>
#include <unordered_map>

#include "grg/error.hpp"

namespace grg {

namespace detail {

struct Node {
  ExprKind kind = ExprKind::Rational;
  FnKind fn = FnKind::Sin;
  std::size_t hash = 0;
  mpq_class value;
  std::string name;
  std::vector<Expr> ops;
  std::vector<int> orders;
};

}  // namespace detail

namespace {

constexpr std::array<std::string_view, 15> kFnNames = {
    "Sin", "Cos", "Tan", "Cot", "Sec", "Csc", "Sinh", "Cosh",
    "Tanh", "Coth", "Sech", "Csch", "Exp", "Log", "Sqrt"};

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_mpz(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 2);
  const auto limbs = mpz_size(z.get_mpz_t());
  h = mix(h, limbs);
  for (std::size_t i = 0; i < limbs && i < 4; ++i) {
    h = mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i))));
  }
  return h;
}

int kind_rank(ExprKind k) { return static_cast<int>(k); }

}  // namespace

// Raw node construction, bypassing canonicalization. Callers guarantee the
// operands are already canonical.
class ExprBuilder {
 public:
  static Expr make(detail::Node node) {
    std::size_t h = mix(0x51ed27, static_cast<std::size_t>(node.kind));
    switch (node.kind) {
      case ExprKind::Rational:
        h = mix(h, hash_mpz(node.value.get_num()));
        h = mix(h, hash_mpz(node.value.get_den()));
        break;
      case ExprKind::Imaginary:
        break;
      case ExprKind::Symbol:
        h = mix(h, std::hash<std::string>{}(node.name));
        break;
      case ExprKind::Opaque:
        h = mix(h, std::hash<std::string>{}(node.name));
        for (int o : node.orders) h = mix(h, static_cast<std::size_t>(o));
        break;
      case ExprKind::Function:
        h = mix(h, static_cast<std::size_t>(node.fn));
        break;
      default:
        break;
    }
    for (const auto& op : node.ops) h = mix(h, op.hash());
    node.hash = h;
    return Expr(std::make_shared<const detail::Node>(std::move(node)));
  }

  static Expr rational(mpq_class v) {
    detail::Node n;
    n.kind = ExprKind::Rational;
    v.canonicalize();
    n.value = std::move(v);
    return make(std::move(n));
  }

  static Expr compound(ExprKind kind, std::vector<Expr> ops) {
    detail::Node n;
    n.kind = kind;
    n.ops = std::move(ops);
    return make(std::move(n));
  }

  static const detail::Node& node(const Expr& e) { return *e.node_; }
};

namespace {

const Expr& zero_expr() {
  static const Expr z = ExprBuilder::rational(mpq_class(0));
  return z;
}

const Expr& one_expr() {
  static const Expr o = ExprBuilder::rational(mpq_class(1));
  return o;
}

const Expr& minus_one_expr() {
  static const Expr m = ExprBuilder::rational(mpq_class(-1));
  return m;
}

// Rebuild coef*rest where rest carries no rational coefficient.
Expr make_term(const mpq_class& coef, const Expr& rest) {
  if (coef == 0) return zero_expr();
  if (rest.is_one()) return ExprBuilder::rational(coef);
  if (coef == 1) return rest;
  std::vector<Expr> ops;
  ops.push_back(ExprBuilder::rational(coef));
  if (rest.is(ExprKind::Product)) {
    ops.insert(ops.end(), rest.operands().begin(), rest.operands().end());
  } else {
    ops.push_back(rest);
  }
  return ExprBuilder::compound(ExprKind::Product, std::move(ops));
}

bool exact_root(const mpz_class& value, unsigned long n, mpz_class& out) {
  if (value < 0) return false;
  return mpz_root(out.get_mpz_t(), value.get_mpz_t(), n) != 0;
}

int compare_seq(std::span<const Expr> a, std::span<const Expr> b) {
  auto ia = a.size();
  auto ib = b.size();
  while (ia > 0 && ib > 0) {
    --ia;
    --ib;
    int c = compare(a[ia], b[ib]);
    if (c != 0) return c;
  }
  if (ia == 0 && ib == 0) return 0;
  return ia == 0 ? -1 : 1;
}

int compare_same_kind(const Expr& a, const Expr& b) {
  switch (a.kind()) {
    case ExprKind::Rational:
      return cmp(a.value(), b.value()) < 0 ? -1 : (cmp(a.value(), b.value()) > 0 ? 1 : 0);
    case ExprKind::Imaginary:
      return 0;
    case ExprKind::Symbol:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case ExprKind::Opaque: {
      if (a.name() != b.name()) return a.name() < b.name() ? -1 : 1;
      const auto ao = a.orders();
      const auto bo = b.orders();
      // Higher derivative orders sort first: f^(2,0) before f^(0,2).
      for (std::size_t i = 0; i < std::min(ao.size(), bo.size()); ++i) {
        if (ao[i] != bo[i]) return ao[i] > bo[i] ? -1 : 1;
      }
      if (ao.size() != bo.size()) return ao.size() < bo.size() ? -1 : 1;
      const auto aa = a.operands();
      const auto ba = b.operands();
      for (std::size_t i = 0; i < std::min(aa.size(), ba.size()); ++i) {
        int c = compare(aa[i], ba[i]);
        if (c != 0) return c;
      }
      return aa.size() == ba.size() ? 0 : (aa.size() < ba.size() ? -1 : 1);
    }
    case ExprKind::Function:
      if (a.fn() != b.fn()) {
        return fn_name(a.fn()) < fn_name(b.fn()) ? -1 : 1;
      }
      return compare(a.arg(), b.arg());
    case ExprKind::Power: {
      int c = compare(a.base(), b.base());
      return c != 0 ? c : compare(a.exponent(), b.exponent());
    }
    case ExprKind::Product:
    case ExprKind::Sum:
      return compare_seq(a.operands(), b.operands());
  }
  return 0;
}

int compare_mixed(const Expr& a, const Expr& b) {
  const ExprKind ka = a.kind();
  const ExprKind kb = b.kind();
  if (ka == ExprKind::Product) return compare_seq(a.operands(), std::span<const Expr>(&b, 1));
  if (kb == ExprKind::Product) return -compare_mixed(b, a);
  if (ka == ExprKind::Power) {
    int c = compare(a.base(), b);
    return c != 0 ? c : compare(a.exponent(), one_expr());
  }
  if (kb == ExprKind::Power) return -compare_mixed(b, a);
  if (ka == ExprKind::Sum) return compare_seq(a.operands(), std::span<const Expr>(&b, 1));
  if (kb == ExprKind::Sum) return -compare_mixed(b, a);
  return kind_rank(ka) < kind_rank(kb) ? -1 : 1;
}

}  // namespace

std::string_view fn_name(FnKind fn) { return kFnNames[static_cast<std::size_t>(fn)]; }

std::optional<FnKind> fn_from_name(std::string_view name) {
  for (std::size_t i = 0; i < kFnNames.size(); ++i) {
    const auto canonical = kFnNames[i];
    if (name == canonical) return static_cast<FnKind>(i);
    if (name.size() == canonical.size() && name[0] == canonical[0] + ('a' - 'A') &&
        name.substr(1) == canonical.substr(1)) {
      return static_cast<FnKind>(i);
    }
  }
  return std::nullopt;
}

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(int value) : Expr(static_cast<long>(value)) {}
Expr::Expr(long value) : Expr(ExprBuilder::rational(mpq_class(value))) {}

Expr Expr::rational(const mpq_class& value) { return ExprBuilder::rational(value); }

Expr Expr::rational(long num, long den) {
  if (den == 0) throw DomainError("division by zero");
  return ExprBuilder::rational(mpq_class(num, den));
}

Expr Expr::symbol(std::string name) {
  detail::Node n;
  n.kind = ExprKind::Symbol;
  n.name = std::move(name);
  return ExprBuilder::make(std::move(n));
}

Expr Expr::imaginary_unit() {
  static const Expr i = [] {
    detail::Node n;
    n.kind = ExprKind::Imaginary;
    return ExprBuilder::make(std::move(n));
  }();
  return i;
}

Expr Expr::sum(std::vector<Expr> operands) {
  mpq_class constant = 0;
  std::vector<std::pair<Expr, mpq_class>> terms;
  std::unordered_map<Expr, std::size_t, ExprHash> index;
  terms.reserve(operands.size());

  auto add = [&](const Expr& op) {
    if (op.is_rational()) {
      constant += op.value();
      return;
    }
    auto [coef, rest] = split_coefficient(op);
    auto [it, inserted] = index.try_emplace(rest, terms.size());
    if (inserted) {
      terms.emplace_back(rest, coef);
    } else {
      terms[it->second].second += coef;
    }
  };
  for (const auto& op : operands) {
    if (op.is(ExprKind::Sum)) {
      for (const auto& inner : op.operands()) add(inner);
    } else {
      add(op);
    }
  }

  std::vector<Expr> out;
  out.reserve(terms.size() + 1);
  for (const auto& [rest, coef] : terms) {
    if (coef != 0) out.push_back(make_term(coef, rest));
  }
  if (constant != 0) out.push_back(ExprBuilder::rational(constant));
  if (out.empty()) return zero_expr();
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end(), ExprLess{});
  return ExprBuilder::compound(ExprKind::Sum, std::move(out));
}

Expr Expr::product(std::vector<Expr> operands) {
  mpq_class coef = 1;
  std::vector<std::pair<Expr, std::vector<Expr>>> groups;
  std::unordered_map<Expr, std::size_t, ExprHash> index;

  auto add = [&](const Expr& op) {
    if (op.is_rational()) {
      coef *= op.value();
      return;
    }
    const bool is_pow = op.is(ExprKind::Power);
    const Expr& base = is_pow ? op.base() : op;
    const Expr exp = is_pow ? op.exponent() : one_expr();
    auto [it, inserted] = index.try_emplace(base, groups.size());
    if (inserted) {
      groups.emplace_back(base, std::vector<Expr>{exp});
    } else {
      groups[it->second].second.push_back(exp);
    }
  };
  for (const auto& op : operands) {
    if (op.is(ExprKind::Product)) {
      for (const auto& inner : op.operands()) add(inner);
    } else {
      add(op);
    }
    if (coef == 0) return zero_expr();
  }

  std::vector<Expr> factors;
  std::vector<Expr> redo;
  factors.reserve(groups.size());
  for (auto& [base, exps] : groups) {
    Expr exp = exps.size() == 1 ? exps.front() : Expr::sum(std::move(exps));
    Expr p = Expr::power(base, exp);
    if (p.is_rational()) {
      coef *= p.value();
      if (coef == 0) return zero_expr();
    } else if (p.is(ExprKind::Product)) {
      redo.push_back(std::move(p));
    } else {
      factors.push_back(std::move(p));
    }
  }
  if (!redo.empty()) {
    factors.insert(factors.end(), redo.begin(), redo.end());
    factors.push_back(ExprBuilder::rational(coef));
    return Expr::product(std::move(factors));
  }
  if (factors.empty()) return ExprBuilder::rational(coef);
  if (coef == 1 && factors.size() == 1) return factors.front();
  std::sort(factors.begin(), factors.end(), ExprLess{});
  if (coef != 1) factors.insert(factors.begin(), ExprBuilder::rational(coef));
  return ExprBuilder::compound(ExprKind::Product, std::move(factors));
}

Expr Expr::power(const Expr& base, const Expr& exponent) {
  if (exponent.is_zero()) return one_expr();
  if (exponent.is_one()) return base;
  if (base.is_one()) return one_expr();
  if (base.is_zero()) {
    if (exponent.is_rational()) {
      if (exponent.value() > 0) return zero_expr();
      throw DomainError("division by zero");
    }
  }
  if (base.is_rational() && exponent.is_rational()) {
    const mpq_class& e = exponent.value();
    if (e.get_den() == 1) {
      if (!e.get_num().fits_slong_p()) throw DomainError("exponent too large");
      long n = e.get_num().get_si();
      mpq_class b = base.value();
      if (n < 0) {
        b = 1 / b;
        n = -n;
      }
      mpq_class result;
      mpz_pow_ui(result.get_num_mpz_t(), b.get_num_mpz_t(), static_cast<unsigned long>(n));
      mpz_pow_ui(result.get_den_mpz_t(), b.get_den_mpz_t(), static_cast<unsigned long>(n));
      return ExprBuilder::rational(result);
    }
    if (e.get_den().fits_ulong_p()) {
      mpz_class rn, rd;
      const unsigned long root = e.get_den().get_ui();
      if (exact_root(base.value().get_num(), root, rn) &&
          exact_root(base.value().get_den(), root, rd)) {
        return Expr::power(ExprBuilder::rational(mpq_class(rn, rd)),
                           ExprBuilder::rational(mpq_class(e.get_num())));
      }
    }
  }
  if (exponent.is_integer()) {
    const mpz_class n = exponent.value().get_num();
    if (base.is(ExprKind::Imaginary)) {
      const long r = mpz_class(((n % 4) + 4) % 4).get_si();
      switch (r) {
        case 0: return one_expr();
        case 1: return base;
        case 2: return minus_one_expr();
        default: return ExprBuilder::compound(ExprKind::Product, {minus_one_expr(), base});
      }
    }
    if (base.is(ExprKind::Power)) {
      return Expr::power(base.base(), Expr::product({base.exponent(), exponent}));
    }
    if (base.is(ExprKind::Product)) {
      std::vector<Expr> ops;
      ops.reserve(base.operands().size());
      for (const auto& f : base.operands()) ops.push_back(Expr::power(f, exponent));
      return Expr::product(std::move(ops));
    }
  }
  return ExprBuilder::compound(ExprKind::Power, {base, exponent});
}

Expr Expr::function(FnKind fn, const Expr& arg) {
  if (fn == FnKind::Sqrt) return Expr::power(arg, Expr::rational(1, 2));
  if (arg.is_zero()) {
    switch (fn) {
      case FnKind::Sin: case FnKind::Tan: case FnKind::Sinh: case FnKind::Tanh:
        return zero_expr();
      case FnKind::Cos: case FnKind::Sec: case FnKind::Cosh: case FnKind::Sech:
      case FnKind::Exp:
        return one_expr();
      default:
        break;
    }
  }
  if (fn == FnKind::Log && arg.is_one()) return zero_expr();
  detail::Node n;
  n.kind = ExprKind::Function;
  n.fn = fn;
  n.ops = {arg};
  return ExprBuilder::make(std::move(n));
}

Expr Expr::opaque(std::string name, std::vector<Expr> args, std::vector<int> orders) {
  if (orders.empty()) orders.assign(args.size(), 0);
  if (orders.size() != args.size()) {
    throw DomainError("opaque function '" + name + "': derivative orders do not match arity");
  }
  for (int o : orders) {
    if (o < 0) throw DomainError("negative derivative order");
  }
  detail::Node n;
  n.kind = ExprKind::Opaque;
  n.name = std::move(name);
  n.ops = std::move(args);
  n.orders = std::move(orders);
  return ExprBuilder::make(std::move(n));
}

ExprKind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_zero() const noexcept { return node_->kind == ExprKind::Rational && node_->value == 0; }
bool Expr::is_one() const noexcept { return node_->kind == ExprKind::Rational && node_->value == 1; }

bool Expr::is_integer() const noexcept {
  return node_->kind == ExprKind::Rational && node_->value.get_den() == 1;
}

bool Expr::is_negative_rational() const noexcept {
  return node_->kind == ExprKind::Rational && node_->value < 0;
}

const mpq_class& Expr::value() const {
  if (node_->kind != ExprKind::Rational) throw DomainError("value() on non-rational expression");
  return node_->value;
}

const std::string& Expr::name() const { return node_->name; }
std::span<const Expr> Expr::operands() const noexcept { return node_->ops; }
const Expr& Expr::base() const { return node_->ops.at(0); }
const Expr& Expr::exponent() const { return node_->ops.at(1); }
const Expr& Expr::arg() const { return node_->ops.at(0); }
FnKind Expr::fn() const { return node_->fn; }
std::span<const int> Expr::orders() const { return node_->orders; }
std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) noexcept {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind) return false;
  switch (x.kind) {
    case ExprKind::Rational: return x.value == y.value;
    case ExprKind::Imaginary: return true;
    case ExprKind::Symbol: return x.name == y.name;
    case ExprKind::Opaque:
      if (x.name != y.name || x.orders != y.orders) return false;
      break;
    case ExprKind::Function:
      if (x.fn != y.fn) return false;
      break;
    default:
      break;
  }
  return x.ops == y.ops;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, Expr::product({minus_one_expr(), b})}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) {
  return Expr::product({a, Expr::power(b, minus_one_expr())});
}
Expr operator-(const Expr& a) { return Expr::product({minus_one_expr(), a}); }

Expr pow(const Expr& base, const Expr& exponent) { return Expr::power(base, exponent); }
Expr sqrt(const Expr& e) { return Expr::power(e, Expr::rational(1, 2)); }

int compare(const Expr& a, const Expr& b) {
  if (a.same_node(b)) return 0;
  const bool ra = a.is_rational();
  const bool rb = b.is_rational();
  if (ra && rb) return compare_same_kind(a, b);
  if (ra) return -1;
  if (rb) return 1;
  int c = a.kind() == b.kind() ? compare_same_kind(a, b) : compare_mixed(a, b);
  if (c == 0 && a.kind() != b.kind()) c = kind_rank(a.kind()) < kind_rank(b.kind()) ? -1 : 1;
  return c;
}

bool depends_on(const Expr& e, const Expr& x) {
  if (e == x) return true;
  for (const auto& op : e.operands()) {
    if (depends_on(op, x)) return true;
  }
  return false;
}

namespace {
void collect_symbols(const Expr& e, std::vector<std::string>& out) {
  if (e.is(ExprKind::Symbol)) {
    out.push_back(e.name());
    return;
  }
  for (const auto& op : e.operands()) collect_symbols(op, out);
}
}  // namespace

std::vector<std::string> free_symbols(const Expr& e) {
  std::vector<std::string> out;
  collect_symbols(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::pair<mpq_class, Expr> split_coefficient(const Expr& term) {
  if (term.is_rational()) return {term.value(), one_expr()};
  if (term.is(ExprKind::Product) && term.operands().front().is_rational()) {
    const auto ops = term.operands();
    if (ops.size() == 2) return {ops[0].value(), ops[1]};
    return {ops[0].value(),
            ExprBuilder::compound(ExprKind::Product, std::vector<Expr>(ops.begin() + 1, ops.end()))};
  }
  return {mpq_class(1), term};
}

}  // namespace grg
