#include <deque>
#include <functional>
#include <mutex>
#include <optional>
#include <numbers>
#include <unordered_map>

#include "grg/error.hpp"
#include "grg/symexpr.hpp"
#include "poly.hpp"

namespace grg {

namespace {

using detail::Monomial;
using detail::Poly;
using detail::Term;
using detail::Var;

struct RatFunc {
  Poly num;
  Poly den = Poly::constant(1);
};

RatFunc rat_constant(const mpq_class& c) { return {Poly::constant(c), Poly::constant(1)}; }
RatFunc rat_var(Var v) { return {Poly::monomial(Monomial::of(v)), Poly::constant(1)}; }

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw EvalError("internal error: inexact polynomial division");
  return *q;
}

RatFunc add(const RatFunc& a, const RatFunc& b) {
  if (a.num.is_zero()) return b;
  if (b.num.is_zero()) return a;
  if (a.den == b.den) return {a.num + b.num, a.den};
  const Poly g = detail::gcd(a.den, b.den);
  if (g.is_constant()) return {a.num * b.den + b.num * a.den, a.den * b.den};
  const Poly ad = exact(a.den, g);
  const Poly bd = exact(b.den, g);
  return {a.num * bd + b.num * ad, a.den * bd};
}

RatFunc mul(const RatFunc& a, const RatFunc& b) {
  if (a.num.is_zero() || b.num.is_zero()) return {};
  return {a.num * b.num, a.den * b.den};
}

RatFunc inverse(const RatFunc& a) {
  if (a.num.is_zero()) throw DomainError("division by zero");
  return {a.den, a.num};
}

RatFunc neg(const RatFunc& a) { return {-a.num, a.den}; }

RatFunc pow_int(const RatFunc& a, long n) {
  if (n < 0) return pow_int(inverse(a), -n);
  return {a.num.pow(static_cast<unsigned>(n)), a.den.pow(static_cast<unsigned>(n))};
}

// ---------------------------------------------------------------------------
// Kernels: the non-polynomial atoms that become polynomial variables.

enum class Rel : std::uint8_t { None, Imag, Cos, Sinh, Root };

struct KernelInfo {
  Expr expr;
  Rel rel = Rel::None;
  Var partner = 0;
  unsigned degree = 0;
  RatFunc base;
};

class KernelTable {
 public:
  static KernelTable& instance() {
    static KernelTable table;
    return table;
  }

  Var intern(const Expr& e, const std::function<KernelInfo()>& make) {
    {
      std::lock_guard lock(mu_);
      auto it = ids_.find(e);
      if (it != ids_.end()) return it->second;
    }
    KernelInfo info = make();
    info.expr = e;
    std::lock_guard lock(mu_);
    auto it = ids_.find(e);
    if (it != ids_.end()) return it->second;
    const Var id = static_cast<Var>(infos_.size());
    infos_.push_back(std::move(info));
    ids_.emplace(e, id);
    return id;
  }

  Var intern(const Expr& e) {
    return intern(e, [] { return KernelInfo{}; });
  }

  const KernelInfo& info(Var v) {
    std::lock_guard lock(mu_);
    return infos_[v];
  }

 private:
  std::mutex mu_;
  std::unordered_map<Expr, Var, ExprHash> ids_;
  std::deque<KernelInfo> infos_;
};

KernelTable& kernels() { return KernelTable::instance(); }

Expr kernel_power(Var v, unsigned e) { return pow(kernels().info(v).expr, Expr(static_cast<long>(e))); }

Expr term_expr(const Term& t) {
  std::vector<Expr> f{Expr::rational(t.coef)};
  t.mono.for_each([&](Var v, unsigned e) { f.push_back(kernel_power(v, e)); });
  return Expr::product(std::move(f));
}

Expr poly_expr(const Poly& p) {
  std::vector<Expr> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) terms.push_back(term_expr(t));
  return Expr::sum(std::move(terms));
}

Expr monomial_expr(const Monomial& m) { return term_expr(Term{m, 1}); }

/// Sign of the term whose expression is structurally greatest; independent
/// of kernel numbering.
int leading_sign(const Poly& p) {
  if (p.is_zero()) return 0;
  if (p.is_monomial()) return p.leading().coef > 0 ? 1 : -1;
  const Term* best = nullptr;
  Expr best_e;
  for (const auto& t : p.terms()) {
    Expr e = monomial_expr(t.mono);
    if (!best || compare(e, best_e) > 0) {
      best = &t;
      best_e = e;
    }
  }
  return best->coef > 0 ? 1 : -1;
}

Expr to_expr(const RatFunc& r) {
  if (r.num.is_zero()) return Expr(0);
  if (r.den.is_constant()) return poly_expr(r.num.scaled(1 / r.den.constant_value()));
  const mpq_class cn = r.num.content();
  const Monomial mn = r.num.monomial_content();
  const Poly n1 = r.num.scaled(1 / cn).divided_by_monomial(mn);
  const Monomial md = r.den.monomial_content();
  const Poly d1 = r.den.divided_by_monomial(md);
  std::vector<Expr> f{Expr::rational(cn / r.den.content()), monomial_expr(mn), poly_expr(n1)};
  if (!md.is_one()) f.push_back(pow(monomial_expr(md), Expr(-1)));
  const Poly d2 = d1.scaled(1 / r.den.content());
  if (!d2.is_constant()) f.push_back(pow(poly_expr(d2), Expr(-1)));
  else f[0] = Expr::rational(cn / (r.den.content() * d2.constant_value()));
  return Expr::product(std::move(f));
}

// ---------------------------------------------------------------------------
// Relation reduction: I^2 -> -1, cos^2 -> 1 - sin^2, sinh^2 -> cosh^2 - 1,
// (b^(1/q))^q -> b.

struct Reduced {
  RatFunc value;
  bool changed = false;
};

Reduced reduce_poly(const Poly& p) {
  std::vector<Term> plain;
  Poly acc;
  RatFunc rational_acc;
  bool changed = false;
  for (const auto& t : p.terms()) {
    Monomial rest;
    RatFunc factor = rat_constant(t.coef);
    bool hit = false;
    t.mono.for_each([&](Var v, unsigned e) {
      const KernelInfo& k = kernels().info(v);
      const unsigned q = k.rel == Rel::Root ? k.degree : 2;
      if (k.rel == Rel::None || e < q) {
        rest = rest * Monomial::of(v, e);
        return;
      }
      hit = true;
      rest = rest * Monomial::of(v, e % q);
      RatFunc r;
      switch (k.rel) {
        case Rel::Imag: r = rat_constant(-1); break;
        case Rel::Cos: r = {Poly::constant(1) - Poly::monomial(Monomial::of(k.partner, 2)), Poly::constant(1)}; break;
        case Rel::Sinh: r = {Poly::monomial(Monomial::of(k.partner, 2)) - Poly::constant(1), Poly::constant(1)}; break;
        case Rel::Root: r = k.base; break;
        case Rel::None: break;
      }
      factor = mul(factor, pow_int(r, e / q));
    });
    if (!hit) {
      plain.push_back(t);
      continue;
    }
    changed = true;
    factor.num = factor.num.times_monomial(rest);
    if (factor.den.is_constant()) {
      acc = acc + factor.num.scaled(1 / factor.den.constant_value());
    } else {
      rational_acc = add(rational_acc, factor);
    }
  }
  if (!changed) return {{p, Poly::constant(1)}, false};
  RatFunc total{Poly::from_terms(std::move(plain)) + acc, Poly::constant(1)};
  return {add(total, rational_acc), true};
}

RatFunc reduce(RatFunc r) {
  for (int guard = 0; guard < 64; ++guard) {
    Reduced n = reduce_poly(r.num);
    Reduced d = reduce_poly(r.den);
    if (!n.changed && !d.changed) return r;
    r = mul(n.value, inverse(d.value));
  }
  throw EvalError("simplify: relation reduction did not terminate");
}

Var imaginary_var() {
  static const Var v = kernels().intern(Expr::imaginary_unit(), [] {
    KernelInfo k;
    k.rel = Rel::Imag;
    return k;
  });
  return v;
}

bool quadratic_kernel(Var v) {
  const KernelInfo& k = kernels().info(v);
  return k.rel == Rel::Imag || k.rel == Rel::Cos || k.rel == Rel::Sinh || (k.rel == Rel::Root && k.degree == 2);
}

/// p with the sign of every term odd in v flipped.
Poly conjugate(const Poly& p, Var v) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    out.push_back(t.mono.exponent(v) % 2 == 1 ? Term{t.mono, -t.coef} : t);
  }
  return Poly::from_terms(std::move(out));
}

std::optional<Var> conjugable_var(const Poly& den) {
  for (Var v : den.variables()) {
    if (quadratic_kernel(v)) return v;
  }
  return std::nullopt;
}

RatFunc normalize(RatFunc r) {
  if (r.den.is_zero()) throw DomainError("division by zero");
  r = reduce(std::move(r));
  for (int guard = 0; guard < 16; ++guard) {
    const auto v = conjugable_var(r.den);
    if (!v) break;
    const Poly c = conjugate(r.den, *v);
    r = reduce({r.num * c, r.den * c});
  }
  if (r.num.is_zero()) return {};
  if (r.den.is_zero()) throw DomainError("division by zero");
  if (r.den.is_constant()) return {r.num.scaled(1 / r.den.constant_value()), Poly::constant(1)};
  const Poly g = detail::gcd(r.num, r.den);
  if (!g.is_constant()) {
    r.num = exact(r.num, g);
    r.den = exact(r.den, g);
  }
  if (r.den.is_constant()) return {r.num.scaled(1 / r.den.constant_value()), Poly::constant(1)};
  mpq_class s = 1 / r.den.content();
  if (leading_sign(r.den) < 0) s = -s;
  return {r.num.scaled(s), r.den.scaled(s)};
}

// ---------------------------------------------------------------------------

bool perfect_root(const mpz_class& n, unsigned q, mpz_class& root) {
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), q) != 0;
}

/// Splits n = out^q * rest for small prime factors.
void extract_integer_root(mpz_class n, unsigned q, mpz_class& out, mpz_class& rest) {
  out = 1;
  rest = 1;
  mpz_class r;
  if (perfect_root(n, q, r)) {
    out = r;
    return;
  }
  for (unsigned long p = 2; p < 200 && n > 1; ++p) {
    mpz_class pq;
    mpz_ui_pow_ui(pq.get_mpz_t(), p, q);
    while (n % pq == 0) {
      n /= pq;
      out *= p;
    }
  }
  if (perfect_root(n, q, r)) {
    out *= r;
    return;
  }
  rest = n;
}

class Simplifier {
 public:
  explicit Simplifier(const AssumptionSet& a) : a_(a) {}

  RatFunc to_rat(const Expr& e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    RatFunc r = convert(e);
    memo_.emplace(e, r);
    return r;
  }

  Expr simplified(const Expr& e) { return to_expr(to_rat(e)); }

 private:
  RatFunc convert(const Expr& e) {
    switch (e.kind()) {
      case ExprKind::Rational:
        return rat_constant(e.value());
      case ExprKind::Imaginary:
        return rat_var(imaginary_var());
      case ExprKind::Symbol:
      case ExprKind::Opaque:
        return rat_var(kernels().intern(e));
      case ExprKind::Sum: {
        RatFunc acc;
        Poly poly_acc;
        for (const auto& op : e.operands()) {
          RatFunc t = to_rat(op);
          if (t.den.is_constant()) {
            poly_acc = poly_acc + t.num;
          } else {
            acc = add(acc, t);
          }
        }
        return normalize(add(acc, {poly_acc, Poly::constant(1)}));
      }
      case ExprKind::Product: {
        RatFunc acc = rat_constant(1);
        for (const auto& op : e.operands()) acc = mul(acc, to_rat(op));
        return normalize(acc);
      }
      case ExprKind::Power:
        return power(e.base(), e.exponent());
      case ExprKind::Function:
        return function(e.fn(), e.arg());
    }
    return {};
  }

  RatFunc power(const Expr& b, const Expr& n) {
    if (n.is_rational()) {
      const mpq_class& x = n.value();
      if (!x.get_num().fits_slong_p() || !x.get_den().fits_uint_p()) {
        throw DomainError("exponent too large");
      }
      const RatFunc base = to_rat(b);
      if (x.get_den() == 1) return normalize(pow_int(base, x.get_num().get_si()));
      const long p = x.get_num().get_si();
      const unsigned q = static_cast<unsigned>(x.get_den().get_ui());
      long a = p / static_cast<long>(q);
      long r = p % static_cast<long>(q);
      if (r < 0) {
        r += q;
        a -= 1;
      }
      return normalize(mul(pow_int(base, a), pow_int(root(base, q), r)));
    }
    const Expr kb = simplified(b);
    const Expr kn = simplified(n);
    return rat_var(kernels().intern(pow(kb, kn)));
  }

  bool positive(Var v) {
    auto it = positive_.find(v);
    if (it != positive_.end()) return it->second;
    const bool p = compute_positive(kernels().info(v).expr);
    positive_.emplace(v, p);
    return p;
  }

  bool real_symbols(const Expr& e) {
    if (e.is(ExprKind::Imaginary) || e.is(ExprKind::Opaque)) return false;
    if (e.is(ExprKind::Symbol)) return a_.find(e.name()) != nullptr;
    for (const auto& op : e.operands()) {
      if (!real_symbols(op)) return false;
    }
    return true;
  }

  bool compute_positive(const Expr& e) {
    if (e.is(ExprKind::Symbol)) return a_.positive(e.name());
    if (!e.is(ExprKind::Function)) return false;
    const Expr& u = e.arg();
    const Interval* iv = u.is(ExprKind::Symbol) ? a_.find(u.name()) : nullptr;
    constexpr double pi = std::numbers::pi;
    switch (e.fn()) {
      case FnKind::Sin: return iv && iv->lo >= 0.0 && iv->hi <= pi;
      case FnKind::Cos: return iv && iv->lo >= -pi / 2 && iv->hi <= pi / 2;
      case FnKind::Sinh: return iv && iv->lo >= 0.0;
      case FnKind::Cosh:
      case FnKind::Exp: return real_symbols(u);
      default: return false;
    }
  }

  /// b^(1/q) as prefactor times a root kernel.
  RatFunc root(const RatFunc& b, unsigned q) {
    if (b.num.is_zero()) return {};
    mpq_class c = b.num.content() / b.den.content();
    const Monomial mn = b.num.monomial_content();
    const Monomial md = b.den.monomial_content();
    const Poly n1 = b.num.scaled(1 / b.num.content()).divided_by_monomial(mn);
    const Poly d1 = b.den.scaled(1 / b.den.content()).divided_by_monomial(md);

    Monomial out_n, out_d, keep_n, keep_d;
    bool residual_positive = n1.is_constant() && d1.is_constant();
    auto split = [&](const Monomial& m, Monomial& out, Monomial& keep) {
      m.for_each([&](Var v, unsigned e) {
        if (positive(v)) {
          out = out * Monomial::of(v, e / q);
          keep = keep * Monomial::of(v, e % q);
        } else {
          keep = keep * Monomial::of(v, e);
          residual_positive = false;
        }
      });
    };
    split(mn, out_n, keep_n);
    split(md, out_d, keep_d);

    // Constant sign: n1 and d1 may carry a sign of their own.
    mpq_class sign = n1.is_constant() ? n1.constant_value() : 1;
    if (d1.is_constant()) sign /= d1.constant_value();
    Poly n2 = n1.is_constant() ? Poly::constant(1) : n1;
    Poly d2 = d1.is_constant() ? Poly::constant(1) : d1;
    c *= sign;

    RatFunc prefactor{Poly::monomial(out_n), Poly::monomial(out_d)};
    if (c < 0 && q == 2 && residual_positive) {
      prefactor = mul(prefactor, rat_var(imaginary_var()));
      c = -c;
    }
    if (c > 0) {
      mpz_class on, rn, od, rd;
      extract_integer_root(c.get_num(), q, on, rn);
      extract_integer_root(c.get_den(), q, od, rd);
      prefactor = mul(prefactor, rat_constant(mpq_class(on, od)));
      c = mpq_class(rn, rd);
    }

    RatFunc residual = normalize({n2.times_monomial(keep_n, c), d2.times_monomial(keep_d)});
    if (residual.den.is_constant() && residual.num.is_constant() && residual.num.constant_value() == 1) {
      return normalize(prefactor);
    }
    const Expr kernel = Expr::power(to_expr(residual), Expr::rational(1, q));
    if (!kernel.is(ExprKind::Power)) return normalize(mul(prefactor, to_rat(kernel)));
    const Var v = kernels().intern(kernel, [&] {
      KernelInfo k;
      k.rel = Rel::Root;
      k.degree = q;
      k.base = residual;
      return k;
    });
    return normalize(mul(prefactor, rat_var(v)));
  }

  /// Writes a normalized argument as c * a0 with a canonical sign for a0.
  std::pair<mpq_class, RatFunc> split_arg(const RatFunc& a) {
    if (a.num.is_constant()) return {a.num.constant_value(), rat_constant(1)};
    mpq_class c = a.num.is_monomial() ? a.num.leading().coef : a.num.content();
    if (!a.num.is_monomial() && leading_sign(a.num) < 0) c = -c;
    return {c, {a.num.scaled(1 / c), a.den}};
  }

  Var trig_kernel(FnKind fn, const Expr& theta) {
    if (fn == FnKind::Cos || fn == FnKind::Sinh) {
      const Var partner = trig_kernel(fn == FnKind::Cos ? FnKind::Sin : FnKind::Cosh, theta);
      return kernels().intern(Expr::function(fn, theta), [&] {
        KernelInfo k;
        k.rel = fn == FnKind::Cos ? Rel::Cos : Rel::Sinh;
        k.partner = partner;
        return k;
      });
    }
    return kernels().intern(Expr::function(fn, theta));
  }

  static long binomial(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }

  RatFunc function(FnKind fn, const Expr& arg) {
    const RatFunc a = to_rat(arg);
    if (fn == FnKind::Sqrt) return root(a, 2);
    if (fn == FnKind::Log) {
      if (a.num.is_constant() && a.num.constant_value() == 1) return {};
      if (a.num.is_zero()) throw DomainError("log(0)");
      return rat_var(kernels().intern(Expr::function(FnKind::Log, to_expr(a))));
    }
    if (a.num.is_zero()) {
      switch (fn) {
        case FnKind::Cos: case FnKind::Sec: case FnKind::Cosh: case FnKind::Sech: case FnKind::Exp:
          return rat_constant(1);
        case FnKind::Cot: case FnKind::Csc: case FnKind::Coth: case FnKind::Csch:
          throw DomainError(std::string(fn_name(fn)) + "[0] is singular");
        default:
          return {};
      }
    }

    auto [c, a0] = split_arg(a);
    const bool a0_constant = a0.num.is_constant();
    const bool negative = c < 0;
    if (negative) c = -c;
    const bool small_int = c.get_den() == 1 && c <= 12 && !a0_constant;

    if (fn == FnKind::Exp) {
      const mpq_class signed_c = negative ? mpq_class(-c) : c;
      if (signed_c.get_den() == 1 && c <= 64 && !a0_constant) {
        const Var e = kernels().intern(Expr::function(FnKind::Exp, to_expr(a0)));
        return normalize(pow_int(rat_var(e), signed_c.get_num().get_si()));
      }
      return rat_var(kernels().intern(Expr::function(FnKind::Exp, to_expr(a))));
    }

    const bool hyperbolic = fn == FnKind::Sinh || fn == FnKind::Cosh || fn == FnKind::Tanh ||
                            fn == FnKind::Coth || fn == FnKind::Sech || fn == FnKind::Csch;
    const FnKind fs = hyperbolic ? FnKind::Sinh : FnKind::Sin;
    const FnKind fc = hyperbolic ? FnKind::Cosh : FnKind::Cos;

    RatFunc s, co;
    if (small_int && c > 1) {
      const Expr theta = to_expr(a0);
      const RatFunc s1 = rat_var(trig_kernel(fs, theta));
      const RatFunc c1 = rat_var(trig_kernel(fc, theta));
      const long n = c.get_num().get_si();
      for (long k = 0; k <= n; ++k) {
        RatFunc t = mul(pow_int(c1, n - k), pow_int(s1, k));
        long coef = binomial(n, k);
        if (!hyperbolic && (k / 2) % 2 == 1) coef = -coef;
        t = mul(t, rat_constant(coef));
        if (k % 2 == 0) co = add(co, t);
        else s = add(s, t);
      }
      s = normalize(s);
      co = normalize(co);
    } else {
      const Expr theta = to_expr({a0.num.scaled(c), a0.den});
      s = rat_var(trig_kernel(fs, theta));
      co = rat_var(trig_kernel(fc, theta));
    }

    RatFunc value;
    bool odd = true;
    switch (fn) {
      case FnKind::Sin: case FnKind::Sinh: value = s; break;
      case FnKind::Cos: case FnKind::Cosh: value = co; odd = false; break;
      case FnKind::Tan: case FnKind::Tanh: value = mul(s, inverse(co)); break;
      case FnKind::Cot: case FnKind::Coth: value = mul(co, inverse(s)); break;
      case FnKind::Sec: case FnKind::Sech: value = inverse(co); odd = false; break;
      case FnKind::Csc: case FnKind::Csch: value = inverse(s); break;
      default: break;
    }
    if (negative && odd) value = neg(value);
    return normalize(value);
  }

  const AssumptionSet& a_;
  std::unordered_map<Expr, RatFunc, ExprHash> memo_;
  std::unordered_map<Var, bool> positive_;
};

}  // namespace

Expr simplify(const Expr& e, const AssumptionSet& assumptions) {
  Simplifier s(assumptions);
  return s.simplified(e);
}

std::pair<Expr, Expr> split_complex(const Expr& e, const AssumptionSet& assumptions) {
  Simplifier s(assumptions);
  const Expr canonical = s.simplified(e);
  const RatFunc r = s.to_rat(canonical);
  const Var i = imaginary_var();
  std::vector<Term> re, im;
  for (const auto& t : r.num.terms()) {
    if (t.mono.exponent(i) == 0) re.push_back(t);
    else im.push_back({t.mono.without(i), t.coef});
  }
  return {to_expr(normalize({Poly::from_terms(std::move(re)), r.den})),
          to_expr(normalize({Poly::from_terms(std::move(im)), r.den}))};
}

}  // namespace grg
