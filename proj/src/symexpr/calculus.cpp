#include "grg/error.hpp"
#include "grg/symexpr.hpp"

namespace grg {

namespace {

Expr fn(FnKind k, const Expr& a) { return Expr::function(k, a); }

// d/du of fn(u).
Expr outer_derivative(FnKind k, const Expr& u) {
  switch (k) {
    case FnKind::Sin: return fn(FnKind::Cos, u);
    case FnKind::Cos: return -fn(FnKind::Sin, u);
    case FnKind::Tan: return pow(fn(FnKind::Sec, u), 2);
    case FnKind::Cot: return -pow(fn(FnKind::Csc, u), 2);
    case FnKind::Sec: return fn(FnKind::Sec, u) * fn(FnKind::Tan, u);
    case FnKind::Csc: return -fn(FnKind::Csc, u) * fn(FnKind::Cot, u);
    case FnKind::Sinh: return fn(FnKind::Cosh, u);
    case FnKind::Cosh: return fn(FnKind::Sinh, u);
    case FnKind::Tanh: return pow(fn(FnKind::Sech, u), 2);
    case FnKind::Coth: return -pow(fn(FnKind::Csch, u), 2);
    case FnKind::Sech: return -fn(FnKind::Sech, u) * fn(FnKind::Tanh, u);
    case FnKind::Csch: return -fn(FnKind::Csch, u) * fn(FnKind::Coth, u);
    case FnKind::Exp: return fn(FnKind::Exp, u);
    case FnKind::Log: return pow(u, -1);
    case FnKind::Sqrt: return Expr::rational(1, 2) * pow(u, Expr::rational(-1, 2));
  }
  return Expr(0);
}

Expr replace_symbols(const Expr& e, const std::map<std::string, Expr>& b);

Expr rebuild(const Expr& e, std::vector<Expr> ops) {
  switch (e.kind()) {
    case ExprKind::Sum: return Expr::sum(std::move(ops));
    case ExprKind::Product: return Expr::product(std::move(ops));
    case ExprKind::Power: return pow(ops[0], ops[1]);
    case ExprKind::Function: return Expr::function(e.fn(), ops[0]);
    case ExprKind::Opaque:
      return Expr::opaque(e.name(), std::move(ops), std::vector<int>(e.orders().begin(), e.orders().end()));
    default: return e;
  }
}

Expr replace_symbols(const Expr& e, const std::map<std::string, Expr>& b) {
  if (e.is(ExprKind::Symbol)) {
    auto it = b.find(e.name());
    return it == b.end() ? e : it->second;
  }
  if (e.operands().empty()) return e;
  if (e.is(ExprKind::Opaque)) {
    // Opaque arguments stay symbolic; a partial at a substituted point is
    // still the same function of its declared arguments.
    return e;
  }
  std::vector<Expr> ops;
  ops.reserve(e.operands().size());
  bool changed = false;
  for (const auto& op : e.operands()) {
    ops.push_back(replace_symbols(op, b));
    changed = changed || !ops.back().same_node(op);
  }
  return changed ? rebuild(e, std::move(ops)) : e;
}

}  // namespace

Expr diff(const Expr& e, const Expr& x) {
  if (!x.is(ExprKind::Symbol)) throw DomainError("diff: variable must be a symbol");
  switch (e.kind()) {
    case ExprKind::Rational:
    case ExprKind::Imaginary:
      return Expr(0);
    case ExprKind::Symbol:
      return e == x ? Expr(1) : Expr(0);
    case ExprKind::Sum: {
      std::vector<Expr> terms;
      for (const auto& op : e.operands()) terms.push_back(diff(op, x));
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Product: {
      const auto ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expr d = diff(ops[i], x);
        if (d.is_zero()) continue;
        std::vector<Expr> factors(ops.begin(), ops.end());
        factors[i] = d;
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case ExprKind::Power: {
      const Expr& b = e.base();
      const Expr& n = e.exponent();
      Expr db = diff(b, x);
      if (!depends_on(n, x)) {
        if (db.is_zero()) return Expr(0);
        return n * pow(b, n - 1) * db;
      }
      Expr dn = diff(n, x);
      return e * (dn * fn(FnKind::Log, b) + n * db / b);
    }
    case ExprKind::Function: {
      Expr du = diff(e.arg(), x);
      if (du.is_zero()) return Expr(0);
      return outer_derivative(e.fn(), e.arg()) * du;
    }
    case ExprKind::Opaque: {
      const auto args = e.operands();
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < args.size(); ++k) {
        if (!(args[k] == x)) continue;
        std::vector<int> orders(e.orders().begin(), e.orders().end());
        ++orders[k];
        terms.push_back(Expr::opaque(e.name(), std::vector<Expr>(args.begin(), args.end()), std::move(orders)));
      }
      return Expr::sum(std::move(terms));
    }
  }
  return Expr(0);
}

Expr diff(const Expr& e, const std::string& x) { return diff(e, Expr::symbol(x)); }

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  if (bindings.empty()) return e;
  return replace_symbols(e, bindings);
}

Expr replace(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& rule) {
  if (auto r = rule(e)) return *r;
  if (e.operands().empty()) return e;
  std::vector<Expr> ops;
  ops.reserve(e.operands().size());
  bool changed = false;
  for (const auto& op : e.operands()) {
    ops.push_back(replace(op, rule));
    changed = changed || !ops.back().same_node(op);
  }
  return changed ? rebuild(e, std::move(ops)) : e;
}

Expr instantiate_opaque(const Expr& e, const std::string& name,
                        const std::vector<std::string>& params, const Expr& body) {
  if (e.is(ExprKind::Opaque) && e.name() == name) {
    const auto args = e.operands();
    if (args.size() != params.size()) {
      throw DomainError("opaque function '" + name + "' bound with wrong arity");
    }
    Expr d = body;
    const auto orders = e.orders();
    for (std::size_t k = 0; k < params.size(); ++k) {
      for (int n = 0; n < orders[k]; ++n) d = diff(d, params[k]);
    }
    std::map<std::string, Expr> at;
    for (std::size_t k = 0; k < params.size(); ++k) {
      if (!(args[k].is(ExprKind::Symbol) && args[k].name() == params[k])) at.emplace(params[k], args[k]);
    }
    return substitute(d, at);
  }
  if (e.operands().empty() || e.is(ExprKind::Opaque)) return e;
  std::vector<Expr> ops;
  bool changed = false;
  for (const auto& op : e.operands()) {
    ops.push_back(instantiate_opaque(op, name, params, body));
    changed = changed || !ops.back().same_node(op);
  }
  return changed ? rebuild(e, std::move(ops)) : e;
}

}  // namespace grg

namespace grg {

namespace {

void collect_opaque(const Expr& e, std::map<std::string, std::size_t>& out) {
  if (e.is(ExprKind::Opaque)) {
    out.emplace(e.name(), e.operands().size());
    return;
  }
  for (const auto& op : e.operands()) collect_opaque(op, out);
}

Expr test_function(int variant, const std::vector<Expr>& x) {
  std::vector<Expr> terms;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const auto w = static_cast<long>(k + 1);
    switch (variant) {
      case 0: terms.push_back(Expr::rational(w, 7) * x[k]); break;
      case 1: terms.push_back(Expr::rational(1, w) * x[k]); break;
      default: terms.push_back(Expr::rational(1, w + 2) * pow(x[k], Expr(k % 2 == 0 ? 2 : 1))); break;
    }
  }
  const Expr s = Expr::sum(std::move(terms));
  switch (variant) {
    case 0: return Expr::function(FnKind::Exp, s);
    case 1: return Expr(2) + Expr::function(FnKind::Sin, s);
    default: return Expr(1) + s;
  }
}

}  // namespace

bool has_opaque(const Expr& e) {
  std::map<std::string, std::size_t> found;
  collect_opaque(e, found);
  return !found.empty();
}

Expr probe_opaque(const Expr& e, int variant) {
  std::map<std::string, std::size_t> found;
  collect_opaque(e, found);
  Expr out = e;
  for (const auto& [name, arity] : found) {
    std::vector<std::string> params;
    std::vector<Expr> xs;
    for (std::size_t k = 0; k < arity; ++k) {
      params.push_back("@p" + std::to_string(k));
      xs.push_back(Expr::symbol(params.back()));
    }
    out = instantiate_opaque(out, name, params, test_function(variant, xs));
  }
  return out;
}

}  // namespace grg
