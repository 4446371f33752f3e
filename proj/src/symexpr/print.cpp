#include <ostream>
#include <sstream>

#include "grg/symexpr.hpp"

namespace grg {

namespace {

enum class Ctx { Top, Factor, Base };

void print_to(std::string& out, const Expr& e, Ctx ctx);

std::string rational_text(const mpq_class& q) { return q.get_str(); }

bool atomic_in_base(const Expr& e) {
  switch (e.kind()) {
    case ExprKind::Symbol:
    case ExprKind::Imaginary:
    case ExprKind::Function:
    case ExprKind::Opaque:
      return true;
    case ExprKind::Rational:
      return e.is_integer() && e.value() >= 0;
    default:
      return false;
  }
}

void print_power(std::string& out, const Expr& base, const Expr& exponent) {
  if (atomic_in_base(base)) {
    print_to(out, base, Ctx::Base);
  } else {
    out += '(';
    print_to(out, base, Ctx::Top);
    out += ')';
  }
  out += '^';
  if ((exponent.is_integer() && exponent.value() > 0) || exponent.is(ExprKind::Symbol)) {
    print_to(out, exponent, Ctx::Base);
  } else {
    out += '(';
    print_to(out, exponent, Ctx::Top);
    out += ')';
  }
}

bool negative_power(const Expr& e) {
  return e.is(ExprKind::Power) && e.exponent().is_negative_rational();
}

void print_factor(std::string& out, const Expr& f) {
  if (f.is(ExprKind::Power)) {
    print_power(out, f.base(), f.exponent());
  } else if (f.is(ExprKind::Sum)) {
    out += '(';
    print_to(out, f, Ctx::Top);
    out += ')';
  } else {
    print_to(out, f, Ctx::Factor);
  }
}

// Products (and lone negative powers) print as [-]num/den.
void print_product(std::string& out, mpq_class coef, std::span<const Expr> factors) {
  std::vector<Expr> num;
  std::vector<Expr> den;
  for (const auto& f : factors) {
    if (negative_power(f)) {
      den.push_back(Expr::power(f.base(), Expr::rational(-f.exponent().value())));
    } else {
      num.push_back(f);
    }
  }
  if (coef < 0) {
    out += '-';
    coef = -coef;
  }
  const mpz_class cn = coef.get_num();
  const mpz_class cd = coef.get_den();

  bool first = true;
  if (cn != 1 || num.empty()) {
    out += cn.get_str();
    first = false;
  }
  for (const auto& f : num) {
    if (!first) out += '*';
    print_factor(out, f);
    first = false;
  }
  if (den.empty() && cd == 1) return;

  std::size_t items = den.size() + (cd != 1 ? 1 : 0);
  bool simple = items == 1 && (cd != 1 || den.front().is(ExprKind::Power) ||
                               atomic_in_base(den.front()));
  out += '/';
  if (!simple) out += '(';
  first = true;
  if (cd != 1) {
    out += cd.get_str();
    first = false;
  }
  for (const auto& f : den) {
    if (!first) out += '*';
    print_factor(out, f);
    first = false;
  }
  if (!simple) out += ')';
}

void print_sum(std::string& out, const Expr& e) {
  bool first = true;
  for (const auto& term : e.operands()) {
    auto [coef, rest] = split_coefficient(term);
    if (first) {
      print_to(out, term, Ctx::Top);
      first = false;
      continue;
    }
    if (coef < 0) {
      out += " - ";
      print_to(out, rest.is_one() ? Expr::rational(-coef) : Expr::product({Expr::rational(-coef), rest}),
               Ctx::Top);
    } else {
      out += " + ";
      print_to(out, term, Ctx::Top);
    }
  }
}

void print_to(std::string& out, const Expr& e, Ctx ctx) {
  switch (e.kind()) {
    case ExprKind::Rational: {
      const bool plain = e.is_integer() && e.value() >= 0;
      if (!plain && ctx != Ctx::Top) out += '(';
      out += rational_text(e.value());
      if (!plain && ctx != Ctx::Top) out += ')';
      return;
    }
    case ExprKind::Imaginary:
      out += 'I';
      return;
    case ExprKind::Symbol:
      out += e.name();
      return;
    case ExprKind::Function:
      out += fn_name(e.fn());
      out += '[';
      print_to(out, e.arg(), Ctx::Top);
      out += ']';
      return;
    case ExprKind::Opaque: {
      out += e.name();
      const auto orders = e.orders();
      bool any = false;
      for (int o : orders) any = any || o != 0;
      if (any) {
        out += "^(";
        for (std::size_t i = 0; i < orders.size(); ++i) {
          if (i) out += ',';
          out += std::to_string(orders[i]);
        }
        out += ')';
      }
      out += '[';
      const auto args = e.operands();
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        print_to(out, args[i], Ctx::Top);
      }
      out += ']';
      return;
    }
    case ExprKind::Power:
      if (negative_power(e)) {
        if (ctx != Ctx::Top) out += '(';
        print_product(out, mpq_class(1), std::span<const Expr>(&e, 1));
        if (ctx != Ctx::Top) out += ')';
      } else {
        print_power(out, e.base(), e.exponent());
      }
      return;
    case ExprKind::Product: {
      auto [coef, rest] = split_coefficient(e);
      const bool paren = ctx != Ctx::Top;
      if (paren) out += '(';
      if (rest.is(ExprKind::Product)) {
        print_product(out, coef, rest.operands());
      } else {
        print_product(out, coef, std::span<const Expr>(&rest, 1));
      }
      if (paren) out += ')';
      return;
    }
    case ExprKind::Sum:
      if (ctx != Ctx::Top) out += '(';
      print_sum(out, e);
      if (ctx != Ctx::Top) out += ')';
      return;
  }
}

}  // namespace

std::string print(const Expr& e) {
  std::string out;
  print_to(out, e, Ctx::Top);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << print(e); }

}  // namespace grg
