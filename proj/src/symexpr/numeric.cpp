#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "grg/error.hpp"
#include "grg/symexpr.hpp"

namespace grg {

namespace {

using Bindings = std::map<std::string, Complex>;

void check_finite(const Complex& z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw EvalError("singular point");
}

Complex integer_power(Complex b, long n) {
  if (n < 0) {
    if (b == Complex(0.0, 0.0)) throw EvalError("division by zero");
    b = 1.0 / b;
    n = -n;
  }
  Complex result(1.0, 0.0);
  while (n > 0) {
    if (n & 1) result *= b;
    b *= b;
    n >>= 1;
  }
  return result;
}

Complex reciprocal(const Complex& z) {
  if (z == Complex(0.0, 0.0)) throw EvalError("division by zero");
  return 1.0 / z;
}

Complex eval(const Expr& e, const Bindings& b, EvalMode mode) {
  switch (e.kind()) {
    case ExprKind::Rational:
      return {e.value().get_d(), 0.0};
    case ExprKind::Imaginary:
      return {0.0, 1.0};
    case ExprKind::Symbol: {
      auto it = b.find(e.name());
      if (it != b.end()) return it->second;
      if (e.name() == "Pi") return {std::numbers::pi, 0.0};
      throw EvalError("unbound symbol '" + e.name() + "'");
    }
    case ExprKind::Sum: {
      Complex acc(0.0, 0.0);
      for (const auto& op : e.operands()) acc += eval(op, b, mode);
      return acc;
    }
    case ExprKind::Product: {
      Complex acc(1.0, 0.0);
      for (const auto& op : e.operands()) acc *= eval(op, b, mode);
      return acc;
    }
    case ExprKind::Power: {
      const Complex base = eval(e.base(), b, mode);
      if (e.exponent().is_integer() && e.exponent().value().get_num().fits_slong_p()) {
        return integer_power(base, e.exponent().value().get_num().get_si());
      }
      const Complex ex = eval(e.exponent(), b, mode);
      if (base == Complex(0.0, 0.0)) {
        if (ex.real() > 0) return {0.0, 0.0};
        throw EvalError("division by zero");
      }
      if (mode == EvalMode::Real && base.real() < 0 && base.imag() == 0.0) {
        throw EvalError("domain error: non-integer power of a negative number");
      }
      return std::pow(base, ex);
    }
    case ExprKind::Function: {
      const Complex u = eval(e.arg(), b, mode);
      switch (e.fn()) {
        case FnKind::Sin: return std::sin(u);
        case FnKind::Cos: return std::cos(u);
        case FnKind::Tan: return std::sin(u) * reciprocal(std::cos(u));
        case FnKind::Cot: return std::cos(u) * reciprocal(std::sin(u));
        case FnKind::Sec: return reciprocal(std::cos(u));
        case FnKind::Csc: return reciprocal(std::sin(u));
        case FnKind::Sinh: return std::sinh(u);
        case FnKind::Cosh: return std::cosh(u);
        case FnKind::Tanh: return std::sinh(u) * reciprocal(std::cosh(u));
        case FnKind::Coth: return std::cosh(u) * reciprocal(std::sinh(u));
        case FnKind::Sech: return reciprocal(std::cosh(u));
        case FnKind::Csch: return reciprocal(std::sinh(u));
        case FnKind::Exp: return std::exp(u);
        case FnKind::Log:
          if (u == Complex(0.0, 0.0)) throw EvalError("singular point: log(0)");
          if (mode == EvalMode::Real && (u.real() <= 0 || u.imag() != 0.0)) {
            throw EvalError("domain error: log of a nonpositive number");
          }
          return std::log(u);
        case FnKind::Sqrt:
          if (mode == EvalMode::Real && u.real() < 0) throw EvalError("domain error: sqrt of a negative number");
          return std::sqrt(u);
      }
      break;
    }
    case ExprKind::Opaque:
      throw EvalError("opaque function '" + e.name() + "' has no numeric binding");
  }
  return {0.0, 0.0};
}

double parse_bound(const std::string& text) {
  const Complex v = eval_numeric(parse(text), {});
  if (v.imag() != 0.0) throw DomainError("assumption bound '" + text + "' is not real");
  return v.real();
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto p = s.find(sep, start);
    out.push_back(trim(s.substr(start, p - start)));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c))) return false;
  }
  return s != "Pi";
}

double sample(const Interval& iv, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double t = u(rng);
  if (iv.lower_bounded() && iv.upper_bounded()) {
    const double w = iv.hi - iv.lo;
    return iv.lo + w * (0.05 + 0.9 * t);
  }
  if (iv.lower_bounded()) return iv.lo + 0.1 + 9.9 * t;
  if (iv.upper_bounded()) return iv.hi - 0.1 - 9.9 * t;
  return 0.1 + 9.9 * t;
}

}  // namespace

void AssumptionSet::assume(const std::string& name, Interval interval) {
  if (!(interval.lo < interval.hi)) throw DomainError("empty interval for '" + name + "'");
  if (intervals_.count(name)) throw DomainError("symbol '" + name + "' is already assumed");
  intervals_.emplace(name, interval);
}

void AssumptionSet::assume(const std::string& text) {
  const bool less = text.find('<') != std::string::npos;
  const bool greater = text.find('>') != std::string::npos;
  if (less == greater) throw DomainError("cannot parse assumption '" + text + "'");
  auto parts = split(text, less ? '<' : '>');
  if (!less) std::reverse(parts.begin(), parts.end());
  Interval iv;
  std::string name;
  if (parts.size() == 3 && is_identifier(parts[1])) {
    name = parts[1];
    iv.lo = parse_bound(parts[0]);
    iv.hi = parse_bound(parts[2]);
  } else if (parts.size() == 2 && is_identifier(parts[1])) {
    name = parts[1];
    iv.lo = parse_bound(parts[0]);
  } else if (parts.size() == 2 && is_identifier(parts[0])) {
    name = parts[0];
    iv.hi = parse_bound(parts[1]);
  } else {
    throw DomainError("cannot parse assumption '" + text + "'");
  }
  assume(name, iv);
}

const Interval* AssumptionSet::find(const std::string& name) const {
  auto it = intervals_.find(name);
  return it == intervals_.end() ? nullptr : &it->second;
}

bool AssumptionSet::positive(const std::string& name) const {
  const Interval* iv = find(name);
  return iv != nullptr && iv->lo >= 0.0;
}

Complex eval_numeric(const Expr& e, const std::map<std::string, Complex>& bindings, EvalMode mode) {
  Complex v = eval(e, bindings, mode);
  check_finite(v);
  return v;
}

Equivalence equivalence(const Expr& e1, const Expr& e2, const AssumptionSet& assumptions,
                        const EquivalenceOptions& options) {
  std::set<std::string> names;
  for (const auto& s : free_symbols(e1)) names.insert(s);
  for (const auto& s : free_symbols(e2)) names.insert(s);
  names.erase("Pi");

  std::mt19937_64 rng(options.seed);
  static const Interval kDefault{0.1, 10.0};
  int accepted = 0;
  int consecutive_failures = 0;
  while (accepted < options.samples) {
    Bindings point;
    for (const auto& n : names) {
      const Interval* iv = assumptions.find(n);
      point[n] = Complex(sample(iv ? *iv : kDefault, rng), 0.0);
    }
    Complex v1, v2;
    try {
      v1 = eval_numeric(e1, point);
      v2 = eval_numeric(e2, point);
    } catch (const EvalError& err) {
      if (std::string(err.what()).find("unbound") != std::string::npos ||
          std::string(err.what()).find("opaque") != std::string::npos) {
        throw;
      }
      if (++consecutive_failures > options.samples) return Equivalence::Inconclusive;
      continue;
    }
    consecutive_failures = 0;
    const double diff = std::abs(v1 - v2);
    if (!(diff <= options.tolerance * (1.0 + std::abs(v1) + std::abs(v2)))) {
      return Equivalence::NotEquivalent;
    }
    ++accepted;
  }
  return Equivalence::Equivalent;
}

std::map<std::string, Complex> sample_point(const std::vector<std::string>& names,
                                            const AssumptionSet& assumptions, std::uint64_t seed,
                                            int skip) {
  static const Interval kDefault{0.1, 10.0};
  std::mt19937_64 rng(seed);
  Bindings point;
  for (int k = 0; k <= skip; ++k) {
    for (const auto& n : names) {
      const Interval* iv = assumptions.find(n);
      point[n] = Complex(sample(iv ? *iv : kDefault, rng), 0.0);
    }
  }
  return point;
}

bool equivalent(const Expr& e1, const Expr& e2, const AssumptionSet& assumptions,
                const EquivalenceOptions& options) {
  return equivalence(e1, e2, assumptions, options) == Equivalence::Equivalent;
}

}  // namespace grg
