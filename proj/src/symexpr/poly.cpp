#include "poly.hpp"

#include <algorithm>

namespace grg::detail {

namespace {

constexpr std::uint64_t pack(Var v, unsigned e) { return (static_cast<std::uint64_t>(v) << 32) | e; }
constexpr Var var_of(std::uint64_t p) { return static_cast<Var>(p >> 32); }
constexpr unsigned exp_of(std::uint64_t p) { return static_cast<unsigned>(p & 0xffffffffu); }

}  // namespace

Monomial Monomial::of(Var v, unsigned exponent) {
  Monomial m;
  if (exponent > 0) m.data_.push_back(pack(v, exponent));
  return m;
}

unsigned Monomial::exponent(Var v) const {
  for (auto p : data_) {
    if (var_of(p) == v) return exp_of(p);
    if (var_of(p) > v) break;
  }
  return 0;
}

unsigned Monomial::total_degree() const {
  unsigned d = 0;
  for (auto p : data_) d += exp_of(p);
  return d;
}

bool Monomial::divides(const Monomial& other) const {
  std::size_t j = 0;
  for (auto p : data_) {
    while (j < other.data_.size() && var_of(other.data_[j]) < var_of(p)) ++j;
    if (j == other.data_.size() || var_of(other.data_[j]) != var_of(p)) return false;
    if (exp_of(other.data_[j]) < exp_of(p)) return false;
  }
  return true;
}

Monomial Monomial::without(Var v) const {
  Monomial m;
  for (auto p : data_) {
    if (var_of(p) != v) m.data_.push_back(p);
  }
  return m;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial m;
  std::size_t j = 0;
  for (auto p : data_) {
    unsigned e = exp_of(p);
    if (j < divisor.data_.size() && var_of(divisor.data_[j]) == var_of(p)) {
      e -= exp_of(divisor.data_[j]);
      ++j;
    }
    if (e > 0) m.data_.push_back(pack(var_of(p), e));
  }
  return m;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial m;
  std::size_t i = 0, j = 0;
  while (i < a.data_.size() && j < b.data_.size()) {
    const Var va = var_of(a.data_[i]);
    const Var vb = var_of(b.data_[j]);
    if (va == vb) {
      m.data_.push_back(pack(va, std::min(exp_of(a.data_[i]), exp_of(b.data_[j]))));
      ++i;
      ++j;
    } else if (va < vb) {
      ++i;
    } else {
      ++j;
    }
  }
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.data_.reserve(a.data_.size() + b.data_.size());
  std::size_t i = 0, j = 0;
  while (i < a.data_.size() || j < b.data_.size()) {
    if (j == b.data_.size() || (i < a.data_.size() && var_of(a.data_[i]) < var_of(b.data_[j]))) {
      m.data_.push_back(a.data_[i++]);
    } else if (i == a.data_.size() || var_of(b.data_[j]) < var_of(a.data_[i])) {
      m.data_.push_back(b.data_[j++]);
    } else {
      m.data_.push_back(pack(var_of(a.data_[i]), exp_of(a.data_[i]) + exp_of(b.data_[j])));
      ++i;
      ++j;
    }
  }
  return m;
}

int mono_cmp(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.data_.size(), b.data_.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto pa = a.data_[i];
    const auto pb = b.data_[i];
    if (pa == pb) continue;
    if (var_of(pa) != var_of(pb)) return var_of(pa) < var_of(pb) ? 1 : -1;
    return exp_of(pa) > exp_of(pb) ? 1 : -1;
  }
  if (a.data_.size() == b.data_.size()) return 0;
  return a.data_.size() > b.data_.size() ? 1 : -1;
}

// ---------------------------------------------------------------------------

Poly Poly::constant(const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({Monomial(), c});
  return p;
}

Poly Poly::monomial(const Monomial& m, const mpq_class& c) {
  Poly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return mono_cmp(a.mono, b.mono) > 0; });
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coef += t.coef;
      if (p.terms_.back().coef == 0) p.terms_.pop_back();
    } else if (t.coef != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Poly Poly::merge(const Poly& a, const Poly& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::size_t i = 0, j = 0;
  const auto& ta = a.terms();
  const auto& tb = b.terms();
  while (i < ta.size() || j < tb.size()) {
    int c;
    if (i == ta.size()) {
      c = -1;
    } else if (j == tb.size()) {
      c = 1;
    } else {
      c = mono_cmp(ta[i].mono, tb[j].mono);
    }
    if (c > 0) {
      out.push_back(ta[i++]);
    } else if (c < 0) {
      out.push_back({tb[j].mono, subtract ? mpq_class(-tb[j].coef) : tb[j].coef});
      ++j;
    } else {
      mpq_class s = subtract ? mpq_class(ta[i].coef - tb[j].coef) : mpq_class(ta[i].coef + tb[j].coef);
      if (s != 0) out.push_back({ta[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  Poly p;
  p.terms_ = std::move(out);
  return p;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return Poly::merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b) {
  if (b.is_zero()) return a;
  return Poly::merge(a, b, true);
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_monomial()) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coef);
  if (b.is_monomial()) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coef);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.push_back({x.mono * y.mono, x.coef * y.coef});
  }
  return Poly::from_terms(std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coef != b.terms_[i].coef) return false;
  }
  return true;
}

Poly Poly::scaled(const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Poly Poly::times_monomial(const Monomial& m, const mpq_class& c) const {
  if (c == 0) return Poly();
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coef * c});
  return p;
}

Poly Poly::divided_by_monomial(const Monomial& m) const {
  Poly p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono.quotient(m), t.coef});
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result = Poly::constant(1);
  Poly b = *this;
  while (n > 0) {
    if (n & 1u) result = result * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) return std::nullopt;
  if (is_zero()) return Poly();
  if (d.is_monomial()) {
    const auto& dt = d.terms_[0];
    Poly q;
    for (const auto& t : terms_) {
      if (!dt.mono.divides(t.mono)) return std::nullopt;
      q.terms_.push_back({t.mono.quotient(dt.mono), t.coef / dt.coef});
    }
    return q;
  }
  std::vector<Term> q;
  Poly r = *this;
  const auto& lt = d.terms_[0];
  while (!r.is_zero()) {
    const auto& rt = r.terms_[0];
    if (!lt.mono.divides(rt.mono)) return std::nullopt;
    Monomial m = rt.mono.quotient(lt.mono);
    mpq_class c = rt.coef / lt.coef;
    r = r - d.times_monomial(m, c);
    q.push_back({std::move(m), std::move(c)});
  }
  return Poly::from_terms(std::move(q));
}

unsigned Poly::degree(Var v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

Poly Poly::coeff(Var v, unsigned k) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) == k) out.push_back({t.mono.without(v), t.coef});
  }
  return Poly::from_terms(std::move(out));
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> vs;
  for (const auto& t : terms_) t.mono.for_each([&](Var v, unsigned) { vs.push_back(v); });
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Poly::has_var(Var v) const {
  for (const auto& t : terms_) {
    if (t.mono.exponent(v) > 0) return true;
  }
  return false;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial();
  Monomial m = terms_[0].mono;
  for (std::size_t i = 1; i < terms_.size() && !m.is_one(); ++i) m = Monomial::gcd(m, terms_[i].mono);
  return m;
}

mpq_class Poly::content() const {
  if (terms_.empty()) return 1;
  mpz_class num_gcd = 0;
  mpz_class den_lcm = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.coef.get_num_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.coef.get_den_mpz_t());
  }
  return mpq_class(num_gcd, den_lcm);
}

// ---------------------------------------------------------------------------
// GCD by recursive primitive polynomial remainder sequences.

namespace {

Poly normalize_unit(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p.scaled(1 / p.content());
  if (q.leading().coef < 0) q = -q;
  return q;
}

Poly gcd_core(const Poly& a, const Poly& b);

Poly content_wrt(const Poly& p, Var x) {
  const unsigned d = p.degree(x);
  Poly g;
  for (unsigned k = 0; k <= d; ++k) {
    Poly c = p.coeff(x, k);
    if (c.is_zero()) continue;
    g = g.is_zero() ? normalize_unit(c) : gcd(g, c);
    if (g.is_constant()) return Poly::constant(1);
  }
  return g;
}

Poly primitive_wrt(const Poly& p, Var x) {
  Poly c = content_wrt(p, x);
  if (c.is_constant()) return normalize_unit(p);
  return normalize_unit(*p.divide_exact(c));
}

Poly prem(const Poly& a, const Poly& b, Var x) {
  const unsigned db = b.degree(x);
  const Poly lcb = b.coeff(x, db);
  Poly r = a;
  while (!r.is_zero()) {
    const unsigned dr = r.degree(x);
    if (dr < db) break;
    const Poly lcr = r.coeff(x, dr);
    r = r * lcb - (lcr * b).times_monomial(Monomial::of(x, dr - db));
  }
  return r;
}

Poly gcd_core(const Poly& a, const Poly& b) {
  if (a.is_constant() || b.is_constant()) return Poly::constant(1);
  if (normalize_unit(a) == normalize_unit(b)) return normalize_unit(a);
  if (a.terms().size() >= b.terms().size()) {
    if (a.divide_exact(b)) return normalize_unit(b);
  } else if (b.divide_exact(a)) {
    return normalize_unit(a);
  }

  const auto va = a.variables();
  const auto vb = b.variables();
  for (Var v : va) {
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd(content_wrt(a, v), b);
  }
  for (Var v : vb) {
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd(a, content_wrt(b, v));
  }

  Var x = va.front();
  unsigned best = ~0u;
  for (Var v : va) {
    const unsigned d = a.degree(v) + b.degree(v);
    if (d < best) {
      best = d;
      x = v;
    }
  }

  const Poly ca = content_wrt(a, x);
  const Poly cb = content_wrt(b, x);
  Poly pa = ca.is_constant() ? a : *a.divide_exact(ca);
  Poly pb = cb.is_constant() ? b : *b.divide_exact(cb);
  const Poly c = gcd(ca, cb);

  if (pa.degree(x) < pb.degree(x)) std::swap(pa, pb);
  pa = normalize_unit(pa);
  pb = normalize_unit(pb);
  while (!pb.is_zero()) {
    Poly r = prem(pa, pb, x);
    pa = std::move(pb);
    if (r.is_zero()) break;
    if (r.degree(x) == 0) {
      pa = Poly::constant(1);
      break;
    }
    pb = primitive_wrt(r, x);
  }
  Poly g = pa.is_constant() ? Poly::constant(1) : primitive_wrt(pa, x);
  return normalize_unit(g * c);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  const Monomial ma = a.monomial_content();
  const Monomial mb = b.monomial_content();
  const Monomial m = Monomial::gcd(ma, mb);
  if (a.is_monomial() || b.is_monomial()) return Poly::monomial(m);
  const Poly a1 = ma.is_one() ? a : a.divided_by_monomial(ma);
  const Poly b1 = mb.is_one() ? b : b.divided_by_monomial(mb);
  Poly g = gcd_core(a1, b1);
  return m.is_one() ? g : g.times_monomial(m);
}

}  // namespace grg::detail
