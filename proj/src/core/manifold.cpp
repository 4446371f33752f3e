#include "grg/manifold.hpp"

#include <set>

#include "grg/error.hpp"

namespace grg {

namespace {

Expr determinant(const Matrix& m, std::vector<int>& cols, std::size_t row) {
  if (row == m.size()) return Expr(1);
  std::vector<Expr> terms;
  int parity = 0;
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const int c = cols[k];
    if (c < 0) continue;
    const Expr& a = m[row][static_cast<std::size_t>(c)];
    if (!a.is_zero()) {
      cols[k] = -1;
      Expr minor = determinant(m, cols, row + 1);
      cols[k] = c;
      if (!minor.is_zero()) terms.push_back(parity % 2 == 0 ? a * minor : -(a * minor));
    }
    ++parity;
  }
  return Expr::sum(std::move(terms));
}

Expr determinant(const Matrix& m) {
  std::vector<int> cols(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) cols[k] = static_cast<int>(k);
  return determinant(m, cols, 0);
}

Matrix minor_of(const Matrix& m, std::size_t skip_row, std::size_t skip_col) {
  Matrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == skip_row) continue;
    std::vector<Expr> row;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != skip_col) row.push_back(m[i][j]);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::string differential_name(std::size_t i) { return "@d" + std::to_string(i); }

}  // namespace

Manifold Manifold::open(std::vector<std::string> coords, Matrix g, AssumptionSet assumptions) {
  const std::size_t n = coords.size();
  if (n == 0) throw ManifoldError("manifold needs at least one coordinate");
  std::set<std::string> seen;
  for (const auto& c : coords) {
    if (!seen.insert(c).second) throw ManifoldError("repeated coordinate name '" + c + "'");
  }
  if (g.size() != n) throw ManifoldError("metric is not square or does not match the coordinates");
  for (const auto& row : g) {
    if (row.size() != n) throw ManifoldError("metric is not square or does not match the coordinates");
  }

  Manifold m;
  m.coords_ = std::move(coords);
  for (const auto& c : m.coords_) m.coord_exprs_.push_back(Expr::symbol(c));
  m.assumptions_ = std::move(assumptions);

  m.g_.assign(n, std::vector<Expr>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.g_[i][j] = m.simplify(g[i][j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (m.g_[i][j] != m.g_[j][i] && !m.simplify(m.g_[i][j] - m.g_[j][i]).is_zero()) {
        throw ManifoldError("metric is not symmetric");
      }
    }
  }

  m.det_ = m.simplify(determinant(m.g_));
  if (m.det_.is_zero() || m.equivalent(m.det_, Expr(0))) throw ManifoldError("singular metric");
  const Expr probe = probe_opaque(m.det_, 0);
  const auto names = free_symbols(probe);
  for (int attempt = 0;; ++attempt) {
    try {
      const Complex d = eval_numeric(probe, sample_point(names, m.assumptions_, 20150101, attempt));
      if (d.real() == 0.0) throw EvalError("zero determinant at sample");
      m.det_sign_ = d.real() > 0 ? 1 : -1;
      break;
    } catch (const EvalError&) {
      if (attempt > 20) throw ManifoldError("cannot determine the sign of det g");
    }
  }

  m.g_inv_.assign(n, std::vector<Expr>(n));
  if (n == 1) {
    m.g_inv_[0][0] = m.simplify(pow(m.g_[0][0], Expr(-1)));
  } else {
    const Expr inv_det = pow(m.det_, Expr(-1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        Expr cof = determinant(minor_of(m.g_, j, i));
        if ((i + j) % 2 == 1) cof = -cof;
        m.g_inv_[i][j] = cof.is_zero() ? Expr(0) : m.simplify(cof * inv_det);
        m.g_inv_[j][i] = m.g_inv_[i][j];
      }
    }
  }
  return m;
}

bool Manifold::equivalent(const Expr& a, const Expr& b, const EquivalenceOptions& options) const {
  if (!has_opaque(a) && !has_opaque(b)) return grg::equivalent(a, b, assumptions_, options);
  for (int v = 0; v < kProbeVariants; ++v) {
    if (!grg::equivalent(probe_opaque(a, v), probe_opaque(b, v), assumptions_, options)) return false;
  }
  return true;
}

const Expr& Manifold::coord(int i) const {
  if (i < 1 || i > dim()) throw IndexError("coordinate index " + std::to_string(i) + " out of range");
  return coord_exprs_[static_cast<std::size_t>(i - 1)];
}

Expr Manifold::metric(int i, int j) const {
  const int n = dim();
  if (i == 0 || j == 0 || std::abs(i) > n || std::abs(j) > n) {
    throw IndexError("metric index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
  }
  const auto a = static_cast<std::size_t>(std::abs(i) - 1);
  const auto b = static_cast<std::size_t>(std::abs(j) - 1);
  if (i > 0 && j > 0) return g_[a][b];
  if (i < 0 && j < 0) return g_inv_[a][b];
  return a == b ? Expr(1) : Expr(0);
}

const Expr& Manifold::sqrt_abs_det() const {
  std::call_once(sqrt_det_->once, [this] {
    sqrt_det_->value = simplify(sqrt(det_sign_ > 0 ? det_ : -det_));
  });
  return sqrt_det_->value;
}

Matrix to_matrix(const Expr& form, const std::vector<std::string>& coords) {
  const std::size_t n = coords.size();
  std::vector<Expr> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(Expr::symbol(differential_name(i)));

  const Expr poly = replace(form, [&](const Expr& e) -> std::optional<Expr> {
    if (!e.is(ExprKind::Opaque) || e.name() != "Dt") return std::nullopt;
    const Expr& x = e.operands()[0];
    for (std::size_t i = 0; i < n; ++i) {
      if (x.is(ExprKind::Symbol) && x.name() == coords[i]) return d[i];
    }
    throw ManifoldError("differential " + print(e) + " does not match any coordinate");
  });

  Matrix g(n, std::vector<Expr>(n));
  std::vector<Expr> rebuilt;
  for (std::size_t i = 0; i < n; ++i) {
    const Expr di = diff(poly, d[i]);
    for (std::size_t j = i; j < n; ++j) {
      Expr c = simplify(Expr::rational(1, 2) * diff(di, d[j]));
      for (const auto& s : free_symbols(c)) {
        if (s.rfind("@d", 0) == 0) throw ManifoldError("line element has degree other than 2 in the differentials");
      }
      g[i][j] = c;
      g[j][i] = c;
      rebuilt.push_back((i == j ? Expr(1) : Expr(2)) * c * d[i] * d[j]);
    }
  }
  const Expr rest = poly - Expr::sum(std::move(rebuilt));
  if (!simplify(rest).is_zero() && !grg::equivalent(rest, Expr(0))) {
    throw ManifoldError("line element has degree other than 2 in the differentials");
  }
  return g;
}

Expr from_matrix(const Matrix& g, const std::vector<std::string>& coords) {
  std::vector<Expr> terms;
  std::vector<Expr> d;
  for (const auto& c : coords) d.push_back(Expr::opaque("Dt", {Expr::symbol(c)}));
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t j = i; j < g.size(); ++j) {
      terms.push_back((i == j ? Expr(1) : Expr(2)) * g[i][j] * d[i] * d[j]);
    }
  }
  return Expr::sum(std::move(terms));
}

}  // namespace grg
