#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "grg/expr.hpp"

namespace grg {

/// Open interval lo < x < hi; either bound may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool lower_bounded() const { return lo != -std::numeric_limits<double>::infinity(); }
  bool upper_bounded() const { return hi != std::numeric_limits<double>::infinity(); }
};

/// Per-symbol domain assumptions used by simplify() (root extraction) and by
/// equivalent() (sampling ranges).
class AssumptionSet {
 public:
  AssumptionSet() = default;

  /// Adds `lo < name < hi`. Throws DomainError if the symbol is already
  /// assumed or the interval is empty.
  void assume(const std::string& name, Interval interval);

  /// Parses "0 < r", "0 < theta < Pi", "r > 0" or "x < 1". Bounds are numeric
  /// expressions; the symbol Pi stands for the constant.
  void assume(const std::string& text);

  const Interval* find(const std::string& name) const;
  bool empty() const { return intervals_.empty(); }
  const std::map<std::string, Interval>& intervals() const { return intervals_; }

  /// True when `name` is assumed and its interval lies in (0, inf).
  bool positive(const std::string& name) const;

 private:
  std::map<std::string, Interval> intervals_;
};

// ---------------------------------------------------------------------------
// Parsing and printing

/// Parses the infix grammar: identifiers, integers, `+ - * / ^`, `Name[arg]`
/// or `Name(arg)` for known functions, lowercase `f[x,y]` and
/// `f^(1,0)[x,y]` for opaque functions, `Dt[x]` differentials and `I`.
/// The result is light-canonical but not simplified.
Expr parse(std::string_view text);

/// Prints in the same grammar; `parse(print(e)) == e` for canonical `e`.
std::string print(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

// ---------------------------------------------------------------------------
// Calculus and rewriting

Expr diff(const Expr& e, const Expr& x);
Expr diff(const Expr& e, const std::string& x);

/// Rational normalization over a common denominator with polynomial GCD
/// cancellation, sin^2+cos^2 and cosh^2-sinh^2 reduction, multiple-angle and
/// parity rewriting, reciprocal-function elimination, and root extraction of
/// factors that the assumptions make positive. Idempotent.
Expr simplify(const Expr& e, const AssumptionSet& assumptions = {});

/// Simultaneous substitution of symbols, followed by light canonicalization.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);

/// Top-down rewrite: nodes for which `rule` returns a value are replaced,
/// other nodes are rebuilt from rewritten operands.
Expr replace(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& rule);

/// Replaces every occurrence of opaque function `name` (and its partials) by
/// the derivatives of `body`, whose free parameters are `params` in argument
/// order.
Expr instantiate_opaque(const Expr& e, const std::string& name,
                        const std::vector<std::string>& params, const Expr& body);

bool has_opaque(const Expr& e);

/// Binds every opaque function to the `variant`-th of three fixed smooth
/// test functions of its arguments (exponential, shifted sine, polynomial).
Expr probe_opaque(const Expr& e, int variant);
inline constexpr int kProbeVariants = 3;

// ---------------------------------------------------------------------------
// Numerics

using Complex = std::complex<double>;

enum class EvalMode { Complex, Real };

Complex eval_numeric(const Expr& e, const std::map<std::string, Complex>& bindings,
                     EvalMode mode = EvalMode::Complex);

enum class Equivalence { Equivalent, NotEquivalent, Inconclusive };

struct EquivalenceOptions {
  /// Number of accepted sample points.
  int samples = 24;
  /// Documented default seed; every acceptance check uses it.
  std::uint64_t seed = 20150101;
  double tolerance = 1e-9;
};

/// Randomized numeric probe of e1 == e2: true iff at every sample point
/// |e1 - e2| <= tol * (1 + |e1| + |e2|). Points are drawn from the assumption
/// intervals (default (0.1, 10)). Opaque functions must be instantiated first.
Equivalence equivalence(const Expr& e1, const Expr& e2, const AssumptionSet& assumptions = {},
                        const EquivalenceOptions& options = {});

/// One point drawn the way equivalence() draws its samples: each name from
/// its assumption interval, default (0.1, 10). Skips `skip` points first.
std::map<std::string, Complex> sample_point(const std::vector<std::string>& names,
                                            const AssumptionSet& assumptions,
                                            std::uint64_t seed = 20150101, int skip = 0);

/// Convenience wrapper: true only for Equivalence::Equivalent.
bool equivalent(const Expr& e1, const Expr& e2, const AssumptionSet& assumptions = {},
                const EquivalenceOptions& options = {});

/// Splits a simplified expression into real and imaginary parts, treating
/// every symbol as real.
std::pair<Expr, Expr> split_complex(const Expr& e, const AssumptionSet& assumptions = {});

}  // namespace grg
