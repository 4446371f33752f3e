#include "grg/invariants.hpp"

#include "grg/curvature.hpp"
#include "grg/error.hpp"

namespace grg {

namespace {

struct Terms {
  Session& s;
  std::vector<Expr> parts;

  void add(const Expr& coef, const std::vector<Factor>& factors) {
    const Expr v = contract(s, factors);
    if (!v.is_zero()) parts.push_back(coef * v);
  }

  Expr total() { return s.simplify(Expr::sum(std::move(parts))); }
};

Expr q(long n, long d) { return Expr::rational(n, d); }

}  // namespace

const std::vector<CmInvariant>& cm_invariants() {
  static const std::vector<CmInvariant> all{CmInvariant::R1, CmInvariant::R2, CmInvariant::R3, CmInvariant::W1,
                                            CmInvariant::W2, CmInvariant::M1, CmInvariant::M2, CmInvariant::M3,
                                            CmInvariant::M4, CmInvariant::M5};
  return all;
}

std::string to_string(CmInvariant which) {
  static const char* const names[] = {"R1", "R2", "R3", "W1", "W2", "M1", "M2", "M3", "M4", "M5"};
  return names[static_cast<int>(which)];
}

CmInvariant cm_invariant_from_string(const std::string& name) {
  for (CmInvariant w : cm_invariants()) {
    if (to_string(w) == name) return w;
  }
  throw DomainError("unknown invariant '" + name + "'");
}

Expr cm_invariant(Session& s, CmInvariant which) {
  std::lock_guard lock(s.mutex());
  if (s.dim() != 4) {
    throw DimensionError(to_string(which) + " requires dimension 4, manifold has dimension " +
                         std::to_string(s.dim()));
  }
  TensorField* S = &s.tensor(names::plebanski);
  TensorField* C = &s.tensor(names::weyl);
  TensorField* D = &s.tensor(names::dual_weyl);
  const Expr i = Expr::imaginary_unit();
  Terms t{s, {}};

  switch (which) {
    case CmInvariant::R1:
      t.add(q(1, 4), {{S, "-a b"}, {S, "-b a"}});
      break;
    case CmInvariant::R2:
      t.add(q(-1, 8), {{S, "-a b"}, {S, "-b c"}, {S, "-c a"}});
      break;
    case CmInvariant::R3:
      t.add(q(1, 16), {{S, "-a b"}, {S, "-b c"}, {S, "-c d"}, {S, "-d a"}});
      break;
    case CmInvariant::W1:
      t.add(q(1, 8), {{C, "a b c d"}, {C, "-a -b -c -d"}});
      t.add(q(1, 8) * i, {{D, "a b c d"}, {C, "-a -b -c -d"}});
      break;
    case CmInvariant::W2:
      t.add(q(-1, 16), {{C, "a b -c -d"}, {C, "c d -e -f"}, {C, "e f -a -b"}});
      t.add(q(-1, 16) * i, {{D, "a b -c -d"}, {C, "c d -e -f"}, {C, "e f -a -b"}});
      break;
    case CmInvariant::M1:
      t.add(q(1, 8), {{S, "-a -d"}, {S, "-b -c"}, {C, "a b c d"}});
      t.add(q(-1, 8) * i, {{S, "-a -d"}, {S, "-b -c"}, {D, "a b c d"}});
      break;
    case CmInvariant::M2:
      t.add(q(1, 8) * i, {{S, "-b -c"}, {S, "e f"}, {D, "a b c d"}, {C, "-a -e -f -d"}});
      t.add(q(1, 16), {{S, "-b -c"}, {S, "e f"}, {C, "a b c d"}, {C, "-a -e -f -d"}});
      t.add(q(-1, 16), {{S, "-b -c"}, {S, "e f"}, {D, "a b c d"}, {D, "-a -e -f -d"}});
      break;
    case CmInvariant::M3:
      t.add(q(1, 16), {{S, "-b -c"}, {S, "e f"}, {C, "a b c d"}, {C, "-a -e -f -d"}});
      t.add(q(1, 16), {{S, "-b -c"}, {S, "e f"}, {D, "a b c d"}, {D, "-a -e -f -d"}});
      break;
    case CmInvariant::M4:
      t.add(q(-1, 32), {{S, "-a -g"}, {S, "-c d"}, {S, "-e -f"}, {C, "a c -d -b"}, {C, "b e f g"}});
      t.add(q(-1, 32), {{S, "-a -g"}, {S, "-c d"}, {S, "-e -f"}, {D, "a c -d -b"}, {D, "b e f g"}});
      break;
    case CmInvariant::M5:
      for (TensorField* outer : {D, C}) {
        const Expr coef = outer == D ? q(1, 32) * i : q(1, 32);
        t.add(coef, {{S, "-b -c"}, {S, "-e -f"}, {outer, "-a -g -h -d"}, {D, "a b c d"}, {D, "g e f h"}});
        t.add(coef, {{S, "-b -c"}, {S, "-e -f"}, {outer, "-a -g -h -d"}, {C, "a b c d"}, {C, "g e f h"}});
      }
      break;
  }
  return t.total();
}

std::vector<std::pair<CmInvariant, Expr>> cm_all(Session& s) {
  std::vector<std::pair<CmInvariant, Expr>> out;
  for (CmInvariant w : cm_invariants()) out.emplace_back(w, cm_invariant(s, w));
  return out;
}

}  // namespace grg
