#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grg/error.hpp"
#include "grg/tensor.hpp"

namespace grg::cli {

/// Malformed manifold spec file.
class SpecError : public Error {
 public:
  using Error::Error;
};

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadIndices = 2,
  kUnknownTensor = 3,
  kBadSpec = 4,
  kDimension = 5,
};

/// Dense user tensor given in a spec file.
struct TensorDecl {
  std::string name;
  std::vector<int> valence;
  std::vector<std::string> components;
};

/// {"coordinates": [...], "metric": [[...]] | "line_element": "...",
///  "assumptions": [...], "tensors": [{"name", "valence", "components"}]}
struct ManifoldSpec {
  std::vector<std::string> coordinates;
  std::optional<std::vector<std::vector<std::string>>> metric;
  std::optional<std::string> line_element;
  std::vector<std::string> assumptions;
  std::vector<TensorDecl> tensors;
};

ManifoldSpec parse_spec(const std::string& text);
ManifoldSpec load_spec(const std::string& path);

/// Opens the manifold of `spec` in `s` and registers its tensors. Every
/// failure is reported as SpecError.
void open_spec(Session& s, const ManifoldSpec& spec);

/// Registry lookup that also builds derived fields on demand:
/// covariantD[T], lieD[U][T], h[v], K[v].
TensorField& resolve_tensor(Session& s, const std::string& name);

/// "1,-2,1" -> {1,-2,1}; empty text gives the empty tuple.
IndexTuple parse_indices(const std::string& text);

/// Prints e, or "a + (b)*I" when e has a nonzero imaginary part b.
std::string format_value(const Expr& e, const AssumptionSet& assumptions = {});

/// Maps an exception to the documented exit status.
int exit_code(const std::exception& e);

/// Entry point of the `grg` tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grg::cli
