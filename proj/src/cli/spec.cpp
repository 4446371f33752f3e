#include <fstream>
#include <sstream>

#include "grg/cli.hpp"
#include "grg/deriv.hpp"
#include "grg/hypersurface.hpp"
#include "json.hpp"

namespace grg::cli {

namespace {

using nlohmann::json;

std::vector<std::string> string_list(const json& doc, const char* field) {
  std::vector<std::string> out;
  if (!doc.contains(field)) return out;
  const json& v = doc.at(field);
  if (!v.is_array()) throw SpecError(std::string("'") + field + "' must be a list of strings");
  for (const auto& item : v) {
    if (!item.is_string()) throw SpecError(std::string("'") + field + "' must be a list of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

/// "lieD[U][T]" with prefix "lieD" -> {"U", "T"}; nullopt when `name`
/// does not have that shape.
std::optional<std::vector<std::string>> bracket_args(const std::string& name, const std::string& prefix) {
  if (name.size() <= prefix.size() || name.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  std::vector<std::string> args;
  std::size_t i = prefix.size();
  while (i < name.size()) {
    if (name[i] != '[') return std::nullopt;
    int depth = 0;
    std::size_t j = i;
    for (; j < name.size(); ++j) {
      if (name[j] == '[') ++depth;
      if (name[j] == ']' && --depth == 0) break;
    }
    if (j == name.size()) return std::nullopt;
    args.push_back(name.substr(i + 1, j - i - 1));
    i = j + 1;
  }
  return args;
}

}  // namespace

ManifoldSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw SpecError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw SpecError("spec must be a JSON object");

  ManifoldSpec spec;
  spec.coordinates = string_list(doc, "coordinates");
  if (spec.coordinates.empty()) throw SpecError("spec needs a non-empty 'coordinates' list");
  spec.assumptions = string_list(doc, "assumptions");

  const bool has_metric = doc.contains("metric");
  const bool has_form = doc.contains("line_element");
  if (has_metric == has_form) throw SpecError("spec needs exactly one of 'metric' and 'line_element'");
  if (has_metric) {
    const json& m = doc.at("metric");
    if (!m.is_array()) throw SpecError("'metric' must be a matrix of expression strings");
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : m) {
      if (!row.is_array()) throw SpecError("'metric' must be a matrix of expression strings");
      std::vector<std::string> r;
      for (const auto& cell : row) {
        if (!cell.is_string()) throw SpecError("'metric' must be a matrix of expression strings");
        r.push_back(cell.get<std::string>());
      }
      rows.push_back(std::move(r));
    }
    spec.metric = std::move(rows);
  } else {
    if (!doc.at("line_element").is_string()) throw SpecError("'line_element' must be a string");
    spec.line_element = doc.at("line_element").get<std::string>();
  }

  if (doc.contains("tensors")) {
    for (const auto& t : doc.at("tensors")) {
      TensorDecl d;
      try {
        d.name = t.at("name").get<std::string>();
        d.valence = t.at("valence").get<std::vector<int>>();
        d.components = t.at("components").get<std::vector<std::string>>();
      } catch (const json::exception& e) {
        throw SpecError(std::string("bad tensor entry: ") + e.what());
      }
      spec.tensors.push_back(std::move(d));
    }
  }
  return spec;
}

ManifoldSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read spec file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_spec(text.str());
}

void open_spec(Session& s, const ManifoldSpec& spec) {
  try {
    AssumptionSet a;
    for (const auto& text : spec.assumptions) a.assume(text);
    Matrix g;
    if (spec.metric) {
      for (const auto& row : *spec.metric) {
        std::vector<Expr> r;
        for (const auto& cell : row) r.push_back(parse(cell));
        g.push_back(std::move(r));
      }
    } else {
      g = to_matrix(parse(*spec.line_element), spec.coordinates);
    }
    s.open(Manifold::open(spec.coordinates, std::move(g), std::move(a)));
    for (const auto& t : spec.tensors) {
      std::vector<Expr> values;
      for (const auto& c : t.components) values.push_back(parse(c));
      s.tensor_ext(t.name, t.valence, std::move(values));
    }
  } catch (const Error& e) {
    throw SpecError(e.what());
  }
}

TensorField& resolve_tensor(Session& s, const std::string& name) {
  if (TensorField* t = s.find(name)) return *t;
  if (auto args = bracket_args(name, "covariantD"); args && args->size() == 1) {
    resolve_tensor(s, (*args)[0]);
    return covariant_d(s, (*args)[0]);
  }
  if (auto args = bracket_args(name, "lieD"); args && args->size() == 2) {
    resolve_tensor(s, (*args)[0]);
    resolve_tensor(s, (*args)[1]);
    return lie_d(s, (*args)[0], (*args)[1]);
  }
  if (auto args = bracket_args(name, "h"); args && args->size() == 1) {
    resolve_tensor(s, (*args)[0]);
    return induced_metric(s, (*args)[0]);
  }
  if (auto args = bracket_args(name, "K"); args && args->size() == 1) {
    resolve_tensor(s, (*args)[0]);
    return second_fundamental_form(s, (*args)[0]);
  }
  throw UnknownTensorError("unknown tensor '" + name + "'");
}

}  // namespace grg::cli
