#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "grg/cli.hpp"
#include "grg/curvature.hpp"
#include "grg/deriv.hpp"
#include "grg/invariants.hpp"
#include "json.hpp"

namespace grg::cli {

namespace {

using nlohmann::json;

struct Context {
  std::ostream& out;
  std::ostream& err;
  Session session;
  bool opened = false;
  std::string format = "text";
  std::uint64_t seed = 20150101;
  bool check = false;
};

struct Options {
  std::string spec;
  std::string tensor;
  std::string indices;
  std::string which = "all";
  std::string fn = "f";
  std::string action = "view";
  std::string scope = "self";
  std::string script;
};

bool json_mode(const Context& c) { return c.format == "json"; }

json counts(Session& s) {
  json out = json::object();
  for (const auto& name : s.tensor_names()) {
    const std::size_t n = s.tensor(name).evaluated_count();
    if (n > 0) out[name] = n;
  }
  return out;
}

void ensure_session(Context& c, const Options& o) {
  if (!o.spec.empty()) {
    open_spec(c.session, load_spec(o.spec));
    c.opened = true;
  }
  if (!c.opened) throw SpecError("no manifold: pass --spec <file>");
}

void self_check(Context& c, const std::string& printed, const Expr& value) {
  if (!c.check) return;
  EquivalenceOptions opts;
  opts.seed = c.seed;
  const Expr reparsed = parse(printed);
  if (!c.session.manifold().equivalent(reparsed, value, opts)) {
    throw Error("self-check failed: printed output does not reproduce the computed value");
  }
}

void cmd_component(Context& c, const Options& o) {
  ensure_session(c, o);
  TensorField& t = resolve_tensor(c.session, o.tensor);
  const IndexTuple idx = parse_indices(o.indices);
  const Expr value = t.component(idx);
  const std::string text = format_value(value, c.session.manifold().assumptions());
  self_check(c, text, value);
  if (json_mode(c)) {
    json doc{{"tensor", o.tensor}, {"indices", idx}, {"expression", text}, {"evaluated_counts", counts(c.session)}};
    c.out << doc.dump() << "\n";
  } else {
    c.out << text << "\n";
  }
}

void cmd_invariant(Context& c, const Options& o) {
  ensure_session(c, o);
  std::vector<CmInvariant> which;
  if (o.which == "all") {
    which = cm_invariants();
  } else {
    which.push_back(cm_invariant_from_string(o.which));
  }
  json values = json::object();
  for (CmInvariant w : which) {
    const Expr value = cm_invariant(c.session, w);
    const std::string text = format_value(value, c.session.manifold().assumptions());
    self_check(c, text, value);
    values[to_string(w)] = text;
    if (json_mode(c)) continue;
    if (which.size() == 1) {
      c.out << text << "\n";
    } else {
      c.out << to_string(w) << " = " << text << "\n";
    }
  }
  if (json_mode(c)) {
    json doc{{"invariants", values}, {"evaluated_counts", counts(c.session)}};
    c.out << doc.dump() << "\n";
  }
}

void cmd_laplacian(Context& c, const Options& o) {
  ensure_session(c, o);
  const auto& coords = c.session.manifold().coords();
  std::vector<Expr> args;
  for (const auto& x : coords) args.push_back(Expr::symbol(x));
  const Expr f = Expr::opaque(o.fn, std::move(args));
  const Expr value = scalar_laplacian(c.session, f);
  const std::string text = format_value(value, c.session.manifold().assumptions());
  if (json_mode(c)) {
    json doc{{"function", print(f)}, {"expression", text}, {"evaluated_counts", counts(c.session)}};
    c.out << doc.dump() << "\n";
  } else {
    c.out << text << "\n";
  }
}

std::string key_list(const std::vector<IndexTuple>& keys) {
  std::string s = "{";
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) s += ", ";
    s += to_string(keys[i]);
  }
  return s + "}";
}

void cmd_cache(Context& c, const Options& o) {
  ensure_session(c, o);
  Session& s = c.session;
  json doc{{"action", o.action}};
  if (o.action == "stats") {
    std::vector<std::string> names;
    if (o.tensor.empty()) {
      names = s.tensor_names();
    } else {
      names.push_back(resolve_tensor(s, o.tensor).name());
    }
    json stats = json::object();
    for (const auto& n : names) {
      TensorField& t = s.tensor(n);
      if (o.tensor.empty() && t.evaluated_count() == 0) continue;
      stats[n] = {{"evaluated", t.evaluated_count()}, {"base", t.base_evaluations()}};
      if (!json_mode(c)) c.out << n << ": " << t.evaluated_count() << " (" << t.base_evaluations() << " base)\n";
    }
    doc["stats"] = stats;
  } else {
    if (o.tensor.empty()) throw UnknownTensorError("cache " + o.action + " needs --tensor");
    TensorField& t = resolve_tensor(s, o.tensor);
    doc["tensor"] = t.name();
    if (o.action == "view") {
      const auto keys = t.cacheview();
      doc["keys"] = keys;
      if (!json_mode(c)) c.out << key_list(keys) << "\n";
    } else if (o.action == "associated") {
      json entries = json::array();
      std::string text = "{";
      for (const auto& [name, idx] : s.associated(t.name())) {
        entries.push_back({{"tensor", name}, {"indices", idx}});
        if (text.size() > 1) text += ", ";
        text += name + to_string(idx);
      }
      doc["keys"] = entries;
      if (!json_mode(c)) c.out << text << "}\n";
    } else if (o.action == "retreat") {
      if (o.scope != "self" && o.scope != "associated") throw Error("--scope must be self or associated");
      s.retreat(t.name(), o.scope == "self" ? RetreatScope::Self : RetreatScope::Associated);
    } else {
      throw Error("unknown cache action '" + o.action + "'");
    }
  }
  if (json_mode(c)) {
    doc["evaluated_counts"] = counts(s);
    c.out << doc.dump() << "\n";
  }
}

int dispatch(Context& c, const std::vector<std::string>& argv_tail, bool in_script);

void cmd_run(Context& c, const Options& o) {
  ensure_session(c, o);
  std::ifstream in(o.script);
  if (!in) throw Error("cannot read script '" + o.script + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tokens;
    for (std::string w; words >> w;) tokens.push_back(w);
    if (tokens.empty()) continue;
    const int code = dispatch(c, tokens, true);
    if (code != kOk) throw Error("script line failed: " + line);
  }
}

int dispatch(Context& c, const std::vector<std::string>& args, bool in_script) {
  CLI::App app{"Symbolic tensor calculus on a declared manifold", "grg"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    if (!in_script) {
      sub->add_option("--spec", o.spec, "Manifold spec file (JSON)");
      sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
      sub->add_option("--seed", c.seed, "Seed of the equivalence sampler used by --check");
      sub->add_flag("--check", c.check, "Verify that the printed output re-parses to the computed value");
    }
  };

  auto* component = app.add_subcommand("component", "Print one tensor component");
  component->add_option("--tensor", o.tensor, "Tensor name")->required();
  component->add_option("--indices", o.indices, "Comma-separated signed indices, negative = contravariant");
  common(component);

  auto* invariant = app.add_subcommand("invariant", "Print Carminati-McLenaghan invariants");
  invariant->add_option("--which", o.which, "R1..R3, W1, W2, M1..M5 or all");
  common(invariant);

  auto* laplacian = app.add_subcommand("laplacian", "Laplacian of an arbitrary function of the coordinates");
  laplacian->add_option("--fn", o.fn, "Function name");
  common(laplacian);

  auto* cache = app.add_subcommand("cache", "Inspect or clear memoized components");
  cache->add_option("--tensor", o.tensor, "Tensor name");
  cache->add_option("--action", o.action, "view, associated, stats or retreat")
      ->check(CLI::IsMember({"view", "associated", "stats", "retreat"}));
  cache->add_option("--scope", o.scope, "Retreat scope: self or associated");
  common(cache);

  CLI::App* run = nullptr;
  if (!in_script) {
    run = app.add_subcommand("run", "Execute a script of queries in one session");
    run->add_option("script", o.script, "Script file, one query per line")->required();
    common(run);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, c.out, c.err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (component->parsed()) cmd_component(c, o);
    if (invariant->parsed()) cmd_invariant(c, o);
    if (laplacian->parsed()) cmd_laplacian(c, o);
    if (cache->parsed()) cmd_cache(c, o);
    if (run && run->parsed()) cmd_run(c, o);
  } catch (const std::exception& e) {
    c.err << "grg: " << e.what() << "\n";
    return exit_code(e);
  }
  return kOk;
}

}  // namespace

IndexTuple parse_indices(const std::string& text) {
  IndexTuple out;
  if (text.find_first_not_of(" \t") == std::string::npos) return out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw IndexError("bad index '" + item + "' in '" + text + "'");
    }
  }
  return out;
}

std::string format_value(const Expr& e, const AssumptionSet& assumptions) {
  const auto [re, im] = split_complex(e, assumptions);
  if (im.is_zero()) return print(re);
  if (re.is_zero()) return "(" + print(im) + ")*I";
  return print(re) + " + (" + print(im) + ")*I";
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const IndexError*>(&e)) return kBadIndices;
  if (dynamic_cast<const UnknownTensorError*>(&e)) return kUnknownTensor;
  if (dynamic_cast<const SpecError*>(&e)) return kBadSpec;
  if (dynamic_cast<const DimensionError*>(&e)) return kDimension;
  return kFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Context c{out, err, {}};
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(c, args, false);
}

}  // namespace grg::cli
