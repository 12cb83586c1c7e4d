#include "rdk/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdk/admissibility.hpp"
#include "rdk/catalog.hpp"
#include "rdk/errors.hpp"
#include "rdk/json_io.hpp"
#include "rdk/planner.hpp"
#include "rdk/search.hpp"
#include "rdk/verifier.hpp"

namespace rdk {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const std::vector<std::string> kShapeNames{"K2", "P3", "P4", "K3", "C4", "K13", "KITE", "K4E", "K4"};

// Usage problems detected after CLI11 has finished parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GraphShape shape_arg(const std::string& name) {
  if (std::find(kShapeNames.begin(), kShapeNames.end(), name) == kShapeNames.end())
    throw UsageError("unknown shape '" + name + "' (expected one of K2 P3 P4 K3 C4 K13 KITE K4E K4)");
  return GraphShape::from_name(name);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write " + path.string());
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << "\n"; }

// "4^3" or "2^3.4^1".
std::vector<std::pair<int, int>> parse_type(const std::string& text) {
  std::vector<std::pair<int, int>> type;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '.')) {
    int g = 0, u = 0;
    char tail = 0;
    if (std::sscanf(part.c_str(), "%d^%d%c", &g, &u, &tail) != 2 || g < 1 || u < 1)
      throw UsageError("bad group type '" + text + "' (expected g^u)");
    type.emplace_back(g, u);
  }
  if (type.empty()) throw UsageError("empty group type");
  return type;
}

struct GenerateArgs {
  std::string shape;
  int v = 0, lambda = 0;
  std::string out;
  bool dry_run = false, trace = false;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out, std::ostream& err) {
  const GraphShape shape = shape_arg(a.shape);
  Recipe recipe;
  try {
    recipe = plan(shape, a.v, a.lambda);
  } catch (const NotAdmissible& e) {
    err << "not admissible: " << e.what() << "\n";
    const auto verdict = spectrum_verdict(shape, a.v, a.lambda);
    json violations = json::array();
    for (const auto& c : verdict.violations()) violations.push_back(c.text);
    emit(out, {{"status", std::string(status_name(verdict.status))}, {"violations", violations}});
    return kExitNegative;
  }
  Catalog catalog;
  const auto missing = missing_ingredients(recipe, catalog);
  json header = {{"shape", a.shape}, {"v", a.v}, {"lambda", a.lambda}, {"construction", recipe.construction}, {"missing", missing}};

  if (a.dry_run || !missing.empty()) {
    header["status"] = missing.empty() ? "READY" : "MISSING_INGREDIENT";
    if (a.dry_run || a.trace) header["recipe"] = to_json(recipe, &catalog);
    emit(out, header);
    for (const auto& m : missing) err << "missing ingredient: " << m << "\n";
    return missing.empty() ? kExitOk : kExitMissing;
  }

  const auto design = execute(recipe, catalog);
  const auto report = verify_design(design);
  if (!report.valid) throw InternalInconsistency("generated design failed verification: " + report.summary());
  const std::string text = dump_design(design);
  if (!a.out.empty()) {
    write_file(a.out, text);
    header["status"] = "OK";
    header["out"] = a.out;
    header["classes"] = design.classes.size();
    if (a.trace) header["recipe"] = to_json(recipe, &catalog);
    emit(out, header);
  } else if (a.trace) {
    header["status"] = "OK";
    header["recipe"] = to_json(recipe, &catalog);
    header["design"] = json::parse(text);
    emit(out, header);
  } else {
    out << text;
  }
  err << "generated " << a.shape << " v=" << a.v << " lambda=" << a.lambda << ": " << design.classes.size() << " classes\n";
  return kExitOk;
}

int cmd_verify(const std::string& file, const std::string& kind, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(file);
  AnyDesign design;
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw MalformedDesign("top level is not an object");
    if (!kind.empty() && !doc.contains("kind")) doc["kind"] = kind;
    design = read_ingredient_document(doc);
  } catch (const json::exception& e) {
    err << file << ": malformed input: " << e.what() << "\n";
    emit(out, {{"valid", false}, {"error", e.what()}});
    return kExitUsage;
  } catch (const Error& e) {
    err << file << ": malformed input: " << e.what() << "\n";
    emit(out, {{"valid", false}, {"error", e.what()}});
    return kExitUsage;
  }
  const std::string actual =
      std::holds_alternative<ResolvableDesign>(design) ? "design" : std::string(kind_name(std::get<GroupedDesign>(design).kind));
  if (!kind.empty() && actual != kind) {
    err << file << ": expected a " << kind << ", found a " << actual << "\n";
    emit(out, {{"valid", false}, {"kind", actual}, {"error", "kind mismatch: expected " + kind}});
    return kExitNegative;
  }
  const auto report = verify(design);
  json doc = report.to_json();
  doc["kind"] = actual;
  emit(out, doc);
  err << file << ": " << report.summary() << "\n";
  return report.valid ? kExitOk : kExitNegative;
}

int cmd_spectrum(const std::string& shape_name, int v_max, int lambda_max, std::ostream& out) {
  const GraphShape shape = shape_arg(shape_name);
  if (v_max < 1 || lambda_max < 1) throw UsageError("--v-max and --lambda-max must be positive");
  out << "shape\tv\tlambda\tstatus\tclasses\texistence\treasons\n";
  for (int v = shape.vertex_count(); v <= v_max; ++v) {
    for (int lambda = 1; lambda <= lambda_max; ++lambda) {
      const auto verdict = spectrum_verdict(shape, v, lambda);
      std::vector<std::string> seen;
      std::string reasons;
      for (const auto& c : verdict.violations()) {
        if (std::find(seen.begin(), seen.end(), c.text) != seen.end()) continue;
        seen.push_back(c.text);
        reasons += (reasons.empty() ? "" : "; ") + c.text;
      }
      out << shape_name << '\t' << v << '\t' << lambda << '\t' << status_name(verdict.status) << '\t'
          << (verdict.status == Status::Admissible ? std::to_string(verdict.full_class_count) : "-") << '\t'
          << (verdict.existence_known ? "known" : "open") << '\t' << (reasons.empty() ? "-" : reasons) << '\n';
    }
  }
  return kExitOk;
}

struct SearchArgs {
  std::string shape;
  int v = 0, lambda = 1;
  std::string type;
  long long nodes = SearchBudget{}.nodes;
  double seconds = SearchBudget{}.seconds;
};

int cmd_search(const SearchArgs& a, std::ostream& out, std::ostream& err) {
  const GraphShape shape = shape_arg(a.shape);
  if ((a.v > 0) == !a.type.empty()) throw UsageError("search needs exactly one of --v and --type");
  if (a.nodes < 1 || a.seconds <= 0) throw UsageError("budgets must be positive");
  SearchProblem p;
  if (!a.type.empty()) {
    p = rgdd_problem(shape, parse_type(a.type), a.lambda);
  } else {
    p.shape = shape;
    p.v = a.v;
    p.lambda = a.lambda;
  }
  p.budget = {a.nodes, a.seconds};
  const auto o = search(p);
  json doc = {{"status", std::string(search_status_name(o.status))}, {"nodes", o.nodes}};
  if (!o.note.empty()) doc["note"] = o.note;
  if (o.design) doc["design"] = to_json(*o.design);
  emit(out, doc);
  err << search_status_name(o.status) << " after " << o.nodes << " nodes\n";
  return o.status == SearchStatus::Found ? kExitOk : kExitNegative;
}

int cmd_ingredients_list(std::ostream& out) {
  Catalog catalog;
  json list = json::array();
  auto add = [&](const IngredientKey& key) {
    const auto src = catalog.source(key);
    list.push_back({{"key", key.name()}, {"source", source_kind_name(src.kind)}, {"detail", src.detail}, {"description", src.description}});
  };
  for (const auto& key : catalog.builtin_keys()) add(key);
  if (const auto& dir = catalog.ingredient_dir(); dir && fs::is_directory(*dir)) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(*dir)) {
      if (entry.path().extension() == ".json") names.push_back(entry.path().stem().string());
    }
    std::sort(names.begin(), names.end());
    for (const auto& n : names) {
      try {
        add(IngredientKey::parse(n));
      } catch (const Error&) {
        // not an ingredient file name
      }
    }
  }
  emit(out, {{"ingredientDir", catalog.ingredient_dir() ? catalog.ingredient_dir()->string() : ""}, {"ingredients", list}});
  return kExitOk;
}

int cmd_ingredients_import(const std::string& file, std::ostream& out, std::ostream& err) {
  Catalog catalog;
  if (!catalog.ingredient_dir()) throw UsageError("RDK_INGREDIENTS is not set");
  const std::string text = read_file(file);
  IngredientKey key;
  try {
    key = catalog.import_text(text);
  } catch (const RejectedIngredient& e) {
    err << file << ": " << e.what() << "\n";
    emit(out, {{"status", "REJECTED"}, {"report", json::parse(e.report())}});
    return kExitNegative;
  }
  const fs::path dest = *catalog.ingredient_dir() / key.file_name();
  json doc = {{"key", key.name()}, {"path", dest.string()}};
  if (fs::exists(dest)) {
    if (read_file(dest.string()) != text) throw VersionConflict(dest.string() + " already exists with different content");
    doc["status"] = "UNCHANGED";
  } else {
    fs::create_directories(dest.parent_path());
    write_file(dest, text);
    doc["status"] = "IMPORTED";
  }
  emit(out, doc);
  err << "imported " << key.name() << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Resolvable G-design construction, verification and search", "rdk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--seedless", "accepted for compatibility; every command is deterministic");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "construct and verify a resolvable design");
  generate->add_option("shape", gen.shape, "graph shape")->required();
  generate->add_option("v", gen.v, "order")->required();
  generate->add_option("lambda", gen.lambda, "index")->required();
  generate->add_option("--out", gen.out, "write the design to this file");
  generate->add_flag("--dry-run", gen.dry_run, "plan only and list missing ingredients");
  generate->add_flag("--trace", gen.trace, "include the recipe");

  std::string verify_file, verify_kind;
  auto* verify_cmd = app.add_subcommand("verify", "verify a design file");
  verify_cmd->add_option("file", verify_file, "design JSON")->required();
  verify_cmd->add_option("--kind", verify_kind, "expected kind")->check(CLI::IsMember({"design", "rgdd", "frame", "ird"}));

  std::string spectrum_shape;
  int v_max = 0, lambda_max = 0;
  auto* spectrum = app.add_subcommand("spectrum", "tabulate admissibility verdicts");
  spectrum->add_option("shape", spectrum_shape, "graph shape")->required();
  spectrum->add_option("--v-max", v_max, "largest order")->required();
  spectrum->add_option("--lambda-max", lambda_max, "largest index")->required();

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search", "backtracking search for a small design or RGDD");
  search_cmd->add_option("shape", sa.shape, "graph shape")->required();
  auto* v_opt = search_cmd->add_option("--v", sa.v, "order");
  search_cmd->add_option("--type", sa.type, "group type g^u")->excludes(v_opt);
  search_cmd->add_option("--lambda", sa.lambda, "index");
  search_cmd->add_option("--budget-nodes", sa.nodes, "node limit");
  search_cmd->add_option("--budget-secs", sa.seconds, "wall-clock limit in seconds");

  auto* ingredients = app.add_subcommand("ingredients", "list or import catalog ingredients");
  ingredients->require_subcommand(1);
  auto* list = ingredients->add_subcommand("list", "list known ingredients");
  std::string import_file;
  auto* import_cmd = ingredients->add_subcommand("import", "verify a file and copy it into RDK_INGREDIENTS");
  import_cmd->add_option("file", import_file, "ingredient JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*generate) return cmd_generate(gen, out, err);
    if (*verify_cmd) return cmd_verify(verify_file, verify_kind, out, err);
    if (*spectrum) return cmd_spectrum(spectrum_shape, v_max, lambda_max, out);
    if (*search_cmd) return cmd_search(sa, out, err);
    if (*list) return cmd_ingredients_list(out);
    if (*import_cmd) return cmd_ingredients_import(import_file, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MissingIngredient& e) {
    err << "error: " << e.what() << "\n";
    emit(out, {{"status", "MISSING_INGREDIENT"}, {"missing", e.keys()}});
    return kExitMissing;
  } catch (const VersionConflict& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const SearchBudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  }
  return kExitUsage;
}

}  // namespace rdk
