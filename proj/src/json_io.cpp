#include "rdk/json_io.hpp"

#include <fstream>
#include <sstream>

#include "rdk/errors.hpp"

namespace rdk {

using nlohmann::json;

namespace {

json labels(const std::vector<Point>& points) {
  json out = json::array();
  for (const auto& p : points) out.push_back(p.label());
  return out;
}

std::vector<Point> read_points(const json& arr, const char* what) {
  if (!arr.is_array()) throw MalformedDesign(std::string("'") + what + "' must be an array of labels");
  std::vector<Point> out;
  out.reserve(arr.size());
  for (const auto& item : arr) {
    if (item.is_string()) {
      out.emplace_back(item.get<std::string>());
    } else if (item.is_number_unsigned() || item.is_number_integer()) {
      out.push_back(Point::integer(item.get<long long>()));
    } else {
      throw MalformedDesign(std::string("non-label entry in '") + what + "'");
    }
  }
  return out;
}

void fill_common(json& doc, const ResolvableDesign& d) {
  doc["shape"] = std::string(d.shape.name());
  doc["lambda"] = d.lambda;
  doc["points"] = labels(d.points);
  json classes = json::array();
  for (const auto& c : d.classes) {
    json blocks = json::array();
    for (const auto& b : c.blocks) blocks.push_back(labels(b.tuple()));
    classes.push_back(json{{"missing", labels(c.missing)}, {"blocks", std::move(blocks)}});
  }
  doc["classes"] = std::move(classes);
}

}  // namespace

json to_json(const ResolvableDesign& design) {
  json doc = json::object();
  fill_common(doc, design);
  return doc;
}

json to_json(const GroupedDesign& design) {
  json doc = json::object();
  fill_common(doc, design.design);
  doc["kind"] = std::string(kind_name(design.kind));
  json groups = json::array();
  for (const auto& g : design.groups) groups.push_back(labels(g));
  doc["groups"] = std::move(groups);
  if (!design.hole.empty() || design.kind == GroupedKind::IRD) doc["hole"] = labels(design.hole);
  return doc;
}

json to_json(const AnyDesign& design) {
  return std::visit([](const auto& d) { return to_json(d); }, design);
}

AnyDesign design_from_json(const json& doc) {
  try {
    if (!doc.is_object()) throw MalformedDesign("design document must be a JSON object");
    ResolvableDesign d;
    d.shape = GraphShape::from_name(doc.at("shape").get<std::string>());
    d.lambda = doc.at("lambda").get<int>();
    if (d.lambda < 1) throw MalformedDesign("lambda must be positive");
    d.points = read_points(doc.at("points"), "points");
    for (const auto& c : doc.at("classes")) {
      ParallelClass pc;
      if (c.contains("missing")) pc.missing = read_points(c.at("missing"), "missing");
      for (const auto& b : c.at("blocks")) pc.blocks.emplace_back(d.shape, read_points(b, "blocks"));
      d.classes.push_back(std::move(pc));
    }
    const std::string kind = doc.value("kind", std::string());
    const bool grouped = doc.contains("groups") || doc.contains("hole") || (!kind.empty() && kind != "design");
    if (!grouped) return d;

    GroupedDesign g;
    g.design = std::move(d);
    if (doc.contains("groups")) {
      for (const auto& grp : doc.at("groups")) g.groups.push_back(read_points(grp, "groups"));
    }
    if (doc.contains("hole")) g.hole = read_points(doc.at("hole"), "hole");
    if (!kind.empty()) {
      g.kind = grouped_kind_from_name(kind);
    } else {
      g.kind = doc.contains("hole") ? GroupedKind::IRD : GroupedKind::RGDD;
    }
    return g;
  } catch (const json::exception& e) {
    throw MalformedDesign(std::string("bad design document: ") + e.what());
  } catch (const MalformedBlock& e) {
    throw MalformedDesign(std::string("bad block: ") + e.what());
  }
}

AnyDesign read_design_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedDesign("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw MalformedDesign(path.string() + ": " + e.what());
  }
  return design_from_json(doc);
}

std::string dump_design(const AnyDesign& design) { return to_json(design).dump(2) + "\n"; }

void write_design_file(const std::filesystem::path& path, const AnyDesign& design) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << dump_design(design);
}

}  // namespace rdk
