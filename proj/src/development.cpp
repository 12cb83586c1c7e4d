#include "rdk/development.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rdk/errors.hpp"

namespace rdk {

namespace {

void check_range(const Block& b, long modulus) {
  for (const auto& p : b.tuple()) {
    if (p.is_integer() && p.value() >= modulus) {
      throw Error("label " + p.label() + " outside Z_" + std::to_string(modulus));
    }
  }
}

// Order-insensitive identity of a class: the sorted edge lists of its blocks.
std::vector<std::vector<Edge>> class_signature(const std::vector<Block>& blocks) {
  std::vector<std::vector<Edge>> sig;
  sig.reserve(blocks.size());
  for (const auto& b : blocks) {
    auto e = edges_of_block(b);
    std::sort(e.begin(), e.end());
    sig.push_back(std::move(e));
  }
  std::sort(sig.begin(), sig.end());
  return sig;
}

}  // namespace

Point translate(const Point& p, long shift, long modulus) {
  if (!p.is_integer()) return p;
  long x = static_cast<long>((p.value() + shift) % modulus);
  if (x < 0) x += modulus;
  return Point::integer(x);
}

Block translate(const Block& b, long shift, long modulus) {
  std::vector<Point> t;
  t.reserve(b.tuple().size());
  for (const auto& p : b.tuple()) t.push_back(translate(p, shift, modulus));
  return Block(b.shape(), std::move(t));
}

Point rotate_subscript(const Point& p, long shift, long modulus) {
  if (p.kind() != Point::Kind::Symbol) return p;
  const std::string& s = p.label();
  std::size_t cut = s.size();
  while (cut > 0 && std::isdigit(static_cast<unsigned char>(s[cut - 1]))) --cut;
  if (cut == s.size() || cut == 0) throw Error("symbol '" + s + "' carries no subscript");
  const long i = std::stol(s.substr(cut));
  if (i < 1 || i > modulus) throw Error("subscript of '" + s + "' outside 1.." + std::to_string(modulus));
  const long j = 1 + ((i - 1 + shift) % modulus + modulus) % modulus;
  return Point(s.substr(0, cut) + std::to_string(j));
}

Block rotate_subscripts(const Block& b, long shift, long modulus) {
  std::vector<Point> t;
  for (const auto& p : b.tuple()) t.push_back(rotate_subscript(p, shift, modulus));
  return Block(b.shape(), std::move(t));
}

ParallelClass make_class(std::vector<Block> blocks, const std::vector<Point>& ambient, long shift) {
  std::set<Point> seen;
  for (const auto& b : blocks) {
    for (const auto& p : b.tuple()) {
      if (!seen.insert(p).second) {
        throw NotAClass("point " + p.label() + " covered twice in class at shift " + std::to_string(shift), shift);
      }
    }
  }
  ParallelClass out;
  out.blocks = std::move(blocks);
  std::set<Point> amb(ambient.begin(), ambient.end());
  for (const auto& p : seen) {
    if (!amb.count(p)) throw NotAClass("point " + p.label() + " outside the point set at shift " + std::to_string(shift), shift);
  }
  for (const auto& p : amb) {
    if (!seen.count(p)) out.missing.push_back(p);
  }
  return out;
}

std::vector<Point> development_points(long modulus, const std::vector<Point>& fixed) {
  auto pts = integer_points(static_cast<int>(modulus));
  pts.insert(pts.end(), fixed.begin(), fixed.end());
  return pts;
}

std::vector<ParallelClass> develop_classes(const BaseClass& base, const std::optional<std::vector<Point>>& ambient) {
  if (base.modulus < 1) throw Error("modulus must be positive");
  for (const auto& b : base.blocks) check_range(b, base.modulus);
  const auto pts = ambient ? *ambient : development_points(base.modulus, base.fixed);
  std::vector<ParallelClass> out;
  out.reserve(base.modulus);
  for (long s = 0; s < base.modulus; ++s) {
    std::vector<Block> blocks;
    for (const auto& b : base.blocks) blocks.push_back(translate(b, s, base.modulus));
    out.push_back(make_class(std::move(blocks), pts, s));
  }
  return out;
}

std::vector<ParallelClass> develop_grouped(const Block& block, long modulus, long step,
                                           const std::optional<std::vector<Point>>& ambient) {
  if (step < 1 || modulus % step != 0) throw Error("step " + std::to_string(step) + " does not divide " + std::to_string(modulus));
  check_range(block, modulus);
  const auto pts = ambient ? *ambient : integer_points(static_cast<int>(modulus));
  std::vector<ParallelClass> out;
  for (long s = 0; s < step; ++s) {
    std::vector<Block> blocks;
    for (long k = 0; k < modulus; k += step) blocks.push_back(translate(block, s + k, modulus));
    out.push_back(make_class(std::move(blocks), pts, s));
  }
  return out;
}

std::vector<ParallelClass> develop_subscripts(const std::vector<Block>& base, long modulus,
                                              const std::optional<std::vector<Point>>& ambient) {
  std::vector<Point> pts;
  if (ambient) {
    pts = *ambient;
  } else {
    std::set<Point> all;
    for (long s = 0; s < modulus; ++s) {
      for (const auto& b : base) {
        const Block moved = rotate_subscripts(b, s, modulus);
        all.insert(moved.tuple().begin(), moved.tuple().end());
      }
    }
    pts.assign(all.begin(), all.end());
  }
  const auto first = class_signature(base);
  std::vector<ParallelClass> out;
  for (long s = 0; s < modulus; ++s) {
    std::vector<Block> blocks;
    for (const auto& b : base) blocks.push_back(rotate_subscripts(b, s, modulus));
    if (s > 0 && class_signature(blocks) == first) {
      throw NotAClass("class is fixed by subscript rotation " + std::to_string(s), s);
    }
    out.push_back(make_class(std::move(blocks), pts, s));
  }
  return out;
}

Block block_from_json(const nlohmann::json& item, GraphShape shape) {
  if (item.is_string()) return parse_block(item.get<std::string>(), shape);
  std::vector<Point> t;
  for (const auto& x : item) t.emplace_back(x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()));
  return Block(shape, std::move(t));
}

BaseBlockFile base_blocks_from_json(const nlohmann::json& doc) {
  BaseBlockFile f;
  try {
    f.shape = GraphShape::from_name(doc.at("shape").get<std::string>());
    f.modulus = doc.at("modulus").get<long>();
    for (const auto& p : doc.value("fixed", nlohmann::json::array())) f.fixed.emplace_back(p.get<std::string>());
    for (const auto& cls : doc.value("baseClasses", nlohmann::json::array())) {
      std::vector<Block> blocks;
      for (const auto& b : cls) blocks.push_back(block_from_json(b, f.shape));
      f.base_classes.push_back(std::move(blocks));
    }
    for (const auto& g : doc.value("grouped", nlohmann::json::array())) {
      f.grouped.emplace_back(block_from_json(g.at("block"), f.shape), g.at("step").get<long>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw MalformedDesign(std::string("bad base-block file: ") + e.what());
  }
  return f;
}

std::vector<ParallelClass> develop_file(const BaseBlockFile& file) {
  const auto pts = development_points(file.modulus, file.fixed);
  std::vector<ParallelClass> out;
  for (const auto& [block, step] : file.grouped) {
    auto cls = develop_grouped(block, file.modulus, step, pts);
    out.insert(out.end(), cls.begin(), cls.end());
  }
  for (const auto& blocks : file.base_classes) {
    auto cls = develop_classes(BaseClass{blocks, file.modulus, file.fixed}, pts);
    out.insert(out.end(), cls.begin(), cls.end());
  }
  return out;
}

}  // namespace rdk
