#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "rdk/model.hpp"

namespace rdk {

/// Base blocks over Z_modulus plus fixed points that development leaves alone.
struct BaseClass {
  std::vector<Block> blocks;
  long modulus = 1;
  std::vector<Point> fixed;
};

/// Adds `shift` to every integer label mod `modulus`; other labels are fixed.
Point translate(const Point& p, long shift, long modulus);
Block translate(const Block& b, long shift, long modulus);

/// Maps every subscripted symbol x_i to x_{1 + ((i - 1 + shift) mod modulus)}.
Point rotate_subscript(const Point& p, long shift, long modulus);
Block rotate_subscripts(const Block& b, long shift, long modulus);

/// Checks that the blocks are vertex-disjoint and lie inside `ambient`, and
/// returns the class with `missing` = ambient minus the covered points.
/// Throws NotAClass carrying `shift` otherwise.
ParallelClass make_class(std::vector<Block> blocks, const std::vector<Point>& ambient, long shift = 0);

/// Z_modulus followed by the fixed points.
std::vector<Point> development_points(long modulus, const std::vector<Point>& fixed);

/// One class per shift 0..n-1. A base class equal to one of its own
/// translates still yields all n classes (the repeated partitions are part
/// of the design, e.g. K2 on two points developed mod 2).
std::vector<ParallelClass> develop_classes(const BaseClass& base,
                                           const std::optional<std::vector<Point>>& ambient = std::nullopt);

/// Class s (0 <= s < step) is { block + s + k*step : k = 0 .. modulus/step - 1 }.
std::vector<ParallelClass> develop_grouped(const Block& block, long modulus, long step,
                                           const std::optional<std::vector<Point>>& ambient = std::nullopt);

/// One class per subscript rotation 0..modulus-1. A class fixed by a
/// non-trivial rotation is rejected with NotAClass.
std::vector<ParallelClass> develop_subscripts(const std::vector<Block>& base, long modulus,
                                              const std::optional<std::vector<Point>>& ambient = std::nullopt);

/// A base-block file:
///   { "shape": "K13", "modulus": 19, "fixed": ["inf"],
///     "baseClasses": [[blocks...], ...], "grouped": [{"block": ..., "step": 4}] }
/// Blocks may be label arrays or notation strings such as "(inf;4,5,12)".
struct BaseBlockFile {
  GraphShape shape;
  long modulus = 1;
  std::vector<Point> fixed;
  std::vector<std::vector<Block>> base_classes;
  std::vector<std::pair<Block, long>> grouped;
};
BaseBlockFile base_blocks_from_json(const nlohmann::json& doc);
Block block_from_json(const nlohmann::json& item, GraphShape shape);

/// Grouped orbits first, then the base classes in order, each developed over
/// Z_modulus plus the fixed points.
std::vector<ParallelClass> develop_file(const BaseBlockFile& file);

}  // namespace rdk
