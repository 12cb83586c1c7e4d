#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "rdk/model.hpp"

namespace rdk {

// Every operation here verifies its output before returning it and throws
// InternalInconsistency (with the verifier summary) if the result is not a
// valid object of the promised kind.

/// Renames points through `to`; points absent from the map keep their label.
ResolvableDesign relabel(const ResolvableDesign& d, const std::map<Point, Point>& to);
GroupedDesign relabel(const GroupedDesign& d, const std::map<Point, Point>& to);

/// Maps d.points[k] onto targets[k].
ResolvableDesign place(const ResolvableDesign& d, const std::vector<Point>& targets);

/// Renames the points to 0..v-1 in their sorted order.
AnyDesign relabel_to_integers(const AnyDesign& d);

/// Concatenates designs on the same points and shape; the indices add.
ResolvableDesign combine(const std::vector<ResolvableDesign>& parts);

/// Lists every class mu times (all classes, then all again, ...); index times mu.
ResolvableDesign repeat_classes(const ResolvableDesign& d, int mu);
GroupedDesign repeat_classes(const GroupedDesign& d, int mu);

/// Views a resolvable design as an RGDD of type 1^v, the form in which a
/// design on k points replaces a block of size k.
GroupedDesign as_singleton_rgdd(const ResolvableDesign& d);
/// Drops singleton groups again. Throws Error if a group has more than one point.
ResolvableDesign drop_singleton_groups(const GroupedDesign& g);

/// Lower-level fill: filler k is placed positionally on sets[k]; class i of
/// every filler merges into one class of the result, whose missing set is
/// every host point outside the filled sets. Host classes pass through first.
/// The result is not verified here: on its own it is usually neither a design
/// nor an IRD until the caller says which.
ResolvableDesign fill_sets(const ResolvableDesign& host, const std::vector<std::vector<Point>>& sets,
                           const std::vector<ResolvableDesign>& fillers);

/// Fills every group of an RGDD (or GDD) with `filler`. The host index must
/// equal the filler index and the filler order must equal the group size.
ResolvableDesign fill_groups(const GroupedDesign& host, const ResolvableDesign& filler);

/// Fills every group except `hole_group`, which becomes the hole of the
/// resulting IRD.
GroupedDesign fill_groups_except(const GroupedDesign& host, const ResolvableDesign& filler, std::size_t hole_group);

/// Every point x of the master becomes the group {x_0, ..., x_(w-1)} (x itself
/// when w == 1). Every block B of master class C is replaced by `ingredient`
/// placed with its group j on B[j] x [w], and ingredient class i on the blocks
/// of C forms one class of the result. A grouped master keeps its groups
/// (expanded); a frame master gives a frame. Index = master index times
/// ingredient index.
GroupedDesign weight_and_replace(const AnyDesign& master, int w, const GroupedDesign& ingredient);

/// Adds hole points inf1..infh to a frame, places `ird` on every group plus
/// the hole and pairs its full classes with the frame classes missing that
/// group (each taken `copies` times). The partial classes of all the placed
/// IRDs, together with the classes of `hole_filler`, close the design.
ResolvableDesign frame_fill_with_hole(const GroupedDesign& frame, const GroupedDesign& ird,
                                      const ResolvableDesign& hole_filler, int copies);

/// The five perfect matchings of the circulant on Z_v with differences
/// 1, v/2 - 1 and v/2: the two long cycles split by parity plus the diameters.
/// Requires v divisible by 4 and v >= 8.
std::array<std::vector<Edge>, 5> circulant_one_factors(int v);

/// The two classes of the blocks (i, v/2+i, v/2+1+i; 1+i), i < v/2, split by the parity of i.
std::vector<ParallelClass> one_factor_final_classes(int v);

/// Assembles a resolvable (5K_v, K4-e)-design from a (K4-e)-RGDD of type
/// 2^(v/2) and index 1 laid over each of the five matchings (groups mapped
/// positionally onto the matching's edges) plus the two final classes.
ResolvableDesign one_factor_construction(int v, const GroupedDesign& rgdd);

}  // namespace rdk
