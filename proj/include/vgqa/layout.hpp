#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vgqa/graph.hpp"
#include "vgqa/style.hpp"

namespace vgqa {

// Spacing rules beyond the two style minima. Each exists to keep edge
// detection sharp: sampling along a candidate segment must see its own
// stroke almost everywhere and must NOT see a contiguous stand-in built
// from other strokes of the same color.
//
// - kMinEdgeLength keeps the sampling window between the excluded node
//   disks long enough that a single crossing cannot dominate it.
// - kMinBendDepth: for consecutive same-line edges a-b-c, the distance
//   from b to segment a-c. Below ~26 px the two strokes blanket the a-c
//   chord and fake an a-c edge of the same color.
// - kMinCrossingAngleDeg bounds how much of a stroke a foreign crossing
//   can overpaint (stroke_width / sin(angle) pixels).
// - kMinSegmentGap keeps non-crossing foreign strokes outside the
//   perpendicular search band of each other's samples.
// - kMaxObscuredFraction caps the summed overpaint per edge so coverage
//   stays above the detector's acceptance threshold.
inline constexpr double kMinEdgeLength = 90.0;
inline constexpr double kMinBendDepth = 30.0;
inline constexpr double kMinCrossingAngleDeg = 25.0;
inline constexpr double kMinSegmentGap = 16.0;
inline constexpr double kMaxObscuredFraction = 0.15;

struct Layout {
  std::map<std::string, Point> positions;  // canonical station name -> center
  int width = 0;
  int height = 0;
};

// Force-directed placement followed by hard repair passes, restarted with
// derived seeds until every spacing rule holds. Deterministic in
// (g, seed, style). Throws DataError when no attempt satisfies the rules.
Layout layout_graph(const TransitGraph& g, std::uint64_t seed,
                    const StyleSpec& style);

// Every spacing violation in the layout, as human-readable strings; empty
// means the layout is safe to render.
std::vector<std::string> check_layout(const TransitGraph& g,
                                      const Layout& layout,
                                      const StyleSpec& style);

}  // namespace vgqa
