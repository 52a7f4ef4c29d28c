#pragma once

// Deterministic SVG output: fixed 800x800 canvas, coordinates printed with
// six decimals, the unit circle, family members and optional overlays.

#include <optional>
#include <string>
#include <vector>

#include "ckpierce/family.hpp"
#include "ckpierce/geom.hpp"
#include "ckpierce/kkm.hpp"

namespace ckpierce {

struct RenderOptions {
  std::vector<Line> lines;
  /// Draws the chords l_0 .. l_{k-3} and the boundary points f_i.
  std::optional<ChordSystem> chords;
};

std::string render_svg(const Family& family, const RenderOptions& options = {});

}  // namespace ckpierce
