#pragma once

#include <string>

#include "gdfractal/construct.hpp"
#include "gdfractal/gaps.hpp"

namespace gdfractal {

struct RenderOptions {
    mpfr_prec_t precision = 128;
    int width = 900;
    int row_height = 26;
    int bar_height = 14;
    Budget budget;
};

/// Standalone SVG 1.1 document: one horizontal row per level 0..m, child
/// intervals as filled bars, level-1 basic gaps labeled. Output bytes are
/// deterministic for a fixed system and settings.
std::string render_svg(const GdIfs& f, VertexId u, int m, const RenderOptions& opts = {});

}  // namespace gdfractal
