/*
 * Deterministic SVG rendering of crease patterns for d <= 2.  One line
 * segment per face; valleys and crests are drawn with distinct strokes.
 */
#pragma once

#include <string>

#include "paperfold/crease.hpp"

namespace paperfold {

struct RenderStyle {
    int cell_size = 24;  // pixels per unit cell
    int margin = 12;
    std::string valley_style = "stroke:#000000;stroke-width:2";
    std::string crest_style = "stroke:#000000;stroke-width:2;stroke-dasharray:6,3";

    void validate() const;
};

/// Renders the pattern as SVG.  Identical input yields byte-identical
/// output.  Rejects d > 2.
std::string render_svg(const CreasePattern& p, const RenderStyle& style = RenderStyle{});

}  // namespace paperfold
