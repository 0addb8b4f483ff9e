#include "paperfold/render.hpp"

#include <sstream>
#include <stdexcept>

namespace paperfold {

void RenderStyle::validate() const {
    if (cell_size < 1 || margin < 0)
        throw std::invalid_argument("render style dimensions must be positive");
}

std::string render_svg(const CreasePattern& p, const RenderStyle& style) {
    style.validate();
    if (p.d > 2) throw std::invalid_argument("render_svg supports d <= 2 only");

    const int h = p.extent;
    const int cell = style.cell_size;
    const int m = style.margin;
    const int width = 2 * m + 2 * h * cell;
    const int strip = cell;  // height of the 1-d strip rendering
    const int height = p.d == 1 ? 2 * m + strip : width;

    // Grid point (x, y) -> pixel; the SVG y axis points down.
    const auto px = [&](int x) { return m + (x + h) * cell; };
    const auto py = [&](int y) { return m + (h - y) * cell; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";

    for (const auto& [id, sign] : p.faces) {
        int x1, y1, x2, y2;
        if (p.d == 1) {
            // A crease is a point; draw it as a vertical tick on the strip.
            x1 = x2 = px(id.corner[0]);
            y1 = m;
            y2 = m + strip;
        } else if (id.axis == 1) {
            // Face in the hyperplane x_1 = corner[0], spanning one cell in y.
            x1 = x2 = px(id.corner[0]);
            y1 = py(id.corner[1]);
            y2 = py(id.corner[1] + 1);
        } else {
            x1 = px(id.corner[0]);
            x2 = px(id.corner[0] + 1);
            y1 = y2 = py(id.corner[1]);
        }
        out << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
            << y2 << "\" style=\""
            << (sign == Sign::valley ? style.valley_style : style.crest_style) << "\"/>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace paperfold
