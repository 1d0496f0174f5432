#pragma once

#include <string>
#include <vector>

namespace capture::cli {

struct Figure {
    std::string file;  // e.g. "figure2.svg"
    std::string svg;
};

// figure1: the arc T1 on the equator and the lune D2 over it, orthographic view.
// figure2: T2 (dashed), the nodal domain G2 (solid) and the circle r = delta(2)
//          in the stereographic plane about a vertex of T2.
// figure3: T2 cut into six right triangles through its centre.
std::vector<Figure> render_figures();

}  // namespace capture::cli
