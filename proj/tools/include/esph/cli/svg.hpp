#pragma once

#include <string>

#include "esph/harness.hpp"

namespace esph::cli {

// Planar figure on an 800x800 viewBox: the polygon, its Delaunay edges and
// one <circle> per empty or full neighboring circle. Styling is left to the
// CSS classes hull, dt-edge, ear, sphere, empty, full and vertex.
// Throws InputError unless a.d == 2.
std::string render_svg(const Analysis& a);

}  // namespace esph::cli
