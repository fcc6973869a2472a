#pragma once

#include <string>

#include "polytri/complex.hpp"

namespace polytri::exporter {

/// OFF mesh of the maximal cells: 2-cells as polygons, 3-cells exploded into
/// their 2-faces. Coordinates padded to 3 and written with 12 significant
/// digits. Throws UnsupportedDimension above ambient dimension 3.
std::string to_off(const PolyComplex& complex);

/// SVG drawing, one polygon per maximal cell (segments for 1-cells).
/// Throws UnsupportedDimension above ambient dimension 2.
std::string to_svg(const PolyComplex& complex);

}  // namespace polytri::exporter
