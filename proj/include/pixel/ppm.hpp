#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "pixel/function.hpp"

namespace pixel {

/// Fixed RGB palette; color c uses entry (c - 1) mod 16.
const std::array<std::array<std::uint8_t, 3>, 16>& ppm_palette();

/// Binary P6 image of a d = 2 function sampled at the cell centers of an
/// size x size grid. x1 runs left to right, x2 bottom to top.
std::string render_ppm(const PiecewiseFunction& f, int size);

}  // namespace pixel
