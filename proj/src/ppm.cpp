#include "pixel/ppm.hpp"

#include <vector>

namespace pixel {

const std::array<std::array<std::uint8_t, 3>, 16>& ppm_palette() {
  static const std::array<std::array<std::uint8_t, 3>, 16> palette{{
      {230, 25, 75},   {60, 180, 75},   {255, 225, 25}, {0, 130, 200},  {245, 130, 48},  {145, 30, 180},
      {70, 240, 240},  {240, 50, 230},  {210, 245, 60}, {250, 190, 212}, {0, 128, 128},  {220, 190, 255},
      {170, 110, 40},  {255, 250, 200}, {128, 0, 0},    {0, 0, 128},
  }};
  return palette;
}

std::string render_ppm(const PiecewiseFunction& f, int size) {
  if (f.arity() != 2) throw Error("raster output needs a d = 2 input");
  if (size < 1 || size > 4096) throw Error("raster size must lie in [1,4096]");
  std::string out = "P6\n" + std::to_string(size) + " " + std::to_string(size) + "\n255\n";
  std::vector<Rational> x(2);
  for (int row = 0; row < size; ++row) {
    x[1] = make_rational(2L * (size - row) - 1, 2L * size);
    for (int col = 0; col < size; ++col) {
      x[0] = make_rational(2L * col + 1, 2L * size);
      const auto& rgb = ppm_palette()[static_cast<std::size_t>((f.evaluate(x) - 1) % 16)];
      out.append(reinterpret_cast<const char*>(rgb.data()), rgb.size());
    }
  }
  return out;
}

}  // namespace pixel
