#include "snailcv/png_writer.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

namespace snailcv::plot {

namespace {

struct Rgb {
  unsigned char r, g, b;
};

// x in [-1, 1]: blue at -1, white at 0, red at +1.
Rgb diverging(double x) {
  x = std::clamp(x, -1.0, 1.0);
  const auto mix = [](double a, double b, double t) {
    return static_cast<unsigned char>(std::lround(a + (b - a) * t));
  };
  if (x < 0.0) {
    const double t = -x;
    return {mix(255, 33, t), mix(255, 102, t), mix(255, 172, t)};
  }
  return {mix(255, 178, x), mix(255, 24, x), mix(255, 43, x)};
}

}  // namespace

void write_heatmap_png(const std::string& path, const analysis::WignerGrid& w) {
  const int width = static_cast<int>(w.values.rows());
  const int height = static_cast<int>(w.values.cols());
  if (width < 1 || height < 1) throw std::runtime_error("write_heatmap_png: empty grid");
  const double scale = std::max(std::abs(w.min()), std::abs(w.max()));

  std::unique_ptr<FILE, int (*)(FILE*)> fp(std::fopen(path.c_str(), "wb"), &std::fclose);
  if (!fp) throw std::runtime_error("write_heatmap_png: cannot write " + path);

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) throw std::runtime_error("write_heatmap_png: libpng init failed");
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw std::runtime_error("write_heatmap_png: libpng error writing " + path);
  }
  png_init_io(png, fp.get());
  png_set_IHDR(png, info, width, height, 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<unsigned char> row(3 * static_cast<size_t>(width));
  for (int y = 0; y < height; ++y) {
    const int j = height - 1 - y;  // top row is p_max
    for (int i = 0; i < width; ++i) {
      const Rgb c = diverging(scale > 0.0 ? w.values(i, j) / scale : 0.0);
      row[3 * i] = c.r;
      row[3 * i + 1] = c.g;
      row[3 * i + 2] = c.b;
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace snailcv::plot
