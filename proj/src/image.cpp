#include "fnfpad/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fnfpad {

void RasterImage::validate() const {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("image dimensions must be positive");
  if (channels != 1 && channels != 3)
    throw std::invalid_argument("image must have 1 or 3 channels");
  if (data.size() != static_cast<std::size_t>(width) * height * channels)
    throw std::invalid_argument("image data length does not match dimensions");
  for (double v : data)
    if (!(v >= 0.0 && v <= 1.0))
      throw std::invalid_argument("image intensity outside [0,1]");
}

RasterImage RasterImage::channel_plane(int c) const {
  if (c < 0 || c >= channels) throw std::invalid_argument("channel index out of range");
  RasterImage out(width, height, 1);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x)
      out.at(x, y) = at(x, y, c);
  return out;
}

std::string to_string(SampleClass c) {
  return c == SampleClass::genuine ? "genuine" : "spoof";
}

std::string to_string(PaiType t) {
  switch (t) {
    case PaiType::none: return "none";
    case PaiType::print: return "print";
    case PaiType::screen: return "screen";
    case PaiType::molded: return "molded";
    case PaiType::model3d: return "model3d";
  }
  return "none";
}

SampleClass sample_class_from_string(const std::string& s) {
  if (s == "genuine") return SampleClass::genuine;
  if (s == "spoof") return SampleClass::spoof;
  throw std::invalid_argument("unknown label: " + s);
}

PaiType pai_type_from_string(const std::string& s) {
  if (s == "none") return PaiType::none;
  if (s == "print") return PaiType::print;
  if (s == "screen") return PaiType::screen;
  if (s == "molded") return PaiType::molded;
  if (s == "model3d") return PaiType::model3d;
  throw std::invalid_argument("unknown pai_type: " + s);
}

RasterImage to_grayscale(const RasterImage& img) {
  if (img.channels == 1) return img;
  if (img.channels != 3) throw std::invalid_argument("to_grayscale: 1 or 3 channels required");
  RasterImage out(img.width, img.height, 1);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x)
      out.at(x, y) = 0.299 * img.at(x, y, 0) + 0.587 * img.at(x, y, 1) + 0.114 * img.at(x, y, 2);
  return out;
}

BlockGrid block_partition(const RasterImage& img, int block_size) {
  if (block_size < 8) throw std::invalid_argument("block_partition: block_size must be >= 8");
  BlockGrid grid;
  grid.block_size = block_size;
  grid.cols = img.width / block_size;
  grid.rows = img.height / block_size;
  if (grid.cols < 1 || grid.rows < 1)
    throw std::invalid_argument("block_partition: block larger than image");
  grid.values.assign(grid.block_count(), 0.0);
  return grid;
}

RasterImage extract_block(const RasterImage& img, const BlockGrid& grid, int bx, int by) {
  RasterImage out(grid.block_size, grid.block_size, 1);
  const int x0 = bx * grid.block_size;
  const int y0 = by * grid.block_size;
  for (int y = 0; y < grid.block_size; ++y)
    for (int x = 0; x < grid.block_size; ++x)
      out.at(x, y) = img.at(x0 + x, y0 + y);
  return out;
}

namespace {
inline int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
}  // namespace

GradientField sobel_gradients(const RasterImage& gray) {
  if (gray.channels != 1) throw std::invalid_argument("sobel_gradients: grayscale input required");
  if (gray.width < 3 || gray.height < 3)
    throw std::invalid_argument("sobel_gradients: image too small (need >= 3x3)");
  GradientField f;
  f.width = gray.width;
  f.height = gray.height;
  f.gx.resize(gray.pixel_count());
  f.gy.resize(gray.pixel_count());
  auto px = [&](int x, int y) {
    return gray.at(clampi(x, 0, gray.width - 1), clampi(y, 0, gray.height - 1));
  };
  for (int y = 0; y < gray.height; ++y) {
    for (int x = 0; x < gray.width; ++x) {
      const double tl = px(x - 1, y - 1), tc = px(x, y - 1), tr = px(x + 1, y - 1);
      const double ml = px(x - 1, y),                        mr = px(x + 1, y);
      const double bl = px(x - 1, y + 1), bc = px(x, y + 1), br = px(x + 1, y + 1);
      const std::size_t i = static_cast<std::size_t>(y) * gray.width + x;
      f.gx[i] = (tr + 2.0 * mr + br) - (tl + 2.0 * ml + bl);
      f.gy[i] = (bl + 2.0 * bc + br) - (tl + 2.0 * tc + tr);
    }
  }
  return f;
}

std::vector<double> laplacian(const RasterImage& gray) {
  if (gray.channels != 1) throw std::invalid_argument("laplacian: grayscale input required");
  if (gray.width < 3 || gray.height < 3)
    throw std::invalid_argument("laplacian: image too small (need >= 3x3)");
  std::vector<double> out(gray.pixel_count());
  auto px = [&](int x, int y) {
    return gray.at(clampi(x, 0, gray.width - 1), clampi(y, 0, gray.height - 1));
  };
  // difference-from-center form: exactly zero on constant images
  for (int y = 0; y < gray.height; ++y)
    for (int x = 0; x < gray.width; ++x) {
      const double c = px(x, y);
      out[static_cast<std::size_t>(y) * gray.width + x] =
          (px(x - 1, y) - c) + (px(x + 1, y) - c) + (px(x, y - 1) - c) + (px(x, y + 1) - c);
    }
  return out;
}

RasterImage rotate_nearest(const RasterImage& block, double angle) {
  if (block.channels != 1) throw std::invalid_argument("rotate_nearest: grayscale input required");
  RasterImage out(block.width, block.height, 1);
  const double cx = 0.5 * (block.width - 1);
  const double cy = 0.5 * (block.height - 1);
  const double c = std::cos(angle), s = std::sin(angle);
  for (int y = 0; y < block.height; ++y) {
    for (int x = 0; x < block.width; ++x) {
      // inverse map: source = R(angle) * dest offset, so structure whose
      // gradient points at `angle` ends up varying along +x in the output
      const double dx = x - cx, dy = y - cy;
      const double sx = cx + c * dx - s * dy;
      const double sy = cy + s * dx + c * dy;
      const int ix = clampi(static_cast<int>(std::lround(sx)), 0, block.width - 1);
      const int iy = clampi(static_cast<int>(std::lround(sy)), 0, block.height - 1);
      out.at(x, y) = block.at(ix, iy);
    }
  }
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double population_variance(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double m = mean_of(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size());
}

double median_of(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("median of empty set");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double percentile_of(std::vector<double> v, double q) {
  if (v.empty()) throw std::invalid_argument("percentile of empty set");
  std::sort(v.begin(), v.end());
  const double pos = q / 100.0 * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= v.size()) return v.back();
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[lo + 1] * frac;
}

}  // namespace fnfpad
