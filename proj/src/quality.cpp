#include "fnfpad/quality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fnfpad {

OclBlockResult directional_coherence(const double* data, int width, int height) {
  RasterImage tmp(width, height, 1);
  std::copy(data, data + static_cast<std::size_t>(width) * height, tmp.data.begin());
  const GradientField g = sobel_gradients(tmp);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < g.gx.size(); ++i) {
    sxx += g.gx[i] * g.gx[i];
    syy += g.gy[i] * g.gy[i];
    sxy += g.gx[i] * g.gy[i];
  }
  OclBlockResult r;
  const double trace = sxx + syy;
  const double flat_eps = 1e-8 * static_cast<double>(width) * height;
  if (trace < flat_eps) return r;  // flat block: value 0, invalid
  const double half_gap = 0.5 * std::sqrt((sxx - syy) * (sxx - syy) + 4.0 * sxy * sxy);
  const double lmax = 0.5 * trace + half_gap;
  const double lmin = std::max(0.0, 0.5 * trace - half_gap);
  r.value = 1.0 - lmin / lmax;
  r.valid = true;
  r.orientation = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  return r;
}

OclBlockResult ocl_block(const RasterImage& block) {
  if (block.channels != 1) throw std::invalid_argument("ocl_block: grayscale input required");
  if (block.width < 8 || block.height < 8)
    throw std::invalid_argument("ocl_block: block must be at least 8x8");
  return directional_coherence(block.data.data(), block.width, block.height);
}

double lcs_block(const RasterImage& block, double orientation) {
  if (block.channels != 1) throw std::invalid_argument("lcs_block: grayscale input required");
  if (block.width < 16 || block.height < 16)
    throw std::invalid_argument("lcs_block: block must be at least 16x16");

  const RasterImage rot = rotate_nearest(block, orientation);

  std::vector<double> profile(static_cast<std::size_t>(rot.width), 0.0);
  for (int x = 0; x < rot.width; ++x) {
    double s = 0.0;
    for (int y = 0; y < rot.height; ++y) s += rot.at(x, y);
    profile[x] = s / static_cast<double>(rot.height);
  }
  const auto [mn_it, mx_it] = std::minmax_element(profile.begin(), profile.end());
  const double dt = 0.5 * (*mn_it + *mx_it);

  // alpha: ridge-classified pixels that read like valley; beta: the reverse
  std::size_t ridge_px = 0, ridge_miss = 0, valley_px = 0, valley_miss = 0;
  for (int x = 0; x < rot.width; ++x) {
    const bool ridge_col = profile[x] < dt;
    for (int y = 0; y < rot.height; ++y) {
      const double v = rot.at(x, y);
      if (ridge_col) {
        ++ridge_px;
        if (v >= dt) ++ridge_miss;
      } else {
        ++valley_px;
        if (v < dt) ++valley_miss;
      }
    }
  }
  const double alpha = ridge_px ? static_cast<double>(ridge_miss) / ridge_px : 0.0;
  const double beta = valley_px ? static_cast<double>(valley_miss) / valley_px : 0.0;
  return 1.0 - 0.5 * (alpha + beta);
}

double local_contrast(const RasterImage& gray, int patch_size) {
  if (gray.channels != 1) throw std::invalid_argument("local_contrast: grayscale input required");
  if (patch_size < 1) throw std::invalid_argument("local_contrast: patch_size must be positive");
  const int cols = gray.width / patch_size;
  const int rows = gray.height / patch_size;
  if (cols < 1 || rows < 1)
    throw std::invalid_argument("local_contrast: patch larger than image");
  double acc = 0.0;
  for (int by = 0; by < rows; ++by) {
    for (int bx = 0; bx < cols; ++bx) {
      double sum = 0.0;
      double lo = gray.at(bx * patch_size, by * patch_size), hi = lo;
      for (int y = by * patch_size; y < (by + 1) * patch_size; ++y)
        for (int x = bx * patch_size; x < (bx + 1) * patch_size; ++x) {
          const double v = gray.at(x, y);
          sum += v;
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      if (lo == hi) continue;  // flat patch contributes exactly 0
      const double n = static_cast<double>(patch_size) * patch_size;
      const double mean = sum / n;
      double var = 0.0;
      for (int y = by * patch_size; y < (by + 1) * patch_size; ++y)
        for (int x = bx * patch_size; x < (bx + 1) * patch_size; ++x)
          var += (gray.at(x, y) - mean) * (gray.at(x, y) - mean);
      acc += std::sqrt(var / n);
    }
  }
  return acc / (static_cast<double>(cols) * rows);
}

double edge_clarity(const RasterImage& gray) {
  const GradientField g = sobel_gradients(gray);
  std::vector<double> mag(g.gx.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(g.gx[i], g.gy[i]);
  const double q75 = percentile_of(mag, 75.0);
  double acc = 0.0;
  std::size_t n = 0;
  for (double m : mag)
    if (m > q75) {
      acc += m;
      ++n;
    }
  return n ? acc / static_cast<double>(n) : 0.0;
}

double sharpness(const RasterImage& gray) {
  return population_variance(laplacian(gray));
}

BlockGrid ocl_map(const RasterImage& gray, int block_size) {
  BlockGrid grid = block_partition(gray, block_size);
  grid.valid.assign(grid.block_count(), 0);
  grid.orientation.assign(grid.block_count(), 0.0);
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      const OclBlockResult r = ocl_block(extract_block(gray, grid, bx, by));
      const std::size_t i = static_cast<std::size_t>(by) * grid.cols + bx;
      grid.values[i] = r.value;
      grid.valid[i] = r.valid ? 1 : 0;
      grid.orientation[i] = r.orientation;
    }
  }
  return grid;
}

BlockGrid lcs_map(const RasterImage& gray, int block_size) {
  BlockGrid grid = block_partition(gray, block_size);
  grid.valid.assign(grid.block_count(), 0);
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      const RasterImage blk = extract_block(gray, grid, bx, by);
      const OclBlockResult o = ocl_block(blk);
      const std::size_t i = static_cast<std::size_t>(by) * grid.cols + bx;
      if (o.valid) {
        grid.values[i] = lcs_block(blk, o.orientation);
        grid.valid[i] = 1;
      }
    }
  }
  return grid;
}

namespace {
double valid_mean(const BlockGrid& g) {
  double s = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < g.values.size(); ++i)
    if (g.valid.empty() || g.valid[i]) {
      s += g.values[i];
      ++n;
    }
  return n ? s / static_cast<double>(n) : 0.0;
}
}  // namespace

QualityReport compute_quality(const RasterImage& gray, const QualityConfig& cfg) {
  QualityReport rep;
  rep.ocl = ocl_map(gray, cfg.ocl_block_size);
  rep.ocl_mean = valid_mean(rep.ocl);
  rep.lcs = lcs_map(gray, cfg.lcs_block_size);
  rep.lcs_mean = valid_mean(rep.lcs);
  rep.local_contrast = local_contrast(gray, cfg.patch_size);
  rep.edge_clarity = edge_clarity(gray);
  rep.sharpness = sharpness(gray);
  return rep;
}

}  // namespace fnfpad
