#pragma once

#include <array>
#include <utility>
#include <vector>

#include "fnfpad/image.hpp"

namespace fnfpad {

/// Classic 8-neighbor LBP, radius 1, neighbor >= center, bit 0 at east
/// going counter-clockwise. Normalized histogram over interior pixels.
std::array<double, 256> lbp_histogram(const RasterImage& gray);

struct GlcmFeatures {
  double contrast = 0.0;
  double homogeneity = 0.0;
  double energy = 0.0;
  double correlation = 0.0;
  bool correlation_defined = false;  // false for single-level images
};

struct GlcmConfig {
  int levels = 16;
  std::vector<std::pair<int, int>> offsets = {{1, 0}, {0, 1}};
};

/// Symmetric normalized co-occurrence features, one entry per offset.
std::vector<GlcmFeatures> glcm_features(const RasterImage& gray, const GlcmConfig& cfg = {});

/// Fraction of blocks whose mean-subtracted spectrum has a dominant non-DC
/// peak (max > peak_factor * mean) above the Nyquist/4 radius.
double texture_realism_ratio(const RasterImage& gray, int block_size = 32,
                             double peak_factor = 4.0);

struct TextureConfig {
  GlcmConfig glcm;
  int realism_block = 32;
  double peak_factor = 4.0;
  int radial_bins = 32;
};

struct TextureDescriptors {
  std::array<double, 256> lbp_hist{};
  std::vector<GlcmFeatures> glcm;
  double realism_ratio = 0.0;
  std::vector<double> radial_profile;
  TextureConfig config;
};

TextureDescriptors compute_texture(const RasterImage& gray, const TextureConfig& cfg = {});

struct TextureDelta {
  double lbp = 0.0;      // chi-square histogram distance
  double glcm = 0.0;     // L2 over concatenated features
  double fourier = 0.0;  // L2 between unit-sum radial profiles
};

/// Throws std::invalid_argument when the descriptors were computed with
/// different configurations.
TextureDelta texture_delta(const TextureDescriptors& a, const TextureDescriptors& b);

}  // namespace fnfpad
