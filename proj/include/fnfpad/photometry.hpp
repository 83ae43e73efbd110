#pragma once

#include <array>

#include "fnfpad/image.hpp"

namespace fnfpad {

/// Per-channel photometric statistics of an RGB capture.
struct ChannelPhotometrics {
  std::array<double, 3> local_contrast{};   // R, G, B
  std::array<double, 3> edge_energy{};
  std::array<double, 3> saturation{};
  double color_temp_ratio = 0.0;            // mean R / mean B
  bool color_temp_defined = false;
};

double channel_local_contrast(const RasterImage& rgb, int channel, int patch_size = 16);

/// Mean squared Sobel gradient magnitude (gx^2 + gy^2) of one channel plane.
double channel_edge_energy(const RasterImage& rgb, int channel);

/// Fraction of pixels with channel value >= threshold (8-bit clipping
/// default, 254/255).
double saturation_fraction(const RasterImage& rgb, int channel,
                           double threshold = 254.0 / 255.0);

/// mean(R)/mean(B); throws on a degenerate blue channel (mean <= 1e-6).
double color_temperature_ratio(const RasterImage& rgb);

ChannelPhotometrics compute_photometrics(const RasterImage& rgb, int patch_size = 16);

}  // namespace fnfpad
