#include "fnfpad/photometry.hpp"

#include <stdexcept>

#include "fnfpad/quality.hpp"

namespace fnfpad {

namespace {
void require_rgb(const RasterImage& img, const char* who) {
  if (img.channels != 3)
    throw std::invalid_argument(std::string(who) + ": 3-channel image required");
}
}  // namespace

double channel_local_contrast(const RasterImage& rgb, int channel, int patch_size) {
  require_rgb(rgb, "channel_local_contrast");
  return local_contrast(rgb.channel_plane(channel), patch_size);
}

double channel_edge_energy(const RasterImage& rgb, int channel) {
  require_rgb(rgb, "channel_edge_energy");
  const GradientField g = sobel_gradients(rgb.channel_plane(channel));
  double acc = 0.0;
  for (std::size_t i = 0; i < g.gx.size(); ++i)
    acc += g.gx[i] * g.gx[i] + g.gy[i] * g.gy[i];
  return acc / static_cast<double>(g.gx.size());
}

double saturation_fraction(const RasterImage& rgb, int channel, double threshold) {
  require_rgb(rgb, "saturation_fraction");
  std::size_t n = 0;
  for (int y = 0; y < rgb.height; ++y)
    for (int x = 0; x < rgb.width; ++x)
      if (rgb.at(x, y, channel) >= threshold) ++n;
  return static_cast<double>(n) / static_cast<double>(rgb.pixel_count());
}

double color_temperature_ratio(const RasterImage& rgb) {
  require_rgb(rgb, "color_temperature_ratio");
  double mr = 0.0, mb = 0.0;
  for (int y = 0; y < rgb.height; ++y)
    for (int x = 0; x < rgb.width; ++x) {
      mr += rgb.at(x, y, 0);
      mb += rgb.at(x, y, 2);
    }
  mr /= static_cast<double>(rgb.pixel_count());
  mb /= static_cast<double>(rgb.pixel_count());
  if (mb <= 1e-6) throw std::runtime_error("degenerate blue channel");
  return mr / mb;
}

ChannelPhotometrics compute_photometrics(const RasterImage& rgb, int patch_size) {
  require_rgb(rgb, "compute_photometrics");
  ChannelPhotometrics p;
  for (int c = 0; c < 3; ++c) {
    p.local_contrast[c] = channel_local_contrast(rgb, c, patch_size);
    p.edge_energy[c] = channel_edge_energy(rgb, c);
    p.saturation[c] = saturation_fraction(rgb, c);
  }
  try {
    p.color_temp_ratio = color_temperature_ratio(rgb);
    p.color_temp_defined = true;
  } catch (const std::runtime_error&) {
    p.color_temp_ratio = 0.0;
    p.color_temp_defined = false;
  }
  return p;
}

}  // namespace fnfpad
