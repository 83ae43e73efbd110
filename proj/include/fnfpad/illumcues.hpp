#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "fnfpad/image.hpp"

namespace fnfpad {

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Matrix3Flags = std::array<std::array<bool, 3>, 3>;

/// Inter-channel relationship statistics of one RGB capture.
struct ChannelCorrelation {
  Matrix3 pearson{};
  Matrix3Flags pearson_defined{};  // false where a constant channel is involved
  Matrix3 mutual_info{};           // bits
  double off_diag_mean_pearson = 0.0;
  bool off_diag_pearson_defined = false;
  double off_diag_mean_mi = 0.0;
};

/// Sample Pearson correlation between flattened channel planes. Entries
/// touching a constant channel (std <= 1e-9) are flagged undefined.
Matrix3 pearson_matrix(const RasterImage& rgb, Matrix3Flags* defined = nullptr);

/// Mutual information in bits from a bins x bins joint histogram over
/// [0,1]^2. The diagonal equals the histogram entropy of each channel.
Matrix3 mutual_info_matrix(const RasterImage& rgb, int bins = 32);

ChannelCorrelation channel_correlation(const RasterImage& rgb, int mi_bins = 32);

/// Genuine-spoof gap of the mean off-diagonal statistic:
/// delta = mean(genuine off-diag) - mean(spoof off-diag), Pearson then MI.
std::pair<double, double> correlation_separation(
    const std::vector<ChannelCorrelation>& genuine,
    const std::vector<ChannelCorrelation>& spoof);

struct SpecularReport {
  double shr = 0.0;                 // highlight pixels / total pixels
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> highlight_mask;
  int component_count = 0;
  double component_size_cv = 0.0;   // std/mean of 8-connected component sizes
};

/// Mask of pixels bright in every channel but locally textureless:
/// min(R,G,B) >= intensity_thresh and grayscale std over the centered
/// window (cropped at borders) < texture_thresh.
SpecularReport specular_highlight_ratio(const RasterImage& rgb,
                                        double intensity_thresh = 0.9,
                                        int texture_window = 5,
                                        double texture_thresh = 0.02);

}  // namespace fnfpad
