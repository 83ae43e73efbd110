#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fnfpad {

/// 2-D raster with 1 or 3 channels, intensities normalized to [0,1],
/// stored row-major and channel-interleaved.
struct RasterImage {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<double> data;

  RasterImage() = default;
  RasterImage(int w, int h, int ch, double fill = 0.0)
      : width(w), height(h), channels(ch),
        data(static_cast<std::size_t>(w) * h * ch, fill) {}

  double& at(int x, int y, int c = 0) {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }
  double at(int x, int y, int c = 0) const {
    return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
  }

  std::size_t pixel_count() const {
    return static_cast<std::size_t>(width) * height;
  }
  bool same_shape(const RasterImage& o) const {
    return width == o.width && height == o.height && channels == o.channels;
  }

  /// Throws std::invalid_argument if sizes/channel count/value range are off.
  void validate() const;

  /// Extract one channel as a 1-channel image.
  RasterImage channel_plane(int c) const;
};

enum class SampleClass { genuine, spoof };
enum class PaiType { none, print, screen, molded, model3d };

std::string to_string(SampleClass c);
std::string to_string(PaiType t);
SampleClass sample_class_from_string(const std::string& s);
PaiType pai_type_from_string(const std::string& s);

struct CaptureLabel {
  std::string pair_id;
  std::string subject_id;
  int session = 1;
  SampleClass sample_class = SampleClass::genuine;
  PaiType pai_type = PaiType::none;

  // class == genuine ⇔ pai_type == none
  bool consistent() const {
    return (sample_class == SampleClass::genuine) == (pai_type == PaiType::none);
  }
};

struct PairedCapture {
  RasterImage flash;
  RasterImage nonflash;
  CaptureLabel label;
};

/// Partition geometry plus per-block scalars. Trailing partial blocks are
/// discarded (cols = floor(w/bs), rows = floor(h/bs)). The valid/orientation
/// vectors are filled by block metrics that need them (OCL maps) and stay
/// empty otherwise.
struct BlockGrid {
  int block_size = 0;
  int cols = 0;
  int rows = 0;
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
  std::vector<double> orientation;  // ridge-normal angle, radians

  double value_at(int bx, int by) const { return values[static_cast<std::size_t>(by) * cols + bx]; }
  bool valid_at(int bx, int by) const {
    return valid.empty() || valid[static_cast<std::size_t>(by) * cols + bx] != 0;
  }
  std::size_t block_count() const { return static_cast<std::size_t>(cols) * rows; }
};

/// Luminance conversion, Y = 0.299 R + 0.587 G + 0.114 B.
/// 1-channel input is returned unchanged.
RasterImage to_grayscale(const RasterImage& img);

/// Geometry-only partition; block_size >= 8 and at least one full block.
BlockGrid block_partition(const RasterImage& img, int block_size);

/// Copy block (bx,by) of the grid out of a 1-channel image.
RasterImage extract_block(const RasterImage& img, const BlockGrid& grid, int bx, int by);

struct GradientField {
  int width = 0;
  int height = 0;
  std::vector<double> gx;
  std::vector<double> gy;
};

/// 3x3 Sobel with replicate padding; outputs are the same size as the input.
GradientField sobel_gradients(const RasterImage& gray);

/// 3x3 Laplacian [0 1 0; 1 -4 1; 0 1 0] with replicate padding.
std::vector<double> laplacian(const RasterImage& gray);

/// Rotate a 1-channel block by `angle` (radians, about the block center)
/// with nearest-neighbor sampling; source coordinates are clamped
/// (replicate padding). Output has the block's size.
RasterImage rotate_nearest(const RasterImage& block, double angle);

// small shared numeric helpers
double mean_of(const std::vector<double>& v);
double population_variance(const std::vector<double>& v);
double median_of(std::vector<double> v);                  // copies, sorts
double percentile_of(std::vector<double> v, double q);    // linear interpolation, q in [0,100]

}  // namespace fnfpad
