#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "fnfpad/image.hpp"

namespace fnfpad {

enum class MaterialKind { genuine, print, screen, molded };

std::string to_string(MaterialKind k);
MaterialKind material_kind_from_string(const std::string& s);

/// Optical material parameters of one presentation class. Defaults are the
/// frozen calibration set (kSynthgenConfigVersion); tests never tune them.
struct MaterialModel {
  MaterialKind kind = MaterialKind::genuine;
  double specular_strength = 0.0;      // broad highlight lobe peak under flash
  double subsurface_sigma = 0.0;       // ridge-transition blur, px
  double amplitude_cv = 0.0;           // spatial ridge-amplitude variability
  double grid_period = 0.0;            // screen pixel grid, px (screen only)
  std::array<double, 3> ink_channel_skew{1.0, 1.0, 1.0};  // print only
  double micro_highlight_density = 0.0;  // oil micro-highlights per kilopixel

  static MaterialModel defaults(MaterialKind k);
};

/// Per-illumination rendering settings; flash and nonflash of one pair are
/// rendered from the same identity pattern and the same noise fields, so
/// equal settings give bit-identical images.
struct IlluminationSettings {
  double gain = 1.0;                     // ridge contrast multiplier
  double ambient = 0.5;                  // base luminance
  double specular_factor = 1.0;          // scales MaterialModel::specular_strength
  double artifact_factor = 1.0;          // scales grid/halftone/material noise
  double subsurface_factor = 1.0;        // scales MaterialModel::subsurface_sigma
  double highlight_density_factor = 1.0; // scales micro_highlight_density
  double noise_factor = 1.0;             // scales sensor noise (ISO gain)

  bool operator==(const IlluminationSettings&) const = default;
};

struct GenSpec {
  std::uint64_t seed = 0;
  int size = 160;              // square output, >= 128
  double ridge_period = 11.0;  // px, in [4, 32]
  double warp_amplitude = 3.0;  // orientation-field displacement, px
  int warp_waves = 3;
  double sensor_noise = 0.035;
  IlluminationSettings flash{1.50, 0.52, 1.0, 1.0, 1.0, 1.0, 0.6};
  IlluminationSettings nonflash{0.40, 0.40, 0.08, 0.25, 0.5, 0.0, 1.0};
};

inline constexpr const char* kSynthgenConfigVersion = "fnfpad-synthgen-defaults/1";

/// Deterministic paired render; identical (spec, material) gives
/// byte-identical output. Output intensities are quantized to the 8-bit
/// grid so in-memory pairs match their encoded files exactly.
PairedCapture generate_pair(const GenSpec& spec, const MaterialModel& material);

struct ClassCounts {
  int genuine = 50;
  int print = 50;
  int screen = 50;
  int molded = 50;
};

struct DatasetResult {
  std::string manifest_path;
  int pairs_written = 0;
};

/// Writes image pairs plus a JSON-lines manifest into out_dir. Per-sample
/// seeds are seed XOR index-within-class, so output is independent of
/// generation order and the jobs count.
DatasetResult generate_dataset(const std::string& out_dir, const ClassCounts& counts,
                               std::uint64_t seed, const GenSpec& base = {},
                               const std::string& image_format = "ppm", int jobs = 1);

}  // namespace fnfpad
