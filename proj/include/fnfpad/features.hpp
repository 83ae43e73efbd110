#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fnfpad/image.hpp"
#include "fnfpad/quality.hpp"
#include "fnfpad/texture.hpp"

namespace fnfpad {

/// All scalar cues of one pair in the canonical order given by
/// canonical_feature_names(). Metrics that could not be computed carry
/// valid = 0, value 0 and a flag token "<feature>:<reason>"; the classifier
/// imputes them as z-score 0.
struct FeatureVector {
  std::vector<double> values;
  std::vector<std::uint8_t> valid;
  std::vector<std::string> flags;
};

/// Fixed feature ordering shared by CSV, reports and models.
const std::vector<std::string>& canonical_feature_names();
int feature_index(const std::string& name);  // -1 when unknown

enum class FeatureGroup { flash, nonflash, delta };

/// flash-derived, nonflash-derived, or a flash-vs-nonflash construct.
FeatureGroup feature_group(const std::string& name);
std::string to_string(FeatureGroup g);

struct ExtractConfig {
  QualityConfig quality;
  TextureConfig texture;
  int mi_bins = 32;
  double shr_intensity_thresh = 0.9;
  int shr_texture_window = 5;
  double shr_texture_thresh = 0.02;
  int align_max_shift = 16;
};

/// Deterministic composition of every module metric for one pair.
FeatureVector extract_features(const PairedCapture& pair, const ExtractConfig& cfg = {});

}  // namespace fnfpad
