#pragma once

#include <string>
#include <vector>

#include "fnfpad/features.hpp"
#include "fnfpad/image.hpp"

namespace fnfpad {

/// Closed-form Fisher LDA over z-normalized features. Scores above the
/// threshold land on the genuine side.
struct LinearModel {
  std::vector<std::string> feature_names;
  std::vector<double> norm_mean;
  std::vector<double> norm_std;
  std::vector<double> weights;
  double bias = 0.0;
  double threshold = 0.0;

  double score(const FeatureVector& fv) const;
  bool predict_genuine(const FeatureVector& fv) const { return score(fv) > threshold; }
};

/// w = (Sigma_g + Sigma_s + ridge*I)^-1 (mu_g - mu_s) on z-scores; the ridge
/// escalates x10 up to 1e-2 before giving up on a singular scatter.
LinearModel train_fisher_lda(const std::vector<FeatureVector>& samples,
                             const std::vector<SampleClass>& labels, double ridge = 1e-6);

struct EvalMetrics {
  double accuracy = 0.0;
  double apcer = 0.0;  // spoof accepted as genuine
  bool apcer_defined = false;
  double bpcer = 0.0;  // genuine rejected
  bool bpcer_defined = false;
};

EvalMetrics evaluate(const LinearModel& model, const std::vector<FeatureVector>& samples,
                     const std::vector<SampleClass>& labels);

// Versioned plain-text model document ("FNFPAD-LDA v1").
std::string serialize_model(const LinearModel& model);
LinearModel parse_model(const std::string& text);
void save_model(const std::string& path, const LinearModel& model);
LinearModel load_model(const std::string& path);

}  // namespace fnfpad
