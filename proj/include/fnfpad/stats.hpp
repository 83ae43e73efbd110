#pragma once

#include <string>
#include <vector>

namespace fnfpad {

/// Two-class Fisher Discriminant Ratio (mean gap squared over summed
/// population variances). Throws on fewer than 2 samples per class and on
/// zero-variance classes with distinct means.
double fisher_discriminant_ratio(const std::vector<double>& a, const std::vector<double>& b);

struct MannWhitneyResult {
  double u = 0.0;           // U statistic for sample a (midrank ties)
  double p_two_sided = 1.0;
  bool exact = false;       // exact enumeration used (n <= 12, no ties)
};

MannWhitneyResult mann_whitney_u(const std::vector<double>& a, const std::vector<double>& b);

struct FeatureSeparation {
  std::string name;
  double genuine_mean = 0.0;
  double genuine_std = 0.0;
  double spoof_mean = 0.0;
  double spoof_std = 0.0;
  double fdr = 0.0;
  double u_statistic = 0.0;
  double p_value = 1.0;
  double delta = 0.0;  // genuine_mean - spoof_mean
  std::vector<std::string> flags;
};

struct SeparationReport {
  std::string context;  // free-form tag, e.g. the illumination the table covers
  std::vector<FeatureSeparation> features;
};

/// Per-feature separation statistics in the order given by `names`.
/// genuine[i]/spoof[i] hold the samples for feature i; classes with no
/// samples at all are an error, under-populated features are flagged.
SeparationReport build_separation_report(const std::vector<std::string>& names,
                                         const std::vector<std::vector<double>>& genuine,
                                         const std::vector<std::vector<double>>& spoof,
                                         const std::string& context = "");

}  // namespace fnfpad
