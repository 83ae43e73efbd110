#include "fnfpad/features.hpp"

#include <stdexcept>
#include <unordered_map>

#include "fnfpad/differential.hpp"
#include "fnfpad/illumcues.hpp"
#include "fnfpad/photometry.hpp"

namespace fnfpad {

const std::vector<std::string>& canonical_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const char* m : {"ocl", "lcs", "contrast", "edge_clarity", "sharpness"}) {
      v.push_back(std::string(m) + "_flash");
      v.push_back(std::string(m) + "_nonflash");
      v.push_back(std::string(m) + "_delta");
    }
    for (const char* illum : {"flash", "nonflash"}) {
      for (const char* m : {"contrast", "edge_energy", "saturation"})
        for (const char* ch : {"r", "g", "b"})
          v.push_back(std::string(m) + "_" + ch + "_" + illum);
      v.push_back(std::string("color_temp_ratio_") + illum);
    }
    for (const char* m : {"pearson_offdiag", "mi_offdiag", "shr", "realism_ratio"}) {
      v.push_back(std::string(m) + "_flash");
      v.push_back(std::string(m) + "_nonflash");
    }
    v.insert(v.end(), {"delta_lbp", "delta_glcm", "delta_fourier"});
    v.insert(v.end(), {"diff_energy", "diff_structure", "sss_smoothness_flash",
                       "sss_smoothness_nonflash", "ridge_amplitude_cv_flash",
                       "ridge_amplitude_cv_nonflash", "highlight_irregularity"});
    return v;
  }();
  return names;
}

int feature_index(const std::string& name) {
  static const std::unordered_map<std::string, int> index = [] {
    std::unordered_map<std::string, int> m;
    const auto& names = canonical_feature_names();
    for (std::size_t i = 0; i < names.size(); ++i) m[names[i]] = static_cast<int>(i);
    return m;
  }();
  const auto it = index.find(name);
  return it == index.end() ? -1 : it->second;
}

FeatureGroup feature_group(const std::string& name) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return name.size() >= s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with("_flash")) return FeatureGroup::flash;
  if (ends_with("_nonflash")) return FeatureGroup::nonflash;
  return FeatureGroup::delta;  // *_delta, delta_*, diff_*, highlight_irregularity
}

std::string to_string(FeatureGroup g) {
  switch (g) {
    case FeatureGroup::flash: return "flash";
    case FeatureGroup::nonflash: return "nonflash";
    case FeatureGroup::delta: return "delta";
  }
  return "delta";
}

namespace {

class VectorBuilder {
 public:
  VectorBuilder() {
    const std::size_t n = canonical_feature_names().size();
    fv_.values.assign(n, 0.0);
    fv_.valid.assign(n, 0);
  }

  void set(const std::string& name, double value) {
    const int i = feature_index(name);
    if (i < 0) throw std::logic_error("unknown feature: " + name);
    fv_.values[static_cast<std::size_t>(i)] = value;
    fv_.valid[static_cast<std::size_t>(i)] = 1;
  }

  void flag(const std::string& name, const std::string& reason) {
    fv_.flags.push_back(name + ":" + reason);
  }

  FeatureVector take() { return std::move(fv_); }

 private:
  FeatureVector fv_;
};

}  // namespace

FeatureVector extract_features(const PairedCapture& pair, const ExtractConfig& cfg) {
  pair.flash.validate();
  pair.nonflash.validate();
  if (!pair.flash.same_shape(pair.nonflash))
    throw std::invalid_argument("extract_features: pair images must share dimensions");

  VectorBuilder out;
  const bool rgb = pair.flash.channels == 3;
  const RasterImage gray_f = to_grayscale(pair.flash);
  const RasterImage gray_n = to_grayscale(pair.nonflash);

  const QualityReport qf = compute_quality(gray_f, cfg.quality);
  const QualityReport qn = compute_quality(gray_n, cfg.quality);
  auto put_quality = [&](const char* name, double f, double n) {
    out.set(std::string(name) + "_flash", f);
    out.set(std::string(name) + "_nonflash", n);
    out.set(std::string(name) + "_delta", f - n);
  };
  put_quality("ocl", qf.ocl_mean, qn.ocl_mean);
  put_quality("lcs", qf.lcs_mean, qn.lcs_mean);
  put_quality("contrast", qf.local_contrast, qn.local_contrast);
  put_quality("edge_clarity", qf.edge_clarity, qn.edge_clarity);
  put_quality("sharpness", qf.sharpness, qn.sharpness);

  SpecularReport spec_f, spec_n;
  if (rgb) {
    const char* chans = "rgb";
    for (const auto& [img, illum] : {std::pair{&pair.flash, "flash"}, {&pair.nonflash, "nonflash"}}) {
      const ChannelPhotometrics p = compute_photometrics(*img, cfg.quality.patch_size);
      for (int c = 0; c < 3; ++c) {
        const std::string ch(1, chans[c]);
        out.set("contrast_" + ch + "_" + illum, p.local_contrast[c]);
        out.set("edge_energy_" + ch + "_" + illum, p.edge_energy[c]);
        out.set("saturation_" + ch + "_" + illum, p.saturation[c]);
      }
      const std::string ctr = std::string("color_temp_ratio_") + illum;
      if (p.color_temp_defined)
        out.set(ctr, p.color_temp_ratio);
      else
        out.flag(ctr, "degenerate_blue_channel");

      const ChannelCorrelation cc = channel_correlation(*img, cfg.mi_bins);
      const std::string pearson = std::string("pearson_offdiag_") + illum;
      if (cc.off_diag_pearson_defined)
        out.set(pearson, cc.off_diag_mean_pearson);
      else
        out.flag(pearson, "constant_channel");
      out.set(std::string("mi_offdiag_") + illum, cc.off_diag_mean_mi);

      const SpecularReport spec = specular_highlight_ratio(
          *img, cfg.shr_intensity_thresh, cfg.shr_texture_window, cfg.shr_texture_thresh);
      out.set(std::string("shr_") + illum, spec.shr);
      (std::string(illum) == "flash" ? spec_f : spec_n) = spec;
    }
    out.set("highlight_irregularity", highlight_irregularity(spec_f, spec_n));
  } else {
    for (const std::string& name : canonical_feature_names()) {
      const bool channel_metric =
          name.rfind("contrast_r", 0) == 0 || name.rfind("contrast_g", 0) == 0 ||
          name.rfind("contrast_b", 0) == 0 || name.rfind("edge_energy_", 0) == 0 ||
          name.rfind("saturation_", 0) == 0 || name.rfind("color_temp_ratio", 0) == 0 ||
          name.rfind("pearson_offdiag", 0) == 0 || name.rfind("mi_offdiag", 0) == 0 ||
          name.rfind("shr_", 0) == 0 || name == "highlight_irregularity";
      if (channel_metric) out.flag(name, "grayscale_input");
    }
  }

  const TextureDescriptors tf = compute_texture(gray_f, cfg.texture);
  const TextureDescriptors tn = compute_texture(gray_n, cfg.texture);
  out.set("realism_ratio_flash", tf.realism_ratio);
  out.set("realism_ratio_nonflash", tn.realism_ratio);
  const TextureDelta td = texture_delta(tf, tn);
  out.set("delta_lbp", td.lbp);
  out.set("delta_glcm", td.glcm);
  out.set("delta_fourier", td.fourier);

  AlignResult align;
  try {
    align = align_pair(gray_f, gray_n, cfg.align_max_shift);
  } catch (const std::invalid_argument&) {
    align = AlignResult{};  // image too small for the search window
  }
  if (!align.ok) {
    out.flag("align", "failed");
    align.dx = align.dy = 0;
  }
  const DifferentialResult diff = differential_image(gray_f, gray_n, align.dx, align.dy);
  out.set("diff_energy", diff.energy);
  if (diff.structure_valid)
    out.set("diff_structure", diff.structure);
  else
    out.flag("diff_structure", "flat_difference");

  for (const auto& [grid, gray, illum] :
       {std::tuple{&qf.ocl, &gray_f, "flash"}, {&qn.ocl, &gray_n, "nonflash"}}) {
    try {
      out.set(std::string("sss_smoothness_") + illum, sss_smoothness(*gray, *grid));
    } catch (const std::runtime_error&) {
      out.flag(std::string("sss_smoothness_") + illum, "no_valid_blocks");
    }
    try {
      out.set(std::string("ridge_amplitude_cv_") + illum, ridge_amplitude_cv(*gray, *grid));
    } catch (const std::runtime_error&) {
      out.flag(std::string("ridge_amplitude_cv_") + illum, "too_few_blocks");
    }
  }

  return out.take();
}

}  // namespace fnfpad
