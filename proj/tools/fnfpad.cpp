#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "fnfpad/classify.hpp"
#include "fnfpad/codec.hpp"
#include "fnfpad/fft.hpp"
#include "fnfpad/pipeline.hpp"
#include "fnfpad/quality.hpp"
#include "fnfpad/svg.hpp"
#include "fnfpad/synthgen.hpp"
#include "fnfpad/textio.hpp"

namespace {

using fnfpad::ExtractConfig;
using json = nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;    // usage / format errors
constexpr int kExitPartial = 2;  // some pairs could not be processed

struct ConfigOptions {
  std::string config_path;
  ExtractConfig cfg;

  void register_flags(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file with metric settings");
    cmd->add_option("--ocl-block", cfg.quality.ocl_block_size, "OCL block size, px");
    cmd->add_option("--lcs-block", cfg.quality.lcs_block_size, "LCS block size, px");
    cmd->add_option("--patch-size", cfg.quality.patch_size, "local-contrast patch size, px");
    cmd->add_option("--mi-bins", cfg.mi_bins, "mutual information histogram bins");
    cmd->add_option("--shr-intensity", cfg.shr_intensity_thresh, "SHR intensity threshold");
    cmd->add_option("--shr-window", cfg.shr_texture_window, "SHR texture window, px (odd)");
    cmd->add_option("--shr-texture", cfg.shr_texture_thresh, "SHR texture std threshold");
    cmd->add_option("--glcm-levels", cfg.texture.glcm.levels, "GLCM quantization levels");
    cmd->add_option("--realism-block", cfg.texture.realism_block, "realism-ratio block size");
    cmd->add_option("--peak-factor", cfg.texture.peak_factor, "dominant-peak mean multiple");
    cmd->add_option("--radial-bins", cfg.texture.radial_bins, "radial spectrum bins");
    cmd->add_option("--max-shift", cfg.align_max_shift, "alignment search radius, px");
  }

  // config file fills anything the command line did not set explicitly
  void finalize(const CLI::App* cmd) {
    if (config_path.empty()) return;
    const json j = json::parse(fnfpad::read_text_file(config_path));
    auto apply = [&](const char* flag, const char* key, auto& target) {
      if (cmd->count(flag) == 0 && j.contains(key)) target = j.at(key).get<std::decay_t<decltype(target)>>();
    };
    apply("--ocl-block", "ocl_block_size", cfg.quality.ocl_block_size);
    apply("--lcs-block", "lcs_block_size", cfg.quality.lcs_block_size);
    apply("--patch-size", "patch_size", cfg.quality.patch_size);
    apply("--mi-bins", "mi_bins", cfg.mi_bins);
    apply("--shr-intensity", "shr_intensity_thresh", cfg.shr_intensity_thresh);
    apply("--shr-window", "shr_texture_window", cfg.shr_texture_window);
    apply("--shr-texture", "shr_texture_thresh", cfg.shr_texture_thresh);
    apply("--glcm-levels", "glcm_levels", cfg.texture.glcm.levels);
    apply("--realism-block", "realism_block", cfg.texture.realism_block);
    apply("--peak-factor", "peak_factor", cfg.texture.peak_factor);
    apply("--radial-bins", "radial_bins", cfg.texture.radial_bins);
    apply("--max-shift", "align_max_shift", cfg.align_max_shift);
  }
};

int cmd_synth(const std::string& out_dir, int count, const std::vector<std::string>& classes,
              std::uint64_t seed, int size, const std::string& format, int jobs) {
  fnfpad::ClassCounts counts{0, 0, 0, 0};
  for (const auto& name : classes) {
    switch (fnfpad::material_kind_from_string(name)) {
      case fnfpad::MaterialKind::genuine: counts.genuine = count; break;
      case fnfpad::MaterialKind::print: counts.print = count; break;
      case fnfpad::MaterialKind::screen: counts.screen = count; break;
      case fnfpad::MaterialKind::molded: counts.molded = count; break;
    }
  }
  fnfpad::GenSpec base;
  base.size = size;
  const fnfpad::DatasetResult res =
      fnfpad::generate_dataset(out_dir, counts, seed, base, format, jobs);
  std::cout << "wrote " << res.pairs_written << " pairs, manifest " << res.manifest_path
            << " (" << fnfpad::kSynthgenConfigVersion << ")\n";
  return kExitOk;
}

int cmd_extract(const std::string& manifest_path, const std::string& out_csv,
                const std::string& out_json, const ExtractConfig& cfg, int jobs,
                bool deterministic) {
  std::vector<fnfpad::ManifestEntry> entries;
  try {
    entries = fnfpad::read_manifest(manifest_path);
  } catch (const fnfpad::ManifestError& e) {
    std::cerr << "manifest line " << e.line << ": " << e.what() << "\n";
    return kExitUsage;
  }
  const fnfpad::ExtractOutcome outcome =
      fnfpad::run_extract(entries, fnfpad::parent_dir(manifest_path), cfg, jobs);
  for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
  fnfpad::write_text_file(out_csv, fnfpad::features_to_csv(outcome.rows));
  if (!out_json.empty())
    fnfpad::write_text_file(
        out_json, fnfpad::extract_report_json(outcome.rows, outcome.warnings, cfg, deterministic));
  std::cout << "extracted " << outcome.rows.size() << " of " << entries.size() << " pairs\n";
  return outcome.partial_failure ? kExitPartial : kExitOk;
}

int cmd_stats(const std::string& features_csv, const std::string& out_json) {
  const auto rows = fnfpad::read_feature_csv(features_csv);
  const fnfpad::SeparationReport report = fnfpad::separation_from_rows(rows);
  fnfpad::write_text_file(out_json, fnfpad::separation_report_json(report));
  std::cout << "separation report for " << report.features.size() << " features -> " << out_json
            << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& train_csv, const std::string& test_csv,
                 const std::string& out_metrics, const std::string& out_model,
                 const std::string& model_in) {
  fnfpad::LinearModel model;
  std::size_t train_rows = 0;
  if (!model_in.empty()) {
    model = fnfpad::load_model(model_in);
  } else {
    const auto rows = fnfpad::read_feature_csv(train_csv);
    train_rows = rows.size();
    std::vector<fnfpad::FeatureVector> x;
    std::vector<fnfpad::SampleClass> y;
    for (const auto& r : rows) {
      x.push_back(r.features);
      y.push_back(r.label.sample_class);
    }
    model = fnfpad::train_fisher_lda(x, y);
  }
  if (!out_model.empty()) fnfpad::save_model(out_model, model);

  const auto rows = fnfpad::read_feature_csv(test_csv);
  std::vector<fnfpad::FeatureVector> x;
  std::vector<fnfpad::SampleClass> y;
  for (const auto& r : rows) {
    x.push_back(r.features);
    y.push_back(r.label.sample_class);
  }
  const fnfpad::EvalMetrics metrics = fnfpad::evaluate(model, x, y);
  if (!out_metrics.empty())
    fnfpad::write_text_file(
        out_metrics, fnfpad::metrics_report_json(metrics, train_rows, rows.size(), out_model));
  std::cout << "accuracy " << fnfpad::format_double(metrics.accuracy);
  if (metrics.apcer_defined) std::cout << " apcer " << fnfpad::format_double(metrics.apcer);
  if (metrics.bpcer_defined) std::cout << " bpcer " << fnfpad::format_double(metrics.bpcer);
  std::cout << "\n";
  return kExitOk;
}

int cmd_render(const std::string& kind, const std::string& image_path, const std::string& out_svg,
               int block_size, int bins) {
  const fnfpad::RasterImage img = fnfpad::load_image(image_path);
  std::string svg;
  if (kind == "ocl-map") {
    svg = fnfpad::svg_block_map(fnfpad::ocl_map(fnfpad::to_grayscale(img), block_size),
                                "blockwise OCL");
  } else if (kind == "lcs-profile") {
    const fnfpad::RasterImage gray = fnfpad::to_grayscale(img);
    const fnfpad::BlockGrid grid = fnfpad::block_partition(gray, std::max(32, block_size));
    // profile of the clearest block: highest-OCL valid block
    double best = -1.0;
    fnfpad::RasterImage best_block;
    double best_orientation = 0.0;
    for (int by = 0; by < grid.rows; ++by)
      for (int bx = 0; bx < grid.cols; ++bx) {
        const fnfpad::RasterImage blk = fnfpad::extract_block(gray, grid, bx, by);
        const fnfpad::OclBlockResult o = fnfpad::ocl_block(blk);
        if (o.valid && o.value > best) {
          best = o.value;
          best_block = blk;
          best_orientation = o.orientation;
        }
      }
    if (best < 0.0) {
      std::cerr << "no valid block for lcs-profile\n";
      return kExitUsage;
    }
    const fnfpad::RasterImage rot = fnfpad::rotate_nearest(best_block, best_orientation);
    std::vector<double> profile(rot.width, 0.0);
    for (int x = 0; x < rot.width; ++x) {
      double s = 0.0;
      for (int y = 0; y < rot.height; ++y) s += rot.at(x, y);
      profile[x] = s / rot.height;
    }
    const auto [mn, mx] = std::minmax_element(profile.begin(), profile.end());
    const double dt = 0.5 * (*mn + *mx);
    svg = fnfpad::svg_profile(profile, "ridge-valley profile", &dt);
  } else if (kind == "corr-heatmap") {
    svg = fnfpad::svg_matrix_heatmap(fnfpad::pearson_matrix(img), "channel Pearson correlation");
  } else if (kind == "radial-spectrum") {
    svg = fnfpad::svg_profile(
        fnfpad::radial_spectrum(fnfpad::fft2_logmag(fnfpad::to_grayscale(img)), bins),
        "radially averaged spectrum");
  } else {
    std::cerr << "unknown render kind '" << kind
              << "' (valid: ocl-map, lcs-profile, corr-heatmap, radial-spectrum)\n";
    return kExitUsage;
  }
  fnfpad::write_text_file(out_svg, svg);
  std::cout << "rendered " << kind << " -> " << out_svg << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flash/non-flash fingerprint PAD feature pipeline"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic paired dataset");
  std::string synth_out, synth_format = "ppm";
  int synth_count = 50, synth_size = 160, synth_jobs = 1;
  std::uint64_t synth_seed = 0;
  std::vector<std::string> synth_classes = {"genuine", "print", "screen", "molded"};
  synth->add_option("--out", synth_out, "output directory")->required();
  synth->add_option("--count", synth_count, "pairs per class");
  synth->add_option("--classes", synth_classes, "classes to generate")->delimiter(',');
  synth->add_option("--seed", synth_seed, "base seed");
  synth->add_option("--size", synth_size, "image size, px");
  synth->add_option("--format", synth_format, "image format (ppm|png)");
  synth->add_option("--jobs", synth_jobs, "parallel generation workers");

  // extract
  auto* extract = app.add_subcommand("extract", "extract feature vectors from a manifest");
  std::string ex_manifest, ex_csv, ex_json;
  int ex_jobs = 1;
  bool ex_deterministic = false;
  ConfigOptions ex_cfg;
  extract->add_option("--manifest", ex_manifest, "JSON-lines manifest")->required();
  extract->add_option("--out-csv", ex_csv, "feature CSV output")->required();
  extract->add_option("--out-json", ex_json, "feature report JSON output");
  extract->add_option("--jobs", ex_jobs, "worker threads");
  extract->add_flag("--deterministic", ex_deterministic, "omit timestamps from reports");
  ex_cfg.register_flags(extract);

  // stats
  auto* stats = app.add_subcommand("stats", "per-feature separation statistics");
  std::string st_features, st_out;
  stats->add_option("--features", st_features, "feature CSV")->required();
  stats->add_option("--out", st_out, "separation report JSON")->required();

  // classify
  auto* classify = app.add_subcommand("classify", "train/evaluate the linear spoof classifier");
  std::string cl_train, cl_test, cl_metrics, cl_model, cl_model_in;
  classify->add_option("--train", cl_train, "training feature CSV");
  classify->add_option("--test", cl_test, "test feature CSV")->required();
  classify->add_option("--out-metrics", cl_metrics, "metrics JSON output");
  classify->add_option("--out-model", cl_model, "model file output");
  classify->add_option("--model-in", cl_model_in, "evaluate an existing model file");

  // render
  auto* render = app.add_subcommand("render", "render an SVG figure");
  std::string rd_kind, rd_image, rd_out;
  int rd_block = 16, rd_bins = 32;
  render->add_option("--kind", rd_kind, "ocl-map|lcs-profile|corr-heatmap|radial-spectrum")
      ->required();
  render->add_option("--image", rd_image, "input image")->required();
  render->add_option("--out", rd_out, "output SVG")->required();
  render->add_option("--block-size", rd_block, "block size for map kinds");
  render->add_option("--bins", rd_bins, "radial spectrum bins");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (synth->parsed())
      return cmd_synth(synth_out, synth_count, synth_classes, synth_seed, synth_size,
                       synth_format, synth_jobs);
    if (extract->parsed()) {
      ex_cfg.finalize(extract);
      return cmd_extract(ex_manifest, ex_csv, ex_json, ex_cfg.cfg, ex_jobs, ex_deterministic);
    }
    if (stats->parsed()) return cmd_stats(st_features, st_out);
    if (classify->parsed()) {
      if (cl_model_in.empty() && cl_train.empty()) {
        std::cerr << "classify: either --train or --model-in is required\n";
        return kExitUsage;
      }
      return cmd_classify(cl_train, cl_test, cl_metrics, cl_model, cl_model_in);
    }
    if (render->parsed()) return cmd_render(rd_kind, rd_image, rd_out, rd_block, rd_bins);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
