#include "fnfpad/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "fnfpad/codec.hpp"
#include "fnfpad/textio.hpp"

namespace fnfpad {

using ordered_json = nlohmann::ordered_json;

ExtractOutcome run_extract(const std::vector<ManifestEntry>& entries,
                           const std::string& manifest_dir, const ExtractConfig& cfg,
                           int jobs) {
  std::vector<const ManifestEntry*> sorted;
  sorted.reserve(entries.size());
  for (const auto& e : entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const ManifestEntry* a, const ManifestEntry* b) {
    return a->label.pair_id < b->label.pair_id;
  });

  struct Slot {
    bool ok = false;
    FeatureVector features;
    std::string error;
  };
  std::vector<Slot> slots(sorted.size());

  auto process = [&](std::size_t i) {
    const ManifestEntry& e = *sorted[i];
    try {
      PairedCapture pair;
      pair.flash = load_image(resolve_path(manifest_dir, e.flash_path));
      pair.nonflash = load_image(resolve_path(manifest_dir, e.nonflash_path));
      pair.label = e.label;
      slots[i].features = extract_features(pair, cfg);
      slots[i].ok = true;
    } catch (const std::exception& ex) {
      slots[i].error = ex.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < slots.size(); ++i) process(i);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= slots.size()) break;
        process(i);
      }
    };
    std::vector<std::thread> threads;
    for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  ExtractOutcome out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i].ok) {
      out.rows.push_back({sorted[i]->label, std::move(slots[i].features)});
    } else {
      out.partial_failure = true;
      out.warnings.push_back("pair " + sorted[i]->label.pair_id + " skipped: " + slots[i].error);
    }
  }
  return out;
}

std::string feature_csv_header() {
  std::vector<std::string> cols = {"pair_id", "subject", "session", "label", "pai_type"};
  for (const auto& n : canonical_feature_names()) cols.push_back(n);
  cols.push_back("flags");
  return join(cols, ",");
}

std::string features_to_csv(const std::vector<PairRow>& rows) {
  std::string out = feature_csv_header() + "\n";
  for (const auto& row : rows) {
    std::vector<std::string> cols = {row.label.pair_id, row.label.subject_id,
                                     std::to_string(row.label.session),
                                     to_string(row.label.sample_class),
                                     to_string(row.label.pai_type)};
    for (std::size_t j = 0; j < row.features.values.size(); ++j)
      cols.push_back(row.features.valid[j] ? format_double(row.features.values[j]) : "");
    cols.push_back(join(row.features.flags, ";"));
    out += join(cols, ",") + "\n";
  }
  return out;
}

std::vector<PairRow> read_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open feature CSV: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty feature CSV: " + path);
  if (line != feature_csv_header())
    throw std::runtime_error("feature CSV header mismatch in " + path);

  const std::size_t d = canonical_feature_names().size();
  std::vector<PairRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto cols = split(line, ',');
    if (cols.size() != 5 + d + 1)
      throw std::runtime_error("feature CSV line " + std::to_string(line_no) +
                               ": wrong column count");
    PairRow row;
    row.label.pair_id = cols[0];
    row.label.subject_id = cols[1];
    row.label.session = std::stoi(cols[2]);
    row.label.sample_class = sample_class_from_string(cols[3]);
    row.label.pai_type = pai_type_from_string(cols[4]);
    row.features.values.assign(d, 0.0);
    row.features.valid.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
      const std::string& cell = cols[5 + j];
      if (!cell.empty()) {
        row.features.values[j] = parse_double(cell);
        row.features.valid[j] = 1;
      }
    }
    if (!cols.back().empty()) row.features.flags = split(cols.back(), ';');
    rows.push_back(std::move(row));
  }
  return rows;
}

SeparationReport separation_from_rows(const std::vector<PairRow>& rows) {
  const auto& names = canonical_feature_names();
  std::vector<std::vector<double>> genuine(names.size()), spoof(names.size());
  for (const auto& row : rows) {
    auto& dest = row.label.sample_class == SampleClass::genuine ? genuine : spoof;
    for (std::size_t j = 0; j < names.size(); ++j)
      if (row.features.valid[j]) dest[j].push_back(row.features.values[j]);
  }
  return build_separation_report(names, genuine, spoof, "all_features");
}

namespace {

ordered_json config_json(const ExtractConfig& cfg) {
  ordered_json j;
  j["ocl_block_size"] = cfg.quality.ocl_block_size;
  j["lcs_block_size"] = cfg.quality.lcs_block_size;
  j["patch_size"] = cfg.quality.patch_size;
  j["mi_bins"] = cfg.mi_bins;
  j["shr_intensity_thresh"] = cfg.shr_intensity_thresh;
  j["shr_texture_window"] = cfg.shr_texture_window;
  j["shr_texture_thresh"] = cfg.shr_texture_thresh;
  j["glcm_levels"] = cfg.texture.glcm.levels;
  j["realism_block"] = cfg.texture.realism_block;
  j["peak_factor"] = cfg.texture.peak_factor;
  j["radial_bins"] = cfg.texture.radial_bins;
  j["align_max_shift"] = cfg.align_max_shift;
  return j;
}

std::string timestamp_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

}  // namespace

std::string extract_report_json(const std::vector<PairRow>& rows,
                                const std::vector<std::string>& warnings,
                                const ExtractConfig& cfg, bool deterministic) {
  ordered_json j;
  j["schema"] = "fnfpad-report/1";
  j["kind"] = "features";
  if (!deterministic) j["generated_at"] = timestamp_now();
  j["config"] = config_json(cfg);
  j["pairs"] = ordered_json::array();
  for (const auto& row : rows) {
    ordered_json p;
    p["pair_id"] = row.label.pair_id;
    p["subject"] = row.label.subject_id;
    p["session"] = row.label.session;
    p["label"] = to_string(row.label.sample_class);
    p["pai_type"] = to_string(row.label.pai_type);
    ordered_json feats;
    const auto& names = canonical_feature_names();
    for (std::size_t k = 0; k < names.size(); ++k)
      if (row.features.valid[k]) feats[names[k]] = row.features.values[k];
    p["features"] = std::move(feats);
    p["flags"] = row.features.flags;
    j["pairs"].push_back(std::move(p));
  }
  j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string separation_report_json(const SeparationReport& report) {
  ordered_json j;
  j["schema"] = "fnfpad-report/1";
  j["kind"] = "separation";
  j["context"] = report.context;
  j["delta_convention"] = "delta = mean(genuine) - mean(spoof); off-diagonal statistics use means";
  j["features"] = ordered_json::array();

  struct Top {
    double fdr = -1.0;
    std::string name;
  };
  Top top_flash, top_nonflash, top_delta;
  for (const auto& f : report.features) {
    ordered_json e;
    e["name"] = f.name;
    e["group"] = to_string(feature_group(f.name));
    e["genuine_mean"] = f.genuine_mean;
    e["genuine_std"] = f.genuine_std;
    e["spoof_mean"] = f.spoof_mean;
    e["spoof_std"] = f.spoof_std;
    e["fdr"] = f.fdr;
    e["u_statistic"] = f.u_statistic;
    e["p_value"] = f.p_value;
    e["delta"] = f.delta;
    e["flags"] = f.flags;
    j["features"].push_back(std::move(e));
    if (!f.flags.empty()) continue;
    Top& top = feature_group(f.name) == FeatureGroup::flash      ? top_flash
               : feature_group(f.name) == FeatureGroup::nonflash ? top_nonflash
                                                                 : top_delta;
    if (f.fdr > top.fdr) top = {f.fdr, f.name};
  }
  ordered_json summary;
  for (const auto& [key, top] : {std::pair<const char*, Top&>{"top_flash", top_flash},
                                 {"top_nonflash", top_nonflash},
                                 {"top_delta", top_delta}}) {
    ordered_json t;
    t["name"] = top.name;
    t["fdr"] = top.fdr < 0.0 ? 0.0 : top.fdr;
    summary[key] = std::move(t);
  }
  j["summary"] = std::move(summary);
  return j.dump(2) + "\n";
}

std::string metrics_report_json(const EvalMetrics& metrics, std::size_t train_rows,
                                std::size_t test_rows, const std::string& model_path) {
  ordered_json j;
  j["schema"] = "fnfpad-report/1";
  j["kind"] = "classifier_metrics";
  j["train_rows"] = train_rows;
  j["test_rows"] = test_rows;
  j["model_file"] = model_path;
  ordered_json m;
  m["accuracy"] = metrics.accuracy;
  if (metrics.apcer_defined)
    m["apcer"] = metrics.apcer;
  else
    m["apcer"] = nullptr;
  if (metrics.bpcer_defined)
    m["bpcer"] = metrics.bpcer;
  else
    m["bpcer"] = nullptr;
  j["metrics"] = std::move(m);
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fnfpad
