#include "fnfpad/manifest.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace fnfpad {

using json = nlohmann::json;

std::vector<ManifestEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);

  std::vector<ManifestEntry> entries;
  std::set<std::string> seen_ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      throw ManifestError(line_no, std::string("invalid JSON: ") + e.what());
    }
    try {
      ManifestEntry entry;
      entry.label.pair_id = rec.at("pair_id").get<std::string>();
      entry.label.subject_id = rec.at("subject").get<std::string>();
      entry.label.session = rec.at("session").get<int>();
      entry.label.sample_class = sample_class_from_string(rec.at("label").get<std::string>());
      entry.label.pai_type = pai_type_from_string(rec.at("pai_type").get<std::string>());
      entry.flash_path = rec.at("flash").get<std::string>();
      entry.nonflash_path = rec.at("nonflash").get<std::string>();
      if (!entry.label.consistent())
        throw std::invalid_argument("label/pai_type inconsistent for " + entry.label.pair_id);
      if (!seen_ids.insert(entry.label.pair_id).second)
        throw std::invalid_argument("duplicate pair_id " + entry.label.pair_id);
      entries.push_back(std::move(entry));
    } catch (const json::exception& e) {
      throw ManifestError(line_no, std::string("bad record: ") + e.what());
    } catch (const std::invalid_argument& e) {
      throw ManifestError(line_no, e.what());
    }
  }
  return entries;
}

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest for writing: " + path);
  for (const auto& e : entries) {
    json rec;
    rec["pair_id"] = e.label.pair_id;
    rec["subject"] = e.label.subject_id;
    rec["session"] = e.label.session;
    rec["label"] = to_string(e.label.sample_class);
    rec["pai_type"] = to_string(e.label.pai_type);
    rec["flash"] = e.flash_path;
    rec["nonflash"] = e.nonflash_path;
    out << rec.dump() << "\n";
  }
  if (!out) throw std::runtime_error("manifest write failed: " + path);
}

std::string parent_dir(const std::string& path) {
  const auto pos = path.find_last_of('/');
  return pos == std::string::npos ? "" : path.substr(0, pos);
}

std::string resolve_path(const std::string& base_dir, const std::string& path) {
  if (path.empty() || path.front() == '/' || base_dir.empty()) return path;
  return base_dir + "/" + path;
}

}  // namespace fnfpad
