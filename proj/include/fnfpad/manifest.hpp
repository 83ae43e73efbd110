#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fnfpad/image.hpp"

namespace fnfpad {

/// One JSON-lines manifest record. Image paths are stored as written
/// (usually relative to the manifest's directory).
struct ManifestEntry {
  CaptureLabel label;
  std::string flash_path;
  std::string nonflash_path;
};

struct ManifestError : std::runtime_error {
  int line;
  ManifestError(int line_no, const std::string& what)
      : std::runtime_error(what), line(line_no) {}
};

/// Parses a JSON-lines manifest; throws ManifestError with the offending
/// line number on malformed records, duplicate pair_ids, or inconsistent
/// label/pai_type combinations.
std::vector<ManifestEntry> read_manifest(const std::string& path);

void write_manifest(const std::string& path, const std::vector<ManifestEntry>& entries);

/// Directory part of a path ("" when there is none).
std::string parent_dir(const std::string& path);

/// Resolves a manifest-relative image path.
std::string resolve_path(const std::string& base_dir, const std::string& path);

}  // namespace fnfpad
