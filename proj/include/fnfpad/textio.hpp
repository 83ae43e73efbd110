#pragma once

#include <string>
#include <vector>

namespace fnfpad {

/// Shortest round-trip decimal text for a double (std::to_chars). All CSV,
/// JSON and model files go through this so reruns diff byte-identically.
std::string format_double(double v);

/// Strict parse; throws std::runtime_error on trailing garbage.
double parse_double(const std::string& s);

std::vector<std::string> split(const std::string& line, char sep);
std::string join(const std::vector<std::string>& parts, const std::string& sep);

}  // namespace fnfpad
