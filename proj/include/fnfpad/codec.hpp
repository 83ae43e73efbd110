#pragma once

#include <string>

#include "fnfpad/image.hpp"

namespace fnfpad {

// Binary Netpbm, maxval 255 only. 1-channel images map to PGM (P5),
// 3-channel to PPM (P6). Encoding quantizes with round(v * 255).
std::string encode_pnm(const RasterImage& img);
RasterImage decode_pnm(const std::string& bytes);

RasterImage load_png(const std::string& path);
void save_png(const std::string& path, const RasterImage& img);

/// Sniffs PNG/P5/P6 magic bytes; throws std::runtime_error on anything else
/// or on unreadable files.
RasterImage load_image(const std::string& path);

/// Picks the codec from the extension (.png, .pgm, .ppm, .pnm).
void save_image(const std::string& path, const RasterImage& img);

}  // namespace fnfpad
