#include "fnfpad/codec.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fnfpad {

namespace {

inline unsigned char to_byte(double v) {
  const double c = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  return static_cast<unsigned char>(std::lround(c * 255.0));
}

// Reads one whitespace-delimited token, skipping '#' comments.
std::string next_pnm_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const char c = bytes[pos];
    if (c == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos]))) ++pos;
  if (start == pos) throw std::runtime_error("pnm: truncated header");
  return bytes.substr(start, pos - start);
}

}  // namespace

std::string encode_pnm(const RasterImage& img) {
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("pnm: 1 or 3 channels required");
  std::string out;
  out += (img.channels == 1) ? "P5" : "P6";
  out += "\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.reserve(out.size() + img.data.size());
  for (double v : img.data) out.push_back(static_cast<char>(to_byte(v)));
  return out;
}

RasterImage decode_pnm(const std::string& bytes) {
  std::size_t pos = 0;
  const std::string magic = next_pnm_token(bytes, pos);
  int channels = 0;
  if (magic == "P5") channels = 1;
  else if (magic == "P6") channels = 3;
  else throw std::runtime_error("pnm: unsupported magic '" + magic + "'");

  const int w = std::stoi(next_pnm_token(bytes, pos));
  const int h = std::stoi(next_pnm_token(bytes, pos));
  const int maxval = std::stoi(next_pnm_token(bytes, pos));
  if (w <= 0 || h <= 0) throw std::runtime_error("pnm: bad dimensions");
  if (maxval != 255) throw std::runtime_error("pnm: only maxval 255 supported");
  pos += 1;  // single whitespace byte after maxval

  const std::size_t need = static_cast<std::size_t>(w) * h * channels;
  if (bytes.size() - pos < need) throw std::runtime_error("pnm: truncated pixel data");
  RasterImage img(w, h, channels);
  for (std::size_t i = 0; i < need; ++i)
    img.data[i] = static_cast<unsigned char>(bytes[pos + i]) / 255.0;
  return img;
}

RasterImage load_png(const std::string& path) {
  FILE* fp = std::fopen(path.c_str(), "rb");
  if (!fp) throw std::runtime_error("cannot open " + path);
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: failed to decode " + path);
  }
  png_init_io(png, fp);
  png_read_info(png, info);

  png_set_scale_16(png);
  png_set_palette_to_rgb(png);
  png_set_expand_gray_1_2_4_to_8(png);
  png_set_strip_alpha(png);
  png_read_update_info(png, info);

  const int w = static_cast<int>(png_get_image_width(png, info));
  const int h = static_cast<int>(png_get_image_height(png, info));
  const int color = png_get_color_type(png, info);
  int channels = 0;
  if (color == PNG_COLOR_TYPE_GRAY) channels = 1;
  else if (color == PNG_COLOR_TYPE_RGB) channels = 3;
  else {
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    throw std::runtime_error("png: unsupported color type in " + path);
  }

  std::vector<unsigned char> rowbuf(static_cast<std::size_t>(w) * channels);
  RasterImage img(w, h, channels);
  for (int y = 0; y < h; ++y) {
    png_read_row(png, rowbuf.data(), nullptr);
    for (std::size_t i = 0; i < rowbuf.size(); ++i)
      img.data[static_cast<std::size_t>(y) * w * channels + i] = rowbuf[i] / 255.0;
  }
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  std::fclose(fp);
  return img;
}

void save_png(const std::string& path, const RasterImage& img) {
  if (img.channels != 1 && img.channels != 3)
    throw std::invalid_argument("png: 1 or 3 channels required");
  FILE* fp = std::fopen(path.c_str(), "wb");
  if (!fp) throw std::runtime_error("cannot open " + path + " for writing");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    if (png) png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("png: allocation failed");
  }
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw std::runtime_error("png: failed to encode " + path);
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, img.width, img.height, 8,
               img.channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);

  std::vector<unsigned char> rowbuf(static_cast<std::size_t>(img.width) * img.channels);
  for (int y = 0; y < img.height; ++y) {
    for (std::size_t i = 0; i < rowbuf.size(); ++i)
      rowbuf[i] = to_byte(img.data[static_cast<std::size_t>(y) * img.width * img.channels + i]);
    png_write_row(png, rowbuf.data());
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  std::fclose(fp);
}

RasterImage load_image(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  if (bytes.size() >= 2 && (bytes.compare(0, 2, "P5") == 0 || bytes.compare(0, 2, "P6") == 0))
    return decode_pnm(bytes);
  if (bytes.size() >= 8 && static_cast<unsigned char>(bytes[0]) == 0x89 &&
      bytes.compare(1, 3, "PNG") == 0)
    return load_png(path);
  throw std::runtime_error("unrecognized image format: " + path);
}

void save_image(const std::string& path, const RasterImage& img) {
  const auto dot = path.find_last_of('.');
  const std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "png") {
    save_png(path, img);
    return;
  }
  if (ext == "pgm" || ext == "ppm" || ext == "pnm") {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    const std::string bytes = encode_pnm(img);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
    return;
  }
  throw std::invalid_argument("unsupported image extension: " + path);
}

}  // namespace fnfpad
