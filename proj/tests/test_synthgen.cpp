#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fnfpad/illumcues.hpp"
#include "fnfpad/manifest.hpp"
#include "fnfpad/synthgen.hpp"
#include "test_support.hpp"

using namespace fnfpad;
namespace fs = std::filesystem;

namespace {

GenSpec quick_spec(std::uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  spec.size = 128;
  return spec;
}

double ncc(const RasterImage& a, const RasterImage& b) {
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    ma += a.data[i];
    mb += b.data[i];
  }
  ma /= a.data.size();
  mb /= b.data.size();
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    cov += (a.data[i] - ma) * (b.data[i] - mb);
    va += (a.data[i] - ma) * (a.data[i] - ma);
    vb += (b.data[i] - mb) * (b.data[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

// 3x3 box blur: suppresses sensor noise so the comparison tracks the ridge map
RasterImage ridge_map(const RasterImage& g) {
  RasterImage out = g;
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) {
      double s = 0.0;
      int c = 0;
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= g.width || yy >= g.height) continue;
          s += g.at(xx, yy);
          ++c;
        }
      out.at(x, y) = s / c;
    }
  return out;
}

}  // namespace

TEST_SUITE("synthgen") {

TEST_CASE("identical spec renders byte-identical pairs") {
  const MaterialModel mat = MaterialModel::defaults(MaterialKind::genuine);
  const PairedCapture a = generate_pair(quick_spec(42), mat);
  const PairedCapture b = generate_pair(quick_spec(42), mat);
  CHECK(a.flash.data == b.flash.data);
  CHECK(a.nonflash.data == b.nonflash.data);

  const PairedCapture c = generate_pair(quick_spec(43), mat);
  CHECK(a.flash.data != c.flash.data);
}

TEST_CASE("images are valid rasters on the 8-bit grid") {
  for (MaterialKind k : {MaterialKind::genuine, MaterialKind::print, MaterialKind::screen,
                         MaterialKind::molded}) {
    const PairedCapture p = generate_pair(quick_spec(7), MaterialModel::defaults(k));
    CHECK_NOTHROW(p.flash.validate());
    CHECK_NOTHROW(p.nonflash.validate());
    CHECK(p.label.consistent());
    for (double v : p.flash.data)
      CHECK(v == doctest::Approx(std::round(v * 255.0) / 255.0).epsilon(1e-15));
  }
}

TEST_CASE("degenerate illumination settings collapse flash onto nonflash") {
  GenSpec spec = quick_spec(11);
  MaterialModel mat = MaterialModel::defaults(MaterialKind::genuine);
  mat.specular_strength = 0.0;
  mat.micro_highlight_density = 0.0;
  spec.nonflash = spec.flash;  // same gain/ambient/factors
  const PairedCapture p = generate_pair(spec, mat);
  CHECK(p.flash.data == p.nonflash.data);
}

TEST_CASE("parameter validation") {
  GenSpec tiny = quick_spec(1);
  tiny.size = 64;
  CHECK_THROWS_AS(generate_pair(tiny, MaterialModel::defaults(MaterialKind::genuine)),
                  std::invalid_argument);
  GenSpec period = quick_spec(1);
  period.ridge_period = 40.0;
  CHECK_THROWS_AS(generate_pair(period, MaterialModel::defaults(MaterialKind::genuine)),
                  std::invalid_argument);
  MaterialModel bad = MaterialModel::defaults(MaterialKind::genuine);
  bad.subsurface_sigma = -1.0;
  CHECK_THROWS_AS(generate_pair(quick_spec(1), bad), std::invalid_argument);
}

TEST_CASE("print spoofs out-highlight genuine skin under flash") {
  // generator-level statistical oracle, seeds 0..49, thresholds frozen
  int print_wins = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const PairedCapture g =
        generate_pair(quick_spec(seed), MaterialModel::defaults(MaterialKind::genuine));
    const PairedCapture p =
        generate_pair(quick_spec(seed), MaterialModel::defaults(MaterialKind::print));
    const double shr_g = specular_highlight_ratio(g.flash).shr;
    const double shr_p = specular_highlight_ratio(p.flash).shr;
    if (shr_p > shr_g) ++print_wins;
  }
  CHECK(print_wins >= 45);
}

TEST_CASE("identity is preserved within a pair and distinct across pairs") {
  std::vector<RasterImage> flash_maps;
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const PairedCapture p =
        generate_pair(quick_spec(seed), MaterialModel::defaults(MaterialKind::genuine));
    const RasterImage f = ridge_map(to_grayscale(p.flash));
    const RasterImage n = ridge_map(to_grayscale(p.nonflash));
    CHECK(ncc(f, n) > 0.8);
    flash_maps.push_back(f);
  }
  for (std::size_t i = 0; i < flash_maps.size(); ++i)
    for (std::size_t j = i + 1; j < flash_maps.size(); ++j)
      CHECK(std::abs(ncc(flash_maps[i], flash_maps[j])) < 0.3);
}

TEST_CASE("dataset generation writes files plus manifest") {
  const fs::path dir = fs::temp_directory_path() / "fnfpad_synth_test";
  fs::remove_all(dir);
  fs::create_directories(dir);

  ClassCounts counts{2, 2, 0, 0};
  const DatasetResult res = generate_dataset(dir.string(), counts, 7, quick_spec(0));
  CHECK(res.pairs_written == 4);
  const auto entries = read_manifest(res.manifest_path);
  CHECK(entries.size() == 4);
  int images = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".ppm") ++images;
  CHECK(images == 8);

  // identical rerun produces identical bytes
  const fs::path dir2 = fs::temp_directory_path() / "fnfpad_synth_test2";
  fs::remove_all(dir2);
  fs::create_directories(dir2);
  generate_dataset(dir2.string(), counts, 7, quick_spec(0));
  for (const auto& e : entries) {
    std::ifstream f1(dir / e.flash_path, std::ios::binary);
    std::ifstream f2(dir2 / e.flash_path, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    CHECK_FALSE(s1.empty());
  }

  // parallel generation produces identical bytes too
  const fs::path dir4 = fs::temp_directory_path() / "fnfpad_synth_test4";
  fs::remove_all(dir4);
  fs::create_directories(dir4);
  generate_dataset(dir4.string(), counts, 7, quick_spec(0), "ppm", 4);
  for (const auto& e : entries) {
    for (const std::string& name : {e.flash_path, e.nonflash_path}) {
      std::ifstream f1(dir / name, std::ios::binary);
      std::ifstream f2(dir4 / name, std::ios::binary);
      std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
      std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
      CHECK(s1 == s2);
    }
  }

  fs::remove_all(dir);
  fs::remove_all(dir2);
  fs::remove_all(dir4);
}

}  // TEST_SUITE
