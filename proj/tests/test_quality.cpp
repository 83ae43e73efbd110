#include <doctest.h>

#include <cmath>

#include "fnfpad/quality.hpp"
#include "test_support.hpp"

using namespace fnfpad;
using namespace testsup;

namespace {

RasterImage grating(int n, double period, double angle, double lo = 0.2, double hi = 0.8) {
  return make_gray(n, n, [&](int x, int y) {
    const double u = x * std::cos(angle) + y * std::sin(angle);
    return lo + (hi - lo) * 0.5 * (1.0 + std::sin(2.0 * M_PI * u / period));
  });
}

RasterImage square_wave(int n, int period, double lo = 0.2, double hi = 0.8) {
  return make_gray(n, n, [&](int x, int) { return (x / (period / 2)) % 2 ? hi : lo; });
}

}  // namespace

TEST_SUITE("quality") {

TEST_CASE("ocl of a one-directional grating is 1") {
  const OclBlockResult r = ocl_block(grating(16, 4.0, 0.0));
  CHECK(r.valid);
  CHECK(r.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("ocl of a constant block is 0 and invalid") {
  const OclBlockResult r = ocl_block(make_gray(16, 16, [](int, int) { return 0.5; }));
  CHECK_FALSE(r.valid);
  CHECK(r.value == 0.0);
}

TEST_CASE("ocl of isotropic noise stays low") {
  // Monte-Carlo oracle, fixed seed list, 32x32 noise blocks
  int low = 0;
  const int trials = 1000;
  for (int seed = 0; seed < trials; ++seed) {
    const OclBlockResult r = ocl_block(random_gray(32, 32, seed));
    if (r.value < 0.3) ++low;
  }
  CHECK(low >= 990);
}

TEST_CASE("ocl is invariant to positive affine intensity maps") {
  const RasterImage img = random_gray(16, 16, 99);
  RasterImage mapped(16, 16, 1);
  for (std::size_t i = 0; i < img.data.size(); ++i) mapped.data[i] = 0.4 * img.data[i] + 0.2;
  const OclBlockResult a = ocl_block(img), b = ocl_block(mapped);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
}

TEST_CASE("ocl is stable under 90-degree rotation") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    RasterImage img = seed % 2 ? random_gray(16, 16, seed) : grating(16, 5.0, 0.4 * seed);
    RasterImage rot(16, 16, 1);
    for (int y = 0; y < 16; ++y)
      for (int x = 0; x < 16; ++x) rot.at(x, y) = img.at(y, 15 - x);
    CHECK(std::abs(ocl_block(img).value - ocl_block(rot).value) <= 0.02);
  }
}

TEST_CASE("ocl orientation points along the ridge normal") {
  // grating varying along x: gradient (ridge normal) along x, angle ~ 0
  const OclBlockResult r = ocl_block(grating(32, 8.0, 0.0));
  CHECK(std::abs(std::remainder(r.orientation, M_PI)) < 0.05);
  const OclBlockResult ry = ocl_block(grating(32, 8.0, M_PI / 2.0));
  CHECK(std::abs(std::abs(std::remainder(ry.orientation, M_PI)) - M_PI / 2.0) < 0.05);
}

TEST_CASE("lcs of a clean two-level square wave is 1") {
  const double lcs = lcs_block(square_wave(32, 8), 0.0);
  CHECK(lcs == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lcs drops when class-crossing noise is added") {
  // levels 0.35/0.65: +-0.25 noise spans both classes
  const RasterImage clean = square_wave(32, 8, 0.35, 0.65);
  const double base = lcs_block(clean, 0.0);
  CHECK(base == doctest::Approx(1.0).epsilon(1e-12));
  SplitMix64 rng(7);
  RasterImage noisy = clean;
  for (double& v : noisy.data) {
    v += rng.uniform(-0.25, 0.25);
    v = v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
  }
  const double noised = lcs_block(noisy, 0.0);
  CHECK(noised < base);
  CHECK(noised >= 0.0);
  CHECK(noised <= 1.0);
}

TEST_CASE("lcs handles rotated gratings via the orientation argument") {
  const double angle = 0.6;
  const RasterImage img = grating(32, 8.0, angle);
  const OclBlockResult o = ocl_block(img);
  const double lcs = lcs_block(img, o.orientation);
  CHECK(lcs > 0.7);  // rotated resampling keeps ridges separable
}

TEST_CASE("local contrast on constant, checkerboard, random") {
  CHECK(local_contrast(make_gray(32, 32, [](int, int) { return 0.3; })) == 0.0);

  const RasterImage checker = make_gray(32, 32, [](int x, int y) {
    return (x + y) % 2 ? 1.0 : 0.0;
  });
  CHECK(local_contrast(checker) == doctest::Approx(0.5).epsilon(1e-12));

  // independent naive double-loop oracle
  const RasterImage img = random_gray(40, 33, 21);
  const int ps = 16;
  double acc = 0.0;
  int patches = 0;
  for (int by = 0; by + ps <= 33; by += ps)
    for (int bx = 0; bx + ps <= 40; bx += ps) {
      std::vector<double> vals;
      for (int y = by; y < by + ps; ++y)
        for (int x = bx; x < bx + ps; ++x) vals.push_back(img.at(x, y));
      acc += std::sqrt(pop_var_oracle(vals));
      ++patches;
    }
  CHECK(local_contrast(img, ps) == doctest::Approx(acc / patches).epsilon(1e-12));

  CHECK_THROWS_AS(local_contrast(make_gray(8, 8, [](int, int) { return 0.1; }), 16),
                  std::invalid_argument);
}

TEST_CASE("edge clarity: constant, step oracle, intensity scaling") {
  CHECK(edge_clarity(make_gray(16, 16, [](int, int) { return 0.5; })) == 0.0);

  // single vertical step, validated against a direct oracle
  const RasterImage step = make_gray(16, 16, [](int x, int) { return x < 8 ? 0.0 : 1.0; });
  std::vector<double> gx, gy;
  sobel_oracle(step, gx, gy);
  std::vector<double> mag(gx.size());
  for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::hypot(gx[i], gy[i]);
  std::vector<double> sorted(mag);
  std::sort(sorted.begin(), sorted.end());
  const double pos = 0.75 * (sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const double q75 = sorted[lo] + (pos - lo) * (sorted[lo + 1] - sorted[lo]);
  double acc = 0.0;
  int cnt = 0;
  for (double m : mag)
    if (m > q75) {
      acc += m;
      ++cnt;
    }
  CHECK(edge_clarity(step) == doctest::Approx(acc / cnt).epsilon(1e-12));

  // scaling intensities by a scales the metric by a
  const RasterImage img = random_gray(24, 24, 31);
  RasterImage scaled = img;
  for (double& v : scaled.data) v *= 0.5;
  CHECK(edge_clarity(scaled) == doctest::Approx(0.5 * edge_clarity(img)).epsilon(1e-9));
}

TEST_CASE("sharpness: constant, blur ordering, quadratic scaling") {
  CHECK(sharpness(make_gray(16, 16, [](int, int) { return 0.5; })) == 0.0);

  // 3x3 box blur lowers variance-of-Laplacian on a noise image
  const RasterImage img = random_gray(32, 32, 55);
  RasterImage blurred(32, 32, 1);
  for (int y = 0; y < 32; ++y)
    for (int x = 0; x < 32; ++x) {
      double s = 0.0;
      for (int j = -1; j <= 1; ++j)
        for (int i = -1; i <= 1; ++i) s += clamped_px(img, x + i, y + j);
      blurred.at(x, y) = s / 9.0;
    }
  CHECK(sharpness(blurred) < sharpness(img));

  RasterImage scaled = img;
  for (double& v : scaled.data) v *= 0.5;
  CHECK(sharpness(scaled) == doctest::Approx(0.25 * sharpness(img)).epsilon(1e-9));
}

TEST_CASE("quality report aggregates valid blocks only") {
  // left half structured, right half flat
  const RasterImage img = make_gray(64, 32, [](int x, int y) {
    if (x >= 32) return 0.5;
    return 0.5 + 0.3 * std::sin(2.0 * M_PI * x / 6.0) * std::cos(2.0 * M_PI * y / 17.0);
  });
  const QualityReport rep = compute_quality(img);
  double acc = 0.0;
  int n = 0;
  bool saw_invalid = false;
  for (std::size_t i = 0; i < rep.ocl.values.size(); ++i) {
    if (rep.ocl.valid[i]) {
      acc += rep.ocl.values[i];
      ++n;
    } else {
      saw_invalid = true;
      CHECK(rep.ocl.values[i] == 0.0);
    }
  }
  CHECK(saw_invalid);
  CHECK(n > 0);
  CHECK(rep.ocl_mean == doctest::Approx(acc / n).epsilon(1e-12));
  for (std::size_t i = 0; i < rep.ocl.values.size(); ++i) {
    CHECK(rep.ocl.values[i] >= 0.0);
    CHECK(rep.ocl.values[i] <= 1.0);
  }
  for (std::size_t i = 0; i < rep.lcs.values.size(); ++i) {
    CHECK(rep.lcs.values[i] >= 0.0);
    CHECK(rep.lcs.values[i] <= 1.0);
  }
}

}  // TEST_SUITE
