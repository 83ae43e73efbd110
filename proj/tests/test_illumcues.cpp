#include <doctest.h>

#include <cmath>

#include "fnfpad/illumcues.hpp"
#include "test_support.hpp"

using namespace fnfpad;
using namespace testsup;

TEST_SUITE("illumcues") {

TEST_CASE("pearson identities") {
  // G == R exactly
  const RasterImage same = make_rgb(8, 8, [](int x, int y, int c) {
    const double v = 0.1 + 0.05 * ((x * 7 + y * 3) % 13);
    return c < 2 ? v : 0.5;
  });
  Matrix3Flags flags;
  const Matrix3 m = pearson_matrix(same, &flags);
  CHECK(flags[0][1]);
  CHECK(m[0][1] == doctest::Approx(1.0).epsilon(1e-12));

  // G = 1 - R
  const RasterImage anti = make_rgb(8, 8, [](int x, int y, int c) {
    const double v = 0.1 + 0.05 * ((x * 5 + y) % 11);
    return c == 0 ? v : (c == 1 ? 1.0 - v : 0.3);
  });
  CHECK(pearson_matrix(anti)[0][1] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("pearson 2x2 hand-computed case") {
  // R = (0,1,0,1), G = (0,2,0,2)/2 rescaled into range: perfectly correlated
  RasterImage img(2, 2, 3);
  const double r[4] = {0.0, 1.0, 0.0, 1.0};
  const double g[4] = {0.0, 1.0, 0.0, 1.0};  // 0/2 scaled by 1/2
  for (int i = 0; i < 4; ++i) {
    img.data[i * 3 + 0] = r[i];
    img.data[i * 3 + 1] = g[i] * 0.5 + 0.1;
    img.data[i * 3 + 2] = 0.2 + 0.1 * i;
  }
  const Matrix3 m = pearson_matrix(img);
  CHECK(m[0][1] == doctest::Approx(1.0).epsilon(1e-12));
  // cross-check every entry against the direct covariance oracle
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      std::vector<double> va, vb;
      for (int i = 0; i < 4; ++i) {
        va.push_back(img.data[i * 3 + a]);
        vb.push_back(img.data[i * 3 + b]);
      }
      CHECK(m[a][b] == doctest::Approx(pearson_oracle(va, vb)).epsilon(1e-9));
    }
}

TEST_CASE("pearson flags constant channels") {
  const RasterImage img = make_rgb(8, 8, [](int x, int y, int c) {
    return c == 2 ? 0.5 : 0.1 * ((x + y * 3 + c) % 9);
  });
  Matrix3Flags flags;
  pearson_matrix(img, &flags);
  CHECK(flags[0][1]);
  CHECK_FALSE(flags[0][2]);
  CHECK_FALSE(flags[2][2]);
}

TEST_CASE("pearson randomized oracle equivalence") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const RasterImage img = random_rgb(6 + seed % 5, 5 + seed % 4, seed);
    const Matrix3 m = pearson_matrix(img);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<double> va, vb;
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
          va.push_back(img.data[i * 3 + a]);
          vb.push_back(img.data[i * 3 + b]);
        }
        CHECK(m[a][b] == doctest::Approx(pearson_oracle(va, vb)).epsilon(1e-9));
        CHECK(m[a][b] == doctest::Approx(m[b][a]).epsilon(1e-15));
      }
  }
}

TEST_CASE("pearson invariant under positive affine channel maps") {
  const RasterImage img = random_rgb(12, 12, 42);
  RasterImage mapped = img;
  const double slope[3] = {0.5, 0.8, 0.3}, off[3] = {0.1, 0.05, 0.2};
  for (std::size_t i = 0; i < img.pixel_count(); ++i)
    for (int c = 0; c < 3; ++c)
      mapped.data[i * 3 + c] = slope[c] * img.data[i * 3 + c] + off[c];
  const Matrix3 a = pearson_matrix(img), b = pearson_matrix(mapped);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) CHECK(a[r][c] == doctest::Approx(b[r][c]).epsilon(1e-9));
}

TEST_CASE("mutual information identities") {
  // independent two-value channels, all four combinations equally frequent
  RasterImage indep(2, 2, 3);
  const double r[4] = {0.0, 0.0, 1.0, 1.0};
  const double g[4] = {0.0, 1.0, 0.0, 1.0};
  for (int i = 0; i < 4; ++i) {
    indep.data[i * 3 + 0] = r[i];
    indep.data[i * 3 + 1] = g[i];
    indep.data[i * 3 + 2] = 0.5;
  }
  const Matrix3 mi = mutual_info_matrix(indep, 32);
  CHECK(mi[0][1] == doctest::Approx(0.0).epsilon(1e-12));

  // G == R with two equiprobable values: 1 bit
  RasterImage dep(2, 2, 3);
  for (int i = 0; i < 4; ++i) {
    const double v = i % 2 ? 1.0 : 0.0;
    dep.data[i * 3 + 0] = v;
    dep.data[i * 3 + 1] = v;
    dep.data[i * 3 + 2] = 0.5;
  }
  CHECK(mutual_info_matrix(dep, 32)[0][1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mutual information randomized oracle equivalence and bounds") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int bins = 4 + static_cast<int>(seed % 6);
    const RasterImage img = random_rgb(2 + seed % 3, 2, seed + 100);
    const Matrix3 mi = mutual_info_matrix(img, bins);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        std::vector<double> va, vb;
        for (std::size_t i = 0; i < img.pixel_count(); ++i) {
          va.push_back(img.data[i * 3 + a]);
          vb.push_back(img.data[i * 3 + b]);
        }
        const double expect = mi_oracle(va, vb, bins);
        CHECK(mi[a][b] == doctest::Approx(expect).epsilon(1e-9));
        CHECK(mi[a][b] >= 0.0);
        // MI(X,Y) <= min(H(X), H(Y)) where H is the diagonal entry
        CHECK(mi[a][b] <= std::min(mi[a][a], mi[b][b]) + 1e-9);
      }
  }
}

TEST_CASE("correlation separation") {
  auto with_offdiag = [](double p, double m) {
    ChannelCorrelation cc;
    cc.off_diag_mean_pearson = p;
    cc.off_diag_pearson_defined = true;
    cc.off_diag_mean_mi = m;
    return cc;
  };
  const std::vector<ChannelCorrelation> same_g = {with_offdiag(0.7, 0.4), with_offdiag(0.9, 0.6)};
  const auto [dp0, dm0] = correlation_separation(same_g, same_g);
  CHECK(dp0 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(dm0 == doctest::Approx(0.0).epsilon(1e-15));

  const std::vector<ChannelCorrelation> genuine = {with_offdiag(0.9, 0.5)};
  const std::vector<ChannelCorrelation> spoof = {with_offdiag(0.8, 0.3)};
  const auto [dp, dm] = correlation_separation(genuine, spoof);
  CHECK(dp == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(dm == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(correlation_separation({}, spoof), std::invalid_argument);
}

TEST_CASE("specular highlight ratio: dark image and white square") {
  const RasterImage dark = make_rgb(40, 40, [](int, int, int) { return 0.1; });
  const SpecularReport rd = specular_highlight_ratio(dark);
  CHECK(rd.shr == 0.0);
  CHECK(rd.component_count == 0);

  // uniform white square on 10% of the area
  const int n = 40;  // 40x40, square 13x12 ~ 9.75%
  const RasterImage img = make_rgb(n, n, [](int x, int y, int) {
    return (x >= 10 && x < 23 && y >= 10 && y < 22) ? 1.0 : 0.05;
  });
  const SpecularReport r = specular_highlight_ratio(img);
  CHECK(r.component_count == 1);

  // direct mask-count oracle with the same rule
  const RasterImage gray = to_grayscale(img);
  std::size_t expect = 0;
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      const double mn = std::min({img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)});
      if (mn < 0.9) continue;
      std::vector<double> window;
      for (int dy = -2; dy <= 2; ++dy)
        for (int dx = -2; dx <= 2; ++dx) {
          const int xx = x + dx, yy = y + dy;
          if (xx < 0 || yy < 0 || xx >= n || yy >= n) continue;
          window.push_back(gray.at(xx, yy));
        }
      if (std::sqrt(pop_var_oracle(window)) < 0.02) ++expect;
    }
  CHECK(r.shr == doctest::Approx(static_cast<double>(expect) / (n * n)).epsilon(1e-12));
  CHECK(r.shr == doctest::Approx(0.10).epsilon(0.35));  // within window border effects
}

TEST_CASE("shr monotone in the intensity threshold") {
  const RasterImage img = random_rgb(32, 32, 2024);
  double prev = -1.0;
  for (double thresh : {0.95, 0.9, 0.8, 0.6, 0.4}) {
    const double shr = specular_highlight_ratio(img, thresh, 5, 1e9).shr;
    CHECK(shr >= prev);  // lowering the threshold never decreases shr
    prev = shr;
  }
}

TEST_CASE("component size statistics") {
  // two components of sizes 9 and 25 -> cv = std/mean of {9,25}
  const RasterImage img = make_rgb(40, 40, [](int x, int y, int) {
    const bool small_sq = x >= 2 && x < 5 && y >= 2 && y < 5;
    const bool big_sq = x >= 20 && x < 25 && y >= 20 && y < 25;
    return (small_sq || big_sq) ? 1.0 : 0.0;
  });
  // huge texture threshold so only the intensity gate matters
  const SpecularReport r = specular_highlight_ratio(img, 0.9, 3, 1e9);
  CHECK(r.component_count == 2);
  const double mean = (9.0 + 25.0) / 2.0;
  const double sd = std::sqrt(((9 - mean) * (9 - mean) + (25 - mean) * (25 - mean)) / 2.0);
  CHECK(r.component_size_cv == doctest::Approx(sd / mean).epsilon(1e-12));
}

}  // TEST_SUITE
