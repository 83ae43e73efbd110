#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fnfpad/image.hpp"
#include "fnfpad/rng.hpp"

// Shared constructors and brute-force oracles. Oracles are deliberately
// written as direct loops over the definitions, independent of the library
// implementation paths they check.
namespace testsup {

inline fnfpad::RasterImage make_gray(int w, int h,
                                     const std::function<double(int, int)>& f) {
  fnfpad::RasterImage img(w, h, 1);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) img.at(x, y) = f(x, y);
  return img;
}

inline fnfpad::RasterImage make_rgb(int w, int h,
                                    const std::function<double(int, int, int)>& f) {
  fnfpad::RasterImage img(w, h, 3);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (int c = 0; c < 3; ++c) img.at(x, y, c) = f(x, y, c);
  return img;
}

inline fnfpad::RasterImage random_gray(int w, int h, std::uint64_t seed) {
  fnfpad::SplitMix64 rng(seed);
  return make_gray(w, h, [&](int, int) { return rng.next_double(); });
}

inline fnfpad::RasterImage random_rgb(int w, int h, std::uint64_t seed) {
  fnfpad::SplitMix64 rng(seed);
  fnfpad::RasterImage img(w, h, 3);
  for (double& v : img.data) v = rng.next_double();
  return img;
}

// replicate-padded pixel access
inline double clamped_px(const fnfpad::RasterImage& img, int x, int y) {
  x = x < 0 ? 0 : (x >= img.width ? img.width - 1 : x);
  y = y < 0 ? 0 : (y >= img.height ? img.height - 1 : y);
  return img.at(x, y);
}

// direct 3x3 correlation with explicit kernels
inline void sobel_oracle(const fnfpad::RasterImage& img, std::vector<double>& gx,
                         std::vector<double>& gy) {
  static const int kx[3][3] = {{-1, 0, 1}, {-2, 0, 2}, {-1, 0, 1}};
  static const int ky[3][3] = {{-1, -2, -1}, {0, 0, 0}, {1, 2, 1}};
  gx.assign(img.pixel_count(), 0.0);
  gy.assign(img.pixel_count(), 0.0);
  for (int y = 0; y < img.height; ++y)
    for (int x = 0; x < img.width; ++x) {
      double sx = 0.0, sy = 0.0;
      for (int j = -1; j <= 1; ++j)
        for (int i = -1; i <= 1; ++i) {
          sx += kx[j + 1][i + 1] * clamped_px(img, x + i, y + j);
          sy += ky[j + 1][i + 1] * clamped_px(img, x + i, y + j);
        }
      gx[static_cast<std::size_t>(y) * img.width + x] = sx;
      gy[static_cast<std::size_t>(y) * img.width + x] = sy;
    }
}

// direct O(N^2) 2-D DFT
inline std::vector<std::complex<double>> dft2_oracle(const std::vector<double>& data, int w,
                                                     int h) {
  std::vector<std::complex<double>> out(static_cast<std::size_t>(w) * h);
  for (int ky = 0; ky < h; ++ky)
    for (int kx = 0; kx < w; ++kx) {
      std::complex<double> acc(0.0, 0.0);
      for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
          const double ang = -2.0 * M_PI * (static_cast<double>(kx) * x / w +
                                            static_cast<double>(ky) * y / h);
          acc += data[static_cast<std::size_t>(y) * w + x] *
                 std::complex<double>(std::cos(ang), std::sin(ang));
        }
      out[static_cast<std::size_t>(ky) * w + kx] = acc;
    }
  return out;
}

inline double mean_oracle(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

inline double pop_var_oracle(const std::vector<double>& v) {
  const double m = mean_oracle(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Pearson correlation straight from the covariance formula
inline double pearson_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean_oracle(a), mb = mean_oracle(b);
  double cov = 0.0, va = 0.0, vb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    cov += (a[i] - ma) * (b[i] - mb);
    va += (a[i] - ma) * (a[i] - ma);
    vb += (b[i] - mb) * (b[i] - mb);
  }
  return cov / std::sqrt(va * vb);
}

// joint-histogram MI in bits by exhaustive counting
inline double mi_oracle(const std::vector<double>& a, const std::vector<double>& b, int bins) {
  auto bin_of = [bins](double v) {
    int q = static_cast<int>(v * bins);
    return q >= bins ? bins - 1 : (q < 0 ? 0 : q);
  };
  std::vector<std::vector<double>> joint(bins, std::vector<double>(bins, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i) joint[bin_of(a[i])][bin_of(b[i])] += 1.0;
  const double n = static_cast<double>(a.size());
  std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j) {
      joint[i][j] /= n;
      pa[i] += joint[i][j];
      pb[j] += joint[i][j];
    }
  double mi = 0.0;
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j)
      if (joint[i][j] > 0.0) mi += joint[i][j] * std::log2(joint[i][j] / (pa[i] * pb[j]));
  return mi;
}

// Mann-Whitney U by direct pairwise comparison (independent of rank sums)
inline double mw_u_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  double u = 0.0;
  for (double x : a)
    for (double y : b) {
      if (x > y) u += 1.0;
      else if (x == y) u += 0.5;
    }
  return u;
}

}  // namespace testsup
