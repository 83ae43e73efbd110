#include "fnfpad/fft.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace fnfpad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Iterative radix-2 Cooley-Tukey, n a power of two.
void fft_pow2(std::vector<std::complex<double>>& v, bool inverse) {
  const std::size_t n = v.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * kPi / static_cast<double>(len) * (inverse ? 1.0 : -1.0);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = v[i + k];
        const std::complex<double> t = v[i + k + len / 2] * w;
        v[i + k] = u + t;
        v[i + k + len / 2] = u - t;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto& x : v) x /= static_cast<double>(n);
}

// Bluestein chirp-z for arbitrary n. Phase exponents are reduced mod 2n
// before the trig call to keep the chirp accurate for large n.
void fft_bluestein(std::vector<std::complex<double>>& v, bool inverse) {
  const std::size_t n = v.size();
  const std::size_t m = next_pow2(2 * n - 1);
  const double sign = inverse ? 1.0 : -1.0;

  std::vector<std::complex<double>> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t kk = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    const double ang = sign * kPi * static_cast<double>(kk) / static_cast<double>(n);
    chirp[k] = std::complex<double>(std::cos(ang), std::sin(ang));
  }

  std::vector<std::complex<double>> a(m, {0.0, 0.0}), b(m, {0.0, 0.0});
  for (std::size_t k = 0; k < n; ++k) a[k] = v[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) b[k] = b[m - k] = std::conj(chirp[k]);

  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
  fft_pow2(a, true);

  for (std::size_t k = 0; k < n; ++k) v[k] = a[k] * chirp[k];
  if (inverse)
    for (auto& x : v) x /= static_cast<double>(n);
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& v, bool inverse) {
  if (v.size() <= 1) return;
  if (is_pow2(v.size()))
    fft_pow2(v, inverse);
  else
    fft_bluestein(v, inverse);
}

void fft2_inplace(std::vector<std::complex<double>>& field, int w, int h, bool inverse) {
  if (field.size() != static_cast<std::size_t>(w) * h)
    throw std::invalid_argument("fft2_inplace: buffer size mismatch");
  std::vector<std::complex<double>> line;
  line.resize(static_cast<std::size_t>(w));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) line[x] = field[static_cast<std::size_t>(y) * w + x];
    fft_inplace(line, inverse);
    for (int x = 0; x < w; ++x) field[static_cast<std::size_t>(y) * w + x] = line[x];
  }
  line.resize(static_cast<std::size_t>(h));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) line[y] = field[static_cast<std::size_t>(y) * w + x];
    fft_inplace(line, inverse);
    for (int y = 0; y < h; ++y) field[static_cast<std::size_t>(y) * w + x] = line[y];
  }
}

ScalarField fft2_logmag(const RasterImage& gray) {
  if (gray.channels != 1) throw std::invalid_argument("fft2_logmag: grayscale input required");
  const int w = gray.width, h = gray.height;
  double mean = 0.0;
  for (double v : gray.data) mean += v;
  mean /= static_cast<double>(gray.data.size());

  std::vector<std::complex<double>> field(gray.data.size());
  for (std::size_t i = 0; i < gray.data.size(); ++i)
    field[i] = std::complex<double>(gray.data[i] - mean, 0.0);
  fft2_inplace(field, w, h, false);

  ScalarField out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int sx = (x + w / 2) % w;  // DC lands at (w/2, h/2)
      const int sy = (y + h / 2) % h;
      out.at(sx, sy) = std::log1p(std::abs(field[static_cast<std::size_t>(y) * w + x]));
    }
  }
  return out;
}

std::vector<double> radial_spectrum(const ScalarField& logmag, int n_bins) {
  if (n_bins < 4) throw std::invalid_argument("radial_spectrum: n_bins must be >= 4");
  const int cx = logmag.width / 2, cy = logmag.height / 2;
  const int r_max = std::min(logmag.width, logmag.height) / 2;
  std::vector<double> sum(static_cast<std::size_t>(n_bins), 0.0);
  std::vector<std::size_t> count(static_cast<std::size_t>(n_bins), 0);
  for (int y = 0; y < logmag.height; ++y) {
    for (int x = 0; x < logmag.width; ++x) {
      const long r = std::lround(std::hypot(static_cast<double>(x - cx), static_cast<double>(y - cy)));
      if (r >= r_max) continue;
      const std::size_t bin = static_cast<std::size_t>(r * n_bins / r_max);
      sum[bin] += logmag.at(x, y);
      count[bin] += 1;
    }
  }
  std::vector<double> profile(static_cast<std::size_t>(n_bins), 0.0);
  for (int b = 0; b < n_bins; ++b)
    if (count[b] > 0) profile[b] = sum[b] / static_cast<double>(count[b]);
  return profile;
}

}  // namespace fnfpad
