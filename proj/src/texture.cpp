#include "fnfpad/texture.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fnfpad/fft.hpp"

namespace fnfpad {

std::array<double, 256> lbp_histogram(const RasterImage& gray) {
  if (gray.channels != 1) throw std::invalid_argument("lbp_histogram: grayscale input required");
  if (gray.width < 3 || gray.height < 3)
    throw std::invalid_argument("lbp_histogram: image too small (need >= 3x3)");
  // east first, then counter-clockwise (image y axis points down)
  static constexpr int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  std::array<double, 256> hist{};
  std::size_t n = 0;
  for (int y = 1; y < gray.height - 1; ++y) {
    for (int x = 1; x < gray.width - 1; ++x) {
      const double c = gray.at(x, y);
      unsigned code = 0;
      for (int k = 0; k < 8; ++k)
        if (gray.at(x + kDx[k], y + kDy[k]) >= c) code |= 1u << k;
      hist[code] += 1.0;
      ++n;
    }
  }
  for (double& v : hist) v /= static_cast<double>(n);
  return hist;
}

std::vector<GlcmFeatures> glcm_features(const RasterImage& gray, const GlcmConfig& cfg) {
  if (gray.channels != 1) throw std::invalid_argument("glcm_features: grayscale input required");
  if (cfg.levels < 2) throw std::invalid_argument("glcm_features: levels must be >= 2");
  const int L = cfg.levels;
  auto quant = [L](double v) {
    int q = static_cast<int>(v * L);
    return q >= L ? L - 1 : (q < 0 ? 0 : q);
  };

  std::vector<GlcmFeatures> out;
  std::vector<double> p(static_cast<std::size_t>(L) * L);
  for (const auto& [dx, dy] : cfg.offsets) {
    std::fill(p.begin(), p.end(), 0.0);
    double total = 0.0;
    for (int y = 0; y < gray.height; ++y) {
      for (int x = 0; x < gray.width; ++x) {
        const int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= gray.width || ny >= gray.height) continue;
        const int a = quant(gray.at(x, y));
        const int b = quant(gray.at(nx, ny));
        p[static_cast<std::size_t>(a) * L + b] += 1.0;  // symmetric matrix:
        p[static_cast<std::size_t>(b) * L + a] += 1.0;  // count both directions
        total += 2.0;
      }
    }
    GlcmFeatures f;
    if (total > 0.0) {
      for (double& v : p) v /= total;
      std::vector<double> marginal(L, 0.0);
      for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) marginal[i] += p[static_cast<std::size_t>(i) * L + j];
      double mu = 0.0;
      for (int i = 0; i < L; ++i) mu += i * marginal[i];
      double sigma2 = 0.0;
      for (int i = 0; i < L; ++i) sigma2 += (i - mu) * (i - mu) * marginal[i];

      double cross = 0.0;
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          const double pij = p[static_cast<std::size_t>(i) * L + j];
          if (pij == 0.0) continue;
          f.contrast += pij * (i - j) * (i - j);
          f.homogeneity += pij / (1.0 + std::abs(i - j));
          f.energy += pij * pij;
          cross += pij * i * j;
        }
      }
      if (sigma2 > 1e-12) {
        f.correlation = (cross - mu * mu) / sigma2;
        f.correlation_defined = true;
      }
    }
    out.push_back(f);
  }
  return out;
}

double texture_realism_ratio(const RasterImage& gray, int block_size, double peak_factor) {
  const BlockGrid grid = block_partition(gray, block_size);
  const int bs = block_size;
  int dominant = 0;
  std::vector<std::complex<double>> field(static_cast<std::size_t>(bs) * bs);
  for (int by = 0; by < grid.rows; ++by) {
    for (int bx = 0; bx < grid.cols; ++bx) {
      const RasterImage blk = extract_block(gray, grid, bx, by);
      double mean = 0.0;
      for (double v : blk.data) mean += v;
      mean /= static_cast<double>(blk.data.size());
      for (std::size_t i = 0; i < blk.data.size(); ++i)
        field[i] = std::complex<double>(blk.data[i] - mean, 0.0);
      fft2_inplace(field, bs, bs, false);

      double peak = 0.0, sum = 0.0;
      int peak_kx = 0, peak_ky = 0;
      for (int ky = 0; ky < bs; ++ky) {
        for (int kx = 0; kx < bs; ++kx) {
          if (kx == 0 && ky == 0) continue;  // DC excluded
          const double mag = std::abs(field[static_cast<std::size_t>(ky) * bs + kx]);
          sum += mag;
          if (mag > peak) {
            peak = mag;
            peak_kx = kx;
            peak_ky = ky;
          }
        }
      }
      const double mean_mag = sum / static_cast<double>(bs * bs - 1);
      const double fx = peak_kx <= bs / 2 ? peak_kx : peak_kx - bs;
      const double fy = peak_ky <= bs / 2 ? peak_ky : peak_ky - bs;
      const double radius = std::hypot(fx, fy);
      if (peak > peak_factor * mean_mag && radius > static_cast<double>(bs) / 8.0)
        ++dominant;
    }
  }
  return static_cast<double>(dominant) / static_cast<double>(grid.block_count());
}

TextureDescriptors compute_texture(const RasterImage& gray, const TextureConfig& cfg) {
  TextureDescriptors d;
  d.config = cfg;
  d.lbp_hist = lbp_histogram(gray);
  d.glcm = glcm_features(gray, cfg.glcm);
  d.realism_ratio = texture_realism_ratio(gray, cfg.realism_block, cfg.peak_factor);
  d.radial_profile = radial_spectrum(fft2_logmag(gray), cfg.radial_bins);
  return d;
}

TextureDelta texture_delta(const TextureDescriptors& a, const TextureDescriptors& b) {
  const bool same_cfg = a.config.glcm.levels == b.config.glcm.levels &&
                        a.config.glcm.offsets == b.config.glcm.offsets &&
                        a.config.realism_block == b.config.realism_block &&
                        a.config.peak_factor == b.config.peak_factor &&
                        a.config.radial_bins == b.config.radial_bins;
  if (!same_cfg || a.glcm.size() != b.glcm.size() ||
      a.radial_profile.size() != b.radial_profile.size())
    throw std::invalid_argument("texture_delta: descriptor configuration mismatch");

  TextureDelta d;
  for (int i = 0; i < 256; ++i) {
    const double s = a.lbp_hist[i] + b.lbp_hist[i];
    if (s > 0.0) {
      const double diff = a.lbp_hist[i] - b.lbp_hist[i];
      d.lbp += diff * diff / s;
    }
  }

  double g2 = 0.0;
  for (std::size_t i = 0; i < a.glcm.size(); ++i) {
    const auto& fa = a.glcm[i];
    const auto& fb = b.glcm[i];
    const double ca = fa.correlation_defined ? fa.correlation : 0.0;
    const double cb = fb.correlation_defined ? fb.correlation : 0.0;
    g2 += (fa.contrast - fb.contrast) * (fa.contrast - fb.contrast);
    g2 += (fa.homogeneity - fb.homogeneity) * (fa.homogeneity - fb.homogeneity);
    g2 += (fa.energy - fb.energy) * (fa.energy - fb.energy);
    g2 += (ca - cb) * (ca - cb);
  }
  d.glcm = std::sqrt(g2);

  auto unit_sum = [](std::vector<double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    if (s > 0.0)
      for (double& x : v) x /= s;
    return v;
  };
  const std::vector<double> pa = unit_sum(a.radial_profile);
  const std::vector<double> pb = unit_sum(b.radial_profile);
  double f2 = 0.0;
  for (std::size_t i = 0; i < pa.size(); ++i) f2 += (pa[i] - pb[i]) * (pa[i] - pb[i]);
  d.fourier = std::sqrt(f2);
  return d;
}

}  // namespace fnfpad
