#include "fnfpad/illumcues.hpp"

#include <cmath>
#include <stdexcept>

namespace fnfpad {

namespace {

void require_rgb(const RasterImage& img, const char* who) {
  if (img.channels != 3)
    throw std::invalid_argument(std::string(who) + ": 3-channel image required");
}

constexpr double kConstStd = 1e-9;

}  // namespace

Matrix3 pearson_matrix(const RasterImage& rgb, Matrix3Flags* defined) {
  require_rgb(rgb, "pearson_matrix");
  const std::size_t n = rgb.pixel_count();
  std::array<double, 3> mean{}, var{};
  for (int c = 0; c < 3; ++c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += rgb.data[i * 3 + c];
    mean[c] = s / static_cast<double>(n);
  }
  std::array<std::array<double, 3>, 3> cov{};
  for (std::size_t i = 0; i < n; ++i) {
    const double d0 = rgb.data[i * 3 + 0] - mean[0];
    const double d1 = rgb.data[i * 3 + 1] - mean[1];
    const double d2 = rgb.data[i * 3 + 2] - mean[2];
    cov[0][0] += d0 * d0; cov[0][1] += d0 * d1; cov[0][2] += d0 * d2;
    cov[1][1] += d1 * d1; cov[1][2] += d1 * d2; cov[2][2] += d2 * d2;
  }
  for (int c = 0; c < 3; ++c) var[c] = cov[c][c] / static_cast<double>(n);

  Matrix3 out{};
  Matrix3Flags flags{};
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      const bool ok = std::sqrt(var[a]) > kConstStd && std::sqrt(var[b]) > kConstStd;
      double v = 0.0;
      if (ok)
        v = (a == b) ? 1.0
                     : cov[a][b] / (static_cast<double>(n) * std::sqrt(var[a] * var[b]));
      out[a][b] = out[b][a] = v;
      flags[a][b] = flags[b][a] = ok;
    }
  }
  if (defined) *defined = flags;
  return out;
}

Matrix3 mutual_info_matrix(const RasterImage& rgb, int bins) {
  require_rgb(rgb, "mutual_info_matrix");
  if (bins < 2) throw std::invalid_argument("mutual_info_matrix: bins must be >= 2");
  const std::size_t n = rgb.pixel_count();
  auto bin_of = [bins](double v) {
    int b = static_cast<int>(v * bins);
    return b >= bins ? bins - 1 : (b < 0 ? 0 : b);
  };

  Matrix3 out{};
  std::vector<double> joint(static_cast<std::size_t>(bins) * bins);
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) {
      std::fill(joint.begin(), joint.end(), 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        const int ba = bin_of(rgb.data[i * 3 + a]);
        const int bb = bin_of(rgb.data[i * 3 + b]);
        joint[static_cast<std::size_t>(ba) * bins + bb] += 1.0;
      }
      std::vector<double> pa(bins, 0.0), pb(bins, 0.0);
      for (int i = 0; i < bins; ++i)
        for (int j = 0; j < bins; ++j) {
          const double p = joint[static_cast<std::size_t>(i) * bins + j] / static_cast<double>(n);
          joint[static_cast<std::size_t>(i) * bins + j] = p;
          pa[i] += p;
          pb[j] += p;
        }
      double mi = 0.0;
      for (int i = 0; i < bins; ++i)
        for (int j = 0; j < bins; ++j) {
          const double p = joint[static_cast<std::size_t>(i) * bins + j];
          if (p > 0.0) mi += p * std::log2(p / (pa[i] * pb[j]));
        }
      out[a][b] = out[b][a] = std::max(0.0, mi);
    }
  }
  return out;
}

ChannelCorrelation channel_correlation(const RasterImage& rgb, int mi_bins) {
  ChannelCorrelation cc;
  cc.pearson = pearson_matrix(rgb, &cc.pearson_defined);
  cc.mutual_info = mutual_info_matrix(rgb, mi_bins);

  double ps = 0.0;
  int pn = 0;
  double ms = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      if (cc.pearson_defined[a][b]) {
        ps += cc.pearson[a][b];
        ++pn;
      }
      ms += cc.mutual_info[a][b];
    }
  }
  cc.off_diag_pearson_defined = pn > 0;
  cc.off_diag_mean_pearson = pn ? ps / pn : 0.0;
  cc.off_diag_mean_mi = ms / 3.0;
  return cc;
}

std::pair<double, double> correlation_separation(
    const std::vector<ChannelCorrelation>& genuine,
    const std::vector<ChannelCorrelation>& spoof) {
  if (genuine.empty() || spoof.empty())
    throw std::invalid_argument("correlation_separation: empty class list");
  auto class_means = [](const std::vector<ChannelCorrelation>& v) {
    double p = 0.0, m = 0.0;
    for (const auto& cc : v) {
      p += cc.off_diag_mean_pearson;
      m += cc.off_diag_mean_mi;
    }
    const double n = static_cast<double>(v.size());
    return std::pair<double, double>(p / n, m / n);
  };
  const auto [gp, gm] = class_means(genuine);
  const auto [sp, sm] = class_means(spoof);
  return {gp - sp, gm - sm};
}

SpecularReport specular_highlight_ratio(const RasterImage& rgb, double intensity_thresh,
                                        int texture_window, double texture_thresh) {
  require_rgb(rgb, "specular_highlight_ratio");
  if (texture_window < 3 || texture_window % 2 == 0)
    throw std::invalid_argument("specular_highlight_ratio: texture_window must be odd and >= 3");

  const RasterImage gray = to_grayscale(rgb);
  const int w = rgb.width, h = rgb.height;
  const int half = texture_window / 2;

  SpecularReport rep;
  rep.width = w;
  rep.height = h;
  rep.highlight_mask.assign(rgb.pixel_count(), 0);

  std::size_t lit = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double mn = std::min({rgb.at(x, y, 0), rgb.at(x, y, 1), rgb.at(x, y, 2)});
      if (mn < intensity_thresh) continue;
      const int x0 = std::max(0, x - half), x1 = std::min(w - 1, x + half);
      const int y0 = std::max(0, y - half), y1 = std::min(h - 1, y + half);
      double sum = 0.0, sumsq = 0.0;
      int cnt = 0;
      for (int yy = y0; yy <= y1; ++yy)
        for (int xx = x0; xx <= x1; ++xx) {
          const double v = gray.at(xx, yy);
          sum += v;
          sumsq += v * v;
          ++cnt;
        }
      const double m = sum / cnt;
      const double var = std::max(0.0, sumsq / cnt - m * m);
      if (std::sqrt(var) < texture_thresh) {
        rep.highlight_mask[static_cast<std::size_t>(y) * w + x] = 1;
        ++lit;
      }
    }
  }
  rep.shr = static_cast<double>(lit) / static_cast<double>(rgb.pixel_count());

  // 8-connected components over the mask
  std::vector<std::uint8_t> seen(rep.highlight_mask.size(), 0);
  std::vector<double> sizes;
  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * w + x;
      if (!rep.highlight_mask[i] || seen[i]) continue;
      std::size_t size = 0;
      stack.clear();
      stack.emplace_back(x, y);
      seen[i] = 1;
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++size;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
            if (rep.highlight_mask[j] && !seen[j]) {
              seen[j] = 1;
              stack.emplace_back(nx, ny);
            }
          }
      }
      sizes.push_back(static_cast<double>(size));
    }
  }
  rep.component_count = static_cast<int>(sizes.size());
  if (!sizes.empty()) {
    const double m = mean_of(sizes);
    rep.component_size_cv = m > 0.0 ? std::sqrt(population_variance(sizes)) / m : 0.0;
  }
  return rep;
}

}  // namespace fnfpad
