#include "fnfpad/differential.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "fnfpad/quality.hpp"

namespace fnfpad {

AlignResult align_pair(const RasterImage& flash, const RasterImage& nonflash, int max_shift) {
  if (flash.channels != 1 || nonflash.channels != 1)
    throw std::invalid_argument("align_pair: grayscale inputs required");
  if (flash.width != nonflash.width || flash.height != nonflash.height)
    throw std::invalid_argument("align_pair: images must have identical dimensions");
  if (max_shift < 0 || 2 * max_shift >= std::min(flash.width, flash.height))
    throw std::invalid_argument("align_pair: max_shift out of range");

  const int w = flash.width, h = flash.height;
  const std::size_t n = flash.pixel_count();

  auto spectrum = [&](const RasterImage& img) {
    double mean = 0.0;
    for (double v : img.data) mean += v;
    mean /= static_cast<double>(n);
    std::vector<std::complex<double>> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::complex<double>(img.data[i] - mean, 0.0);
    fft2_inplace(f, w, h, false);
    return f;
  };
  std::vector<std::complex<double>> f1 = spectrum(flash);
  const std::vector<std::complex<double>> f2 = spectrum(nonflash);

  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> cross = f1[i] * std::conj(f2[i]);
    const double mag = std::abs(cross);
    f1[i] = mag > 1e-15 ? cross / mag : std::complex<double>(0.0, 0.0);
  }
  fft2_inplace(f1, w, h, true);

  // peak at position p corresponds to shift d = -p (mod size)
  AlignResult best;
  double best_val = -1.0;
  for (int dy = -max_shift; dy <= max_shift; ++dy) {
    for (int dx = -max_shift; dx <= max_shift; ++dx) {
      const int px = ((-dx) % w + w) % w;
      const int py = ((-dy) % h + h) % h;
      const double v = f1[static_cast<std::size_t>(py) * w + px].real();
      if (v > best_val) {
        best_val = v;
        best.dx = dx;
        best.dy = dy;
      }
    }
  }
  best.peak = best_val;
  best.ok = best_val >= 0.05;
  return best;
}

DifferentialResult differential_image(const RasterImage& flash, const RasterImage& nonflash,
                                      int dx, int dy) {
  if (flash.channels != 1 || nonflash.channels != 1)
    throw std::invalid_argument("differential_image: grayscale inputs required");
  if (flash.width != nonflash.width || flash.height != nonflash.height)
    throw std::invalid_argument("differential_image: images must have identical dimensions");

  const int w = flash.width, h = flash.height;
  // flash(x,y) pairs with nonflash(x+dx, y+dy)
  const int x0 = std::max(0, -dx), x1 = std::min(w, w - dx);
  const int y0 = std::max(0, -dy), y1 = std::min(h, h - dy);
  if (x0 >= x1 || y0 >= y1) throw std::runtime_error("differential_image: empty overlap");

  const int ow = x1 - x0, oh = y1 - y0;
  std::vector<double> fv, nv;
  fv.reserve(static_cast<std::size_t>(ow) * oh);
  nv.reserve(static_cast<std::size_t>(ow) * oh);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) {
      fv.push_back(flash.at(x, y));
      nv.push_back(nonflash.at(x + dx, y + dy));
    }

  const double med_f = median_of(fv);
  const double med_n = median_of(nv);
  const double gain = std::abs(med_n) > 1e-12 ? med_f / med_n : 1.0;

  DifferentialResult res;
  res.gain = gain;
  res.diff = ScalarField(ow, oh);
  double energy = 0.0;
  for (std::size_t i = 0; i < fv.size(); ++i) {
    const double d = fv[i] - gain * nv[i];
    res.diff.values[i] = d;
    energy += d * d;
  }
  res.energy = energy / static_cast<double>(fv.size());

  if (ow >= 8 && oh >= 8) {
    std::vector<double> absd(res.diff.values.size());
    for (std::size_t i = 0; i < absd.size(); ++i) absd[i] = std::abs(res.diff.values[i]);
    const OclBlockResult c = directional_coherence(absd.data(), ow, oh);
    res.structure = c.value;
    res.structure_valid = c.valid;
  }
  return res;
}

double sss_smoothness(const RasterImage& gray, const BlockGrid& ocl) {
  if (ocl.orientation.empty())
    throw std::invalid_argument("sss_smoothness: OCL map without orientations");
  double acc = 0.0;
  std::size_t blocks = 0;
  for (int by = 0; by < ocl.rows; ++by) {
    for (int bx = 0; bx < ocl.cols; ++bx) {
      const std::size_t i = static_cast<std::size_t>(by) * ocl.cols + bx;
      if (!ocl.valid.empty() && !ocl.valid[i]) continue;
      const RasterImage blk = extract_block(gray, ocl, bx, by);
      const RasterImage rot = rotate_nearest(blk, ocl.orientation[i]);
      // rows of the rotated block run along the ridge-normal
      double s = 0.0;
      std::size_t cnt = 0;
      for (int y = 0; y < rot.height; ++y)
        for (int x = 1; x < rot.width - 1; ++x) {
          s += std::abs(rot.at(x - 1, y) - 2.0 * rot.at(x, y) + rot.at(x + 1, y));
          ++cnt;
        }
      acc += s / static_cast<double>(cnt);
      ++blocks;
    }
  }
  if (blocks == 0) throw std::runtime_error("sss_smoothness: no valid blocks");
  return acc / static_cast<double>(blocks);
}

double ridge_amplitude_cv(const RasterImage& gray, const BlockGrid& ocl) {
  std::vector<double> amplitudes;
  for (int by = 0; by < ocl.rows; ++by) {
    for (int bx = 0; bx < ocl.cols; ++bx) {
      const std::size_t i = static_cast<std::size_t>(by) * ocl.cols + bx;
      if (!ocl.valid.empty() && !ocl.valid[i]) continue;
      const RasterImage blk = extract_block(gray, ocl, bx, by);
      amplitudes.push_back(percentile_of(blk.data, 95.0) - percentile_of(blk.data, 5.0));
    }
  }
  if (amplitudes.size() < 4)
    throw std::runtime_error("ridge_amplitude_cv: fewer than 4 valid blocks");
  const double m = mean_of(amplitudes);
  if (m < 1e-12) return 0.0;
  return std::sqrt(population_variance(amplitudes)) / m;
}

double highlight_irregularity(const SpecularReport& spec_flash,
                              const SpecularReport& spec_nonflash) {
  return static_cast<double>(spec_flash.component_count) * spec_flash.component_size_cv *
         std::max(0.0, spec_flash.shr - spec_nonflash.shr);
}

}  // namespace fnfpad
