#pragma once

#include <complex>
#include <vector>

#include "fnfpad/image.hpp"

namespace fnfpad {

/// Unbounded scalar field (spectra, difference images). Same layout as
/// RasterImage but without the [0,1] contract.
struct ScalarField {
  int width = 0;
  int height = 0;
  std::vector<double> values;

  ScalarField() = default;
  ScalarField(int w, int h, double fill = 0.0)
      : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

  double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
  double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

/// In-place DFT of arbitrary length: radix-2 for powers of two, Bluestein
/// otherwise. Forward is unnormalized; inverse divides by n.
void fft_inplace(std::vector<std::complex<double>>& v, bool inverse);

/// Row-column 2-D DFT over a w*h row-major buffer.
void fft2_inplace(std::vector<std::complex<double>>& field, int w, int h, bool inverse);

/// 2-D DFT of the mean-subtracted image; returns log(1+|F|) with the DC
/// bin shifted to (w/2, h/2).
ScalarField fft2_logmag(const RasterImage& gray);

/// Mean of field values per integer-radius bin around the center (w/2, h/2).
/// n_bins equal-width bins cover radii [0, min(w,h)/2); larger radii are
/// dropped, empty bins read 0.
std::vector<double> radial_spectrum(const ScalarField& logmag, int n_bins);

}  // namespace fnfpad
