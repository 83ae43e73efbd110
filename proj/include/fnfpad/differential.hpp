#pragma once

#include "fnfpad/fft.hpp"
#include "fnfpad/illumcues.hpp"
#include "fnfpad/image.hpp"

namespace fnfpad {

struct AlignResult {
  int dx = 0;
  int dy = 0;
  double peak = 0.0;  // normalized phase-correlation peak
  bool ok = false;    // false when the peak is below 0.05
};

/// Integer translation of nonflash relative to flash via phase correlation,
/// searched within +-max_shift. align_pair(I, circshift(I, d)) == d.
AlignResult align_pair(const RasterImage& flash, const RasterImage& nonflash,
                       int max_shift = 16);

struct DifferentialResult {
  ScalarField diff;             // flash - gain * shifted nonflash, overlap only
  double energy = 0.0;          // mean of diff^2
  double structure = 0.0;       // directional coherence of |diff|
  bool structure_valid = false; // false when the overlap is flat or too small
  double gain = 1.0;
};

/// Median-gain-normalized difference over the overlap after applying the
/// integer shift to nonflash.
DifferentialResult differential_image(const RasterImage& flash, const RasterImage& nonflash,
                                      int dx, int dy);

/// Mean absolute second difference of intensity profiles taken along the
/// ridge-normal direction of each valid block; lower = smoother transitions.
double sss_smoothness(const RasterImage& gray, const BlockGrid& ocl);

/// Coefficient of variation of per-block ridge amplitude (95th - 5th
/// intensity percentile) over valid blocks; needs >= 4 valid blocks.
double ridge_amplitude_cv(const RasterImage& gray, const BlockGrid& ocl);

/// count_flash * size_cv_flash * max(0, shr_flash - shr_nonflash).
double highlight_irregularity(const SpecularReport& spec_flash,
                              const SpecularReport& spec_nonflash);

}  // namespace fnfpad
