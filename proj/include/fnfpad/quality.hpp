#pragma once

#include "fnfpad/image.hpp"

namespace fnfpad {

struct OclBlockResult {
  double value = 0.0;        // 1 - lambda_min/lambda_max, in [0,1]
  bool valid = false;        // false for flat blocks (trace below the guard)
  double orientation = 0.0;  // ridge-normal angle (dominant gradient), radians
};

/// Directional coherence of the gradient covariance over one block.
/// Blocks flatter than 1e-8 * pixel_count come back invalid with value 0.
OclBlockResult ocl_block(const RasterImage& block);

// Same rule on a raw buffer; shared with the differential module.
OclBlockResult directional_coherence(const double* data, int width, int height);

/// Ridge-valley clarity of a block whose ridge-normal direction is
/// `orientation` (from ocl_block). Rotates ridges vertical, column-averages
/// into a profile, splits ridge/valley at the profile min/max midpoint and
/// scores the misclassified pixel fractions: 1 - (alpha+beta)/2.
double lcs_block(const RasterImage& block, double orientation);

/// Mean over non-overlapping patches of the population standard deviation
/// of patch intensities.
double local_contrast(const RasterImage& gray, int patch_size = 16);

/// Mean Sobel gradient magnitude over pixels above the 75th-percentile
/// magnitude; 0 when no pixel qualifies.
double edge_clarity(const RasterImage& gray);

/// Variance of the 3x3 Laplacian response.
double sharpness(const RasterImage& gray);

/// Blockwise OCL map with validity flags and per-block orientations.
BlockGrid ocl_map(const RasterImage& gray, int block_size);

/// Blockwise LCS map; per-block orientation comes from ocl_block on the
/// same block, invalid blocks read 0.
BlockGrid lcs_map(const RasterImage& gray, int block_size);

struct QualityConfig {
  int ocl_block_size = 16;
  int lcs_block_size = 32;
  int patch_size = 16;
};

struct QualityReport {
  BlockGrid ocl;
  double ocl_mean = 0.0;  // mean over valid blocks
  BlockGrid lcs;
  double lcs_mean = 0.0;
  double local_contrast = 0.0;
  double edge_clarity = 0.0;
  double sharpness = 0.0;
};

QualityReport compute_quality(const RasterImage& gray, const QualityConfig& cfg = {});

}  // namespace fnfpad
