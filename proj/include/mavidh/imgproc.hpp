#pragma once

#include "mavidh/image.hpp"

namespace mavidh::imgproc {

/// CLAHE parameters. clip_factor scales the per-bin clip limit:
/// clip = max(1, floor(clip_factor * tile_pixels / 256)).
struct ClaheParams {
    int tile_rows = 8;
    int tile_cols = 8;
    double clip_factor = 2.0;
};

/// Global histogram equalization:
///   m(v) = round(255 * (cdf(v) - cdf_min) / (N - cdf_min))
/// with N the pixel count and cdf_min the smallest nonzero CDF value.
/// A single-bin histogram (constant image) is returned unchanged.
GrayImage equalize_hist(const GrayImage& img);

/// Contrast-limited adaptive histogram equalization.
///
/// Conventions (all part of the contract; the output is bit-stable):
///  - tile size = ceil(dim / grid); image mirror-padded (edge included)
///    on the right/bottom to a grid multiple
///  - per-tile 256-bin histogram, bins clipped at
///    clip = max(1, floor(clip_factor * tile_pixels / 256))
///  - clipped excess redistributed uniformly in a single pass; the
///    remainder is added one count per bin starting from bin 0
///  - per-tile mapping lut[v] = round(255 * cdf(v) / tile_pixels)
///  - every output pixel bilinearly interpolates the mappings of its
///    four nearest tile centers, clamped at the borders
GrayImage clahe(const GrayImage& img, const ClaheParams& params = {});

/// bit = 1 iff probability >= threshold.
LungMask threshold_mask(const ProbMap& prob_map, double threshold = 0.5);

/// Morphological closing (dilation then erosion) with a disk structuring
/// element of the given radius: offsets (dx,dy) with dx^2+dy^2 <= r^2.
/// Out-of-bounds pixels count as background for dilation and as
/// foreground for erosion, which keeps closing extensive and idempotent.
LungMask morph_close(const LungMask& mask, int radius = 5);

/// Flood-fills the background from all border pixels (4-connectivity);
/// background not reached is a hole and becomes foreground.
LungMask fill_holes(const LungMask& mask);

/// Retains the k largest 4-connected foreground components. Ties broken
/// by the smaller top-left raster index. Fewer than k components: no-op.
LungMask keep_largest_components(const LungMask& mask, int k = 2);

/// Zeroes pixels outside the mask, then crops to the tight bounding box
/// of the mask expanded by margin and clamped to the image bounds.
/// Throws empty_mask when the mask has no foreground.
GrayImage apply_mask_and_crop(const GrayImage& img, const LungMask& mask, int margin = 0);

/// Bilinear resize with corner-aligned sampling; rounds half-up.
GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h);
ProbMap resize_bilinear(const ProbMap& map, int out_w, int out_h);

/// Dice similarity coefficient 2|A∩B| / (|A|+|B|); both empty -> 1.0.
double dice(const LungMask& a, const LungMask& b);

}  // namespace mavidh::imgproc
