#pragma once

#include <filesystem>

#include "mavidh/image.hpp"

namespace mavidh::io {

/// Loads a PNG or JPEG as 8-bit grayscale. 16-bit PNGs are rescaled to
/// 8-bit; color inputs are converted to luminance at load.
GrayImage load_gray(const std::filesystem::path& path);

/// Loads a mask from PNG or PGM; any nonzero pixel becomes 1.
LungMask load_mask(const std::filesystem::path& path);

/// 8-bit grayscale PNG with fixed encoder settings (bit-reproducible).
void save_png(const GrayImage& img, const std::filesystem::path& path);

/// Mask writers: foreground stored as 255. Format picked by extension
/// in save_mask (.pgm -> PGM, anything else -> PNG).
void save_mask_png(const LungMask& mask, const std::filesystem::path& path);
void save_mask_pgm(const LungMask& mask, const std::filesystem::path& path);
void save_mask(const LungMask& mask, const std::filesystem::path& path);

}  // namespace mavidh::io
