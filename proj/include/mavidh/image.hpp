#pragma once

#include <cstdint>
#include <vector>

#include "mavidh/error.hpp"

namespace mavidh {

/// 8-bit grayscale raster, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return pixels.size(); }
    bool empty() const { return width <= 0 || height <= 0; }
};

/// Binary lung mask aligned with the image it was derived from.
/// 0 = background, 1 = lung.
struct LungMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t& at(int x, int y) { return bits[static_cast<std::size_t>(y) * width + x]; }
    std::size_t size() const { return bits.size(); }
    bool empty() const { return width <= 0 || height <= 0; }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (auto b : bits) n += (b != 0);
        return n;
    }
};

/// Per-pixel probability map in [0,1], e.g. raw segmentation output.
struct ProbMap {
    int width = 0;
    int height = 0;
    std::vector<float> values;

    float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    bool empty() const { return width <= 0 || height <= 0; }
};

inline GrayImage make_image(int width, int height, std::uint8_t fill = 0) {
    if (width < 1 || height < 1)
        throw_error(errc::invalid_input, "image dimensions must be positive");
    return GrayImage{width, height,
                     std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, fill)};
}

inline LungMask make_mask(int width, int height, std::uint8_t fill = 0) {
    if (width < 1 || height < 1)
        throw_error(errc::invalid_input, "mask dimensions must be positive");
    if (fill > 1) throw_error(errc::invalid_input, "mask values must be binary");
    return LungMask{width, height,
                    std::vector<std::uint8_t>(static_cast<std::size_t>(width) * height, fill)};
}

/// Validates the width*height == payload invariant; throws invalid_input.
void check_image(const GrayImage& img);
void check_mask(const LungMask& mask);
void check_prob_map(const ProbMap& map);

}  // namespace mavidh
