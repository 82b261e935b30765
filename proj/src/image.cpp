#include "mavidh/image.hpp"

namespace mavidh {

void check_image(const GrayImage& img) {
    if (img.width < 1 || img.height < 1)
        throw_error(errc::invalid_input, "zero-area image");
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
        throw_error(errc::invalid_input, "image pixel count does not match dimensions");
}

void check_mask(const LungMask& mask) {
    if (mask.width < 1 || mask.height < 1)
        throw_error(errc::invalid_input, "zero-area mask");
    if (mask.bits.size() != static_cast<std::size_t>(mask.width) * mask.height)
        throw_error(errc::invalid_input, "mask bit count does not match dimensions");
    for (auto b : mask.bits)
        if (b > 1) throw_error(errc::invalid_input, "mask values must be 0 or 1");
}

void check_prob_map(const ProbMap& map) {
    if (map.width < 1 || map.height < 1)
        throw_error(errc::invalid_input, "zero-area probability map");
    if (map.values.size() != static_cast<std::size_t>(map.width) * map.height)
        throw_error(errc::invalid_input, "probability map size does not match dimensions");
    for (auto v : map.values)
        if (!(v >= 0.0f && v <= 1.0f))
            throw_error(errc::invalid_input, "probability outside [0,1]");
}

}  // namespace mavidh
