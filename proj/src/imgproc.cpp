#include "mavidh/imgproc.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <vector>

namespace mavidh::imgproc {

namespace {

std::array<std::int64_t, 256> histogram(const GrayImage& img) {
    std::array<std::int64_t, 256> hist{};
    for (auto p : img.pixels) ++hist[p];
    return hist;
}

inline std::uint8_t round_u8(double v) {
    long r = std::lround(v);
    return static_cast<std::uint8_t>(std::clamp(r, 0L, 255L));
}

}  // namespace

GrayImage equalize_hist(const GrayImage& img) {
    check_image(img);
    const auto hist = histogram(img);
    const std::int64_t n = static_cast<std::int64_t>(img.size());

    std::array<std::int64_t, 256> cdf{};
    std::int64_t acc = 0;
    for (int v = 0; v < 256; ++v) {
        acc += hist[v];
        cdf[v] = acc;
    }
    std::int64_t cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
        if (hist[v] > 0) {
            cdf_min = cdf[v];
            break;
        }
    }
    if (cdf_min == n) return img;  // single-bin histogram, nothing to spread

    std::array<std::uint8_t, 256> lut{};
    const double denom = static_cast<double>(n - cdf_min);
    for (int v = 0; v < 256; ++v)
        lut[v] = round_u8(255.0 * (cdf[v] - cdf_min) / denom);

    GrayImage out = img;
    for (auto& p : out.pixels) p = lut[p];
    return out;
}

GrayImage clahe(const GrayImage& img, const ClaheParams& params) {
    check_image(img);
    if (params.tile_rows < 1 || params.tile_cols < 1)
        throw_error(errc::invalid_input, "CLAHE tile grid must be at least 1x1");
    if (params.clip_factor < 1.0)
        throw_error(errc::invalid_input, "CLAHE clip factor must be >= 1.0");

    const int rows = params.tile_rows, cols = params.tile_cols;
    const int tile_w = (img.width + cols - 1) / cols;
    const int tile_h = (img.height + rows - 1) / rows;
    const int padded_w = tile_w * cols;
    const int padded_h = tile_h * rows;
    const std::int64_t tile_pixels = static_cast<std::int64_t>(tile_w) * tile_h;

    // mirror reflection on the right/bottom edge; pad < tile <= dim
    auto mirror = [](int c, int limit) { return c < limit ? c : 2 * limit - 1 - c; };

    const std::int64_t clip = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(params.clip_factor * static_cast<double>(tile_pixels) / 256.0));

    // one 256-entry mapping per tile
    std::vector<std::array<std::uint8_t, 256>> luts(static_cast<std::size_t>(rows) * cols);
    for (int tr = 0; tr < rows; ++tr) {
        for (int tc = 0; tc < cols; ++tc) {
            std::array<std::int64_t, 256> hist{};
            for (int y = tr * tile_h; y < (tr + 1) * tile_h; ++y) {
                const int sy = mirror(y, img.height);
                for (int x = tc * tile_w; x < (tc + 1) * tile_w; ++x)
                    ++hist[img.at(mirror(x, img.width), sy)];
            }

            std::int64_t excess = 0;
            for (auto& h : hist) {
                if (h > clip) {
                    excess += h - clip;
                    h = clip;
                }
            }
            const std::int64_t per_bin = excess / 256;
            const std::int64_t remainder = excess % 256;
            for (int v = 0; v < 256; ++v) hist[v] += per_bin + (v < remainder ? 1 : 0);

            auto& lut = luts[static_cast<std::size_t>(tr) * cols + tc];
            std::int64_t cdf = 0;
            for (int v = 0; v < 256; ++v) {
                cdf += hist[v];
                lut[v] = round_u8(255.0 * static_cast<double>(cdf) / static_cast<double>(tile_pixels));
            }
        }
    }

    GrayImage out = img;
    for (int y = 0; y < img.height; ++y) {
        const double gy = (y + 0.5) / tile_h - 0.5;
        int r0 = static_cast<int>(std::floor(gy));
        double fy = gy - r0;
        if (r0 < 0) { r0 = 0; fy = 0.0; }
        if (r0 >= rows - 1) { r0 = rows - 1; fy = 0.0; }
        const int r1 = std::min(r0 + 1, rows - 1);

        for (int x = 0; x < img.width; ++x) {
            const double gx = (x + 0.5) / tile_w - 0.5;
            int c0 = static_cast<int>(std::floor(gx));
            double fx = gx - c0;
            if (c0 < 0) { c0 = 0; fx = 0.0; }
            if (c0 >= cols - 1) { c0 = cols - 1; fx = 0.0; }
            const int c1 = std::min(c0 + 1, cols - 1);

            const std::uint8_t v = img.at(x, y);
            const double m00 = luts[static_cast<std::size_t>(r0) * cols + c0][v];
            const double m01 = luts[static_cast<std::size_t>(r0) * cols + c1][v];
            const double m10 = luts[static_cast<std::size_t>(r1) * cols + c0][v];
            const double m11 = luts[static_cast<std::size_t>(r1) * cols + c1][v];
            const double top = m00 * (1.0 - fx) + m01 * fx;
            const double bottom = m10 * (1.0 - fx) + m11 * fx;
            out.at(x, y) = round_u8(top * (1.0 - fy) + bottom * fy);
        }
    }
    return out;
}

LungMask threshold_mask(const ProbMap& prob_map, double threshold) {
    check_prob_map(prob_map);
    LungMask mask{prob_map.width, prob_map.height,
                  std::vector<std::uint8_t>(prob_map.values.size())};
    for (std::size_t i = 0; i < prob_map.values.size(); ++i)
        mask.bits[i] = prob_map.values[i] >= threshold ? 1 : 0;
    return mask;
}

namespace {

std::vector<std::pair<int, int>> disk_offsets(int radius) {
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -radius; dy <= radius; ++dy)
        for (int dx = -radius; dx <= radius; ++dx)
            if (dx * dx + dy * dy <= radius * radius) offsets.emplace_back(dx, dy);
    return offsets;
}

}  // namespace

LungMask morph_close(const LungMask& mask, int radius) {
    check_mask(mask);
    if (radius < 1) throw_error(errc::invalid_input, "closing radius must be >= 1");

    const auto se = disk_offsets(radius);
    const int w = mask.width, h = mask.height;

    LungMask dilated = make_mask(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t hit = 0;
            for (auto [dx, dy] : se) {
                const int nx = x + dx, ny = y + dy;
                if (nx >= 0 && nx < w && ny >= 0 && ny < h && mask.at(nx, ny)) {
                    hit = 1;
                    break;
                }
            }
            dilated.at(x, y) = hit;
        }
    }

    LungMask closed = make_mask(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t all = 1;
            for (auto [dx, dy] : se) {
                const int nx = x + dx, ny = y + dy;
                if (nx >= 0 && nx < w && ny >= 0 && ny < h && !dilated.at(nx, ny)) {
                    all = 0;
                    break;
                }
            }
            closed.at(x, y) = all;
        }
    }
    return closed;
}

LungMask fill_holes(const LungMask& mask) {
    check_mask(mask);
    const int w = mask.width, h = mask.height;

    std::vector<std::uint8_t> reached(mask.bits.size(), 0);
    std::deque<std::pair<int, int>> queue;
    auto push_if_bg = [&](int x, int y) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!mask.bits[i] && !reached[i]) {
            reached[i] = 1;
            queue.emplace_back(x, y);
        }
    };
    for (int x = 0; x < w; ++x) {
        push_if_bg(x, 0);
        push_if_bg(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push_if_bg(0, y);
        push_if_bg(w - 1, y);
    }
    while (!queue.empty()) {
        auto [x, y] = queue.front();
        queue.pop_front();
        if (x > 0) push_if_bg(x - 1, y);
        if (x < w - 1) push_if_bg(x + 1, y);
        if (y > 0) push_if_bg(x, y - 1);
        if (y < h - 1) push_if_bg(x, y + 1);
    }

    LungMask out = mask;
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        if (!out.bits[i] && !reached[i]) out.bits[i] = 1;
    return out;
}

LungMask keep_largest_components(const LungMask& mask, int k) {
    check_mask(mask);
    if (k < 0) throw_error(errc::invalid_input, "component count must be >= 0");
    const int w = mask.width, h = mask.height;

    struct Component {
        std::size_t size = 0;
        std::size_t first_index = 0;  // top-left raster index, tie-break key
        int label = 0;
    };

    std::vector<int> labels(mask.bits.size(), 0);
    std::vector<Component> components;
    int next_label = 0;
    for (std::size_t start = 0; start < mask.bits.size(); ++start) {
        if (!mask.bits[start] || labels[start]) continue;
        ++next_label;
        Component comp{0, start, next_label};
        std::deque<std::size_t> queue{start};
        labels[start] = next_label;
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            ++comp.size;
            const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
            const std::array<std::pair<int, int>, 4> nbrs{{{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}};
            for (auto [nx, ny] : nbrs) {
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::size_t j = static_cast<std::size_t>(ny) * w + nx;
                if (mask.bits[j] && !labels[j]) {
                    labels[j] = next_label;
                    queue.push_back(j);
                }
            }
        }
        components.push_back(comp);
    }

    if (static_cast<int>(components.size()) <= k) return mask;

    std::sort(components.begin(), components.end(), [](const Component& a, const Component& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.first_index < b.first_index;
    });

    std::vector<std::uint8_t> keep(static_cast<std::size_t>(next_label) + 1, 0);
    for (int i = 0; i < k; ++i) keep[components[i].label] = 1;

    LungMask out = mask;
    for (std::size_t i = 0; i < out.bits.size(); ++i)
        if (out.bits[i] && !keep[labels[i]]) out.bits[i] = 0;
    return out;
}

GrayImage apply_mask_and_crop(const GrayImage& img, const LungMask& mask, int margin) {
    check_image(img);
    check_mask(mask);
    if (img.width != mask.width || img.height != mask.height)
        throw_error(errc::invalid_input, "image and mask dimensions differ");
    if (margin < 0) throw_error(errc::invalid_input, "crop margin must be >= 0");

    int x0 = img.width, y0 = img.height, x1 = -1, y1 = -1;
    for (int y = 0; y < img.height; ++y) {
        for (int x = 0; x < img.width; ++x) {
            if (!mask.at(x, y)) continue;
            x0 = std::min(x0, x);
            y0 = std::min(y0, y);
            x1 = std::max(x1, x);
            y1 = std::max(y1, y);
        }
    }
    if (x1 < 0) throw_error(errc::empty_mask, "mask has no foreground pixels");

    x0 = std::max(0, x0 - margin);
    y0 = std::max(0, y0 - margin);
    x1 = std::min(img.width - 1, x1 + margin);
    y1 = std::min(img.height - 1, y1 + margin);

    GrayImage out = make_image(x1 - x0 + 1, y1 - y0 + 1);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x)
            out.at(x - x0, y - y0) = mask.at(x, y) ? img.at(x, y) : 0;
    return out;
}

namespace {

void resize_payload(GrayImage& img) {
    img.pixels.assign(static_cast<std::size_t>(img.width) * img.height, 0);
}
void resize_payload(ProbMap& map) {
    map.values.assign(static_cast<std::size_t>(map.width) * map.height, 0.0f);
}

template <typename Raster, typename Store>
Raster resize_core(const Raster& in, int out_w, int out_h, Store store) {
    if (out_w < 1 || out_h < 1)
        throw_error(errc::invalid_input, "resize target dimensions must be positive");

    Raster out;
    out.width = out_w;
    out.height = out_h;
    resize_payload(out);

    const double sx = out_w == 1 ? 0.0 : static_cast<double>(in.width - 1) / (out_w - 1);
    const double sy = out_h == 1 ? 0.0 : static_cast<double>(in.height - 1) / (out_h - 1);

    for (int y = 0; y < out_h; ++y) {
        const double fy = y * sy;
        const int y0 = std::min(static_cast<int>(fy), in.height - 1);
        const int y1 = std::min(y0 + 1, in.height - 1);
        const double wy = fy - y0;
        for (int x = 0; x < out_w; ++x) {
            const double fx = x * sx;
            const int x0 = std::min(static_cast<int>(fx), in.width - 1);
            const int x1 = std::min(x0 + 1, in.width - 1);
            const double wx = fx - x0;
            const double top = in.at(x0, y0) * (1.0 - wx) + in.at(x1, y0) * wx;
            const double bottom = in.at(x0, y1) * (1.0 - wx) + in.at(x1, y1) * wx;
            store(out, x, y, top * (1.0 - wy) + bottom * wy);
        }
    }
    return out;
}

}  // namespace

GrayImage resize_bilinear(const GrayImage& img, int out_w, int out_h) {
    check_image(img);
    return resize_core<GrayImage>(
        img, out_w, out_h, [](GrayImage& out, int x, int y, double v) {
            out.at(x, y) = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
        });
}

ProbMap resize_bilinear(const ProbMap& map, int out_w, int out_h) {
    check_prob_map(map);
    return resize_core<ProbMap>(map, out_w, out_h, [](ProbMap& out, int x, int y, double v) {
        out.at(x, y) = static_cast<float>(std::clamp(v, 0.0, 1.0));
    });
}

double dice(const LungMask& a, const LungMask& b) {
    check_mask(a);
    check_mask(b);
    if (a.width != b.width || a.height != b.height)
        throw_error(errc::invalid_input, "mask dimensions differ");

    std::size_t inter = 0, total = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        inter += (a.bits[i] & b.bits[i]);
        total += a.bits[i] + b.bits[i];
    }
    if (total == 0) return 1.0;
    return 2.0 * static_cast<double>(inter) / static_cast<double>(total);
}

}  // namespace mavidh::imgproc
