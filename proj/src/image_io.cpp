#include "mavidh/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

namespace mavidh::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
    FilePtr f(std::fopen(path.string().c_str(), mode));
    if (!f) throw_error(errc::io, "cannot open " + path.string());
    return f;
}

GrayImage load_png_gray(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");

    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw_error(errc::io, "libpng initialization failed");
    }

    std::vector<png_bytep> row_ptrs;
    GrayImage img;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw_error(errc::io, "failed to decode PNG " + path.string());
    }

    png_init_io(png, f.get());
    png_read_info(png, info);

    png_set_palette_to_rgb(png);
    png_set_expand_gray_1_2_4_to_8(png);
    png_set_scale_16(png);
    png_set_strip_alpha(png);
    // integer Rec.601 luma for color inputs
    if (png_get_color_type(png, info) & PNG_COLOR_MASK_COLOR)
        png_set_rgb_to_gray_fixed(png, 1, 29900, 58700);
    png_read_update_info(png, info);

    img.width = static_cast<int>(png_get_image_width(png, info));
    img.height = static_cast<int>(png_get_image_height(png, info));
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);

    row_ptrs.resize(img.height);
    for (int y = 0; y < img.height; ++y)
        row_ptrs[y] = img.pixels.data() + static_cast<std::size_t>(y) * img.width;
    png_read_image(png, row_ptrs.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

struct JpegErrorMgr {
    jpeg_error_mgr base;
    jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* mgr = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    longjmp(mgr->jump, 1);
}

GrayImage load_jpeg_gray(const std::filesystem::path& path) {
    FilePtr f = open_file(path, "rb");

    jpeg_decompress_struct cinfo{};
    JpegErrorMgr err{};
    cinfo.err = jpeg_std_error(&err.base);
    err.base.error_exit = jpeg_error_exit;
    if (setjmp(err.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw_error(errc::io, "failed to decode JPEG " + path.string());
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f.get());
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = JCS_GRAYSCALE;
    jpeg_start_decompress(&cinfo);

    GrayImage img;
    img.width = static_cast<int>(cinfo.output_width);
    img.height = static_cast<int>(cinfo.output_height);
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = img.pixels.data() + static_cast<std::size_t>(cinfo.output_scanline) * img.width;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);
    return img;
}

GrayImage load_pgm_gray(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(errc::io, "cannot open " + path.string());

    std::string magic;
    in >> magic;
    if (magic != "P5" && magic != "P2")
        throw_error(errc::io, "unsupported PGM magic in " + path.string());

    auto next_token = [&in, &path]() {
        std::string tok;
        while (in >> tok) {
            if (tok[0] == '#') {
                std::string rest;
                std::getline(in, rest);
                continue;
            }
            return tok;
        }
        throw_error(errc::io, "truncated PGM header in " + path.string());
    };

    const int width = std::stoi(next_token());
    const int height = std::stoi(next_token());
    const int maxval = std::stoi(next_token());
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535)
        throw_error(errc::io, "invalid PGM header in " + path.string());

    GrayImage img = make_image(width, height);
    const std::size_t count = img.pixels.size();
    if (magic == "P2") {
        for (std::size_t i = 0; i < count; ++i) {
            long v = std::stol(next_token());
            img.pixels[i] = static_cast<std::uint8_t>(v * 255 / maxval);
        }
    } else {
        in.get();  // single whitespace after maxval
        if (maxval < 256) {
            in.read(reinterpret_cast<char*>(img.pixels.data()), static_cast<std::streamsize>(count));
        } else {
            std::vector<std::uint8_t> raw(count * 2);
            in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
            for (std::size_t i = 0; i < count; ++i) {
                const int v = raw[2 * i] << 8 | raw[2 * i + 1];
                img.pixels[i] = static_cast<std::uint8_t>(v * 255 / maxval);
            }
        }
        if (!in) throw_error(errc::io, "truncated PGM payload in " + path.string());
    }
    return img;
}

enum class Codec { png, jpeg, pgm };

Codec sniff(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_error(errc::io, "cannot open " + path.string());
    unsigned char magic[8] = {};
    in.read(reinterpret_cast<char*>(magic), sizeof magic);
    static const unsigned char png_sig[8] = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};
    if (std::memcmp(magic, png_sig, 8) == 0) return Codec::png;
    if (magic[0] == 0xff && magic[1] == 0xd8) return Codec::jpeg;
    if (magic[0] == 'P' && (magic[1] == '5' || magic[1] == '2')) return Codec::pgm;
    throw_error(errc::io, "unsupported image format: " + path.string());
}

}  // namespace

GrayImage load_gray(const std::filesystem::path& path) {
    switch (sniff(path)) {
        case Codec::png: return load_png_gray(path);
        case Codec::jpeg: return load_jpeg_gray(path);
        case Codec::pgm: return load_pgm_gray(path);
    }
    throw_error(errc::io, "unreachable");
}

LungMask load_mask(const std::filesystem::path& path) {
    const GrayImage img = load_gray(path);
    LungMask mask{img.width, img.height, std::vector<std::uint8_t>(img.pixels.size())};
    for (std::size_t i = 0; i < img.pixels.size(); ++i) mask.bits[i] = img.pixels[i] ? 1 : 0;
    return mask;
}

void save_png(const GrayImage& img, const std::filesystem::path& path) {
    check_image(img);
    FilePtr f = open_file(path, "wb");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw_error(errc::io, "libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw_error(errc::io, "failed to encode PNG " + path.string());
    }

    png_init_io(png, f.get());
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width),
                 static_cast<png_uint_32>(img.height), 8, PNG_COLOR_TYPE_GRAY,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int y = 0; y < img.height; ++y)
        png_write_row(png, const_cast<png_bytep>(img.pixels.data() + static_cast<std::size_t>(y) * img.width));
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

void save_mask_png(const LungMask& mask, const std::filesystem::path& path) {
    check_mask(mask);
    GrayImage img{mask.width, mask.height, std::vector<std::uint8_t>(mask.bits.size())};
    for (std::size_t i = 0; i < mask.bits.size(); ++i) img.pixels[i] = mask.bits[i] ? 255 : 0;
    save_png(img, path);
}

void save_mask_pgm(const LungMask& mask, const std::filesystem::path& path) {
    check_mask(mask);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw_error(errc::io, "cannot open " + path.string());
    out << "P5\n" << mask.width << " " << mask.height << "\n255\n";
    std::vector<std::uint8_t> row(mask.bits.size());
    for (std::size_t i = 0; i < mask.bits.size(); ++i) row[i] = mask.bits[i] ? 255 : 0;
    out.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
    if (!out) throw_error(errc::io, "failed to write " + path.string());
}

void save_mask(const LungMask& mask, const std::filesystem::path& path) {
    if (path.extension() == ".pgm")
        save_mask_pgm(mask, path);
    else
        save_mask_png(mask, path);
}

}  // namespace mavidh::io
