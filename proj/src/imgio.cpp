#include "statedge/imgio.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <memory>
#include <vector>

namespace statedge {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

int quantize(double v) {
    return std::clamp(static_cast<int>(std::lround(v)), 0, 255);
}

bool has_suffix(const std::string& s, const char* suffix) {
    const size_t n = std::strlen(suffix);
    if (s.size() < n) return false;
    std::string tail = s.substr(s.size() - n);
    std::transform(tail.begin(), tail.end(), tail.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return tail == suffix;
}

// ---- PNG ----

RasterImage read_png(std::FILE* fp, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "corrupt PNG");
    }
    png_init_io(png, fp);
    png_read_info(png, info);

    const png_uint_32 w = png_get_image_width(png, info);
    const png_uint_32 h = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int channels = png_get_channels(png, info);
    if (channels != 1 && channels != 3) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "unsupported PNG channel count");
    }

    std::vector<png_byte> row(static_cast<size_t>(w) * channels);
    RasterImage img(static_cast<int>(w), static_cast<int>(h), channels);
    for (png_uint_32 y = 0; y < h; ++y) {
        png_read_row(png, row.data(), nullptr);
        for (png_uint_32 x = 0; x < w; ++x) {
            for (int c = 0; c < channels; ++c) {
                img.at(static_cast<int>(x), static_cast<int>(y), c) = row[x * channels + c];
            }
        }
    }
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return img;
}

void write_png(const std::string& path, const RasterImage& image) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) fail(path, "cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        fail(path, "libpng init failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        fail(path, "PNG write failed");
    }
    png_init_io(png, fp.get());
    const int color = image.channels() == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, image.width(), image.height(), 8, color,
                 PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);

    std::vector<png_byte> row(static_cast<size_t>(image.width()) * image.channels());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            for (int c = 0; c < image.channels(); ++c) {
                row[static_cast<size_t>(x) * image.channels() + c] =
                    static_cast<png_byte>(quantize(image.at(x, y, c)));
            }
        }
        png_write_row(png, row.data());
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

// ---- PGM / PPM (binary, 8-bit) ----

int read_pnm_token(std::FILE* fp) {
    int c;
    for (;;) {
        c = std::fgetc(fp);
        if (c == '#') {
            while (c != '\n' && c != EOF) c = std::fgetc(fp);
        } else if (!std::isspace(c)) {
            break;
        }
    }
    int value = 0;
    bool any = false;
    while (c != EOF && std::isdigit(c)) {
        value = value * 10 + (c - '0');
        any = true;
        c = std::fgetc(fp);
    }
    if (!any) return -1;
    return value;
}

RasterImage read_pnm(std::FILE* fp, const std::string& path, int channels) {
    const int w = read_pnm_token(fp);
    const int h = read_pnm_token(fp);
    const int maxval = read_pnm_token(fp);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 255) fail(path, "bad PNM header");

    std::vector<unsigned char> row(static_cast<size_t>(w) * channels);
    RasterImage img(w, h, channels);
    for (int y = 0; y < h; ++y) {
        if (std::fread(row.data(), 1, row.size(), fp) != row.size()) {
            fail(path, "truncated PNM data");
        }
        for (int x = 0; x < w; ++x) {
            for (int c = 0; c < channels; ++c) {
                img.at(x, y, c) = row[static_cast<size_t>(x) * channels + c];
            }
        }
    }
    return img;
}

void write_pnm(const std::string& path, const RasterImage& image) {
    FilePtr fp(std::fopen(path.c_str(), "wb"));
    if (!fp) fail(path, "cannot open for writing");
    std::fprintf(fp.get(), "P%c\n%d %d\n255\n", image.channels() == 1 ? '5' : '6',
                 image.width(), image.height());
    std::vector<unsigned char> row(static_cast<size_t>(image.width()) * image.channels());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            for (int c = 0; c < image.channels(); ++c) {
                row[static_cast<size_t>(x) * image.channels() + c] =
                    static_cast<unsigned char>(quantize(image.at(x, y, c)));
            }
        }
        if (std::fwrite(row.data(), 1, row.size(), fp.get()) != row.size()) {
            fail(path, "short write");
        }
    }
}

}  // namespace

RasterImage read_image(const std::string& path) {
    FilePtr fp(std::fopen(path.c_str(), "rb"));
    if (!fp) fail(path, "cannot open");

    unsigned char magic[2] = {0, 0};
    if (std::fread(magic, 1, 2, fp.get()) != 2) fail(path, "empty or unreadable file");

    if (magic[0] == 0x89 && magic[1] == 'P') {
        std::rewind(fp.get());
        return read_png(fp.get(), path);
    }
    if (magic[0] == 'P' && magic[1] == '5') return read_pnm(fp.get(), path, 1);
    if (magic[0] == 'P' && magic[1] == '6') return read_pnm(fp.get(), path, 3);
    fail(path, "unrecognized image format (PNG, binary PGM/PPM supported)");
}

void write_image(const std::string& path, const RasterImage& image) {
    if (has_suffix(path, ".pgm") || has_suffix(path, ".ppm")) {
        write_pnm(path, image);
    } else {
        write_png(path, image);
    }
}

void write_edge_map(const std::string& path, const EdgeMap& map) {
    RasterImage img(map.width(), map.height(), 1);
    for (int y = 0; y < map.height(); ++y) {
        for (int x = 0; x < map.width(); ++x) {
            img.at(x, y) = map.get(x, y) ? 255.0 : 0.0;
        }
    }
    write_image(path, img);
}

EdgeMap read_edge_map(const std::string& path) {
    RasterImage img = read_image(path);
    EdgeMap m(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            double v = 0.0;
            for (int c = 0; c < img.channels(); ++c) v += img.at(x, y, c);
            m.set(x, y, v > 0.0);
        }
    }
    return m;
}

}  // namespace statedge
