#include "lanepre/imageio.hpp"

#include <cstdio>
#include <memory>
#include <stdexcept>
#include <vector>

#include <png.h>

namespace lanepre::io {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

// The error callback stores the message on the heap (safe across
// longjmp) and jumps back to the most recent setjmp anchor.
void on_png_error(png_structp png, png_const_charp msg) {
    static_cast<std::string*>(png_get_error_ptr(png))->assign(msg);
    png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

// Pixel buffers live on the heap behind pointers that are fixed
// before any setjmp anchor, so no local object mutates between a
// setjmp and a potential longjmp.
struct RowBuffer {
    std::vector<uint8_t> bytes;
    std::vector<png_bytep> rows;

    void allocate(size_t width, size_t height) {
        bytes.resize(width * height * 3);
        rows.resize(height);
        for (size_t y = 0; y < height; ++y) rows[y] = bytes.data() + y * width * 3;
    }
};

} // namespace

FrameRgb read_png(const std::string& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) fail(path, "cannot open for reading");

    auto error_message = std::make_unique<std::string>("png read error");
    auto buffer = std::make_unique<RowBuffer>();
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, error_message.get(),
                                             on_png_error, on_png_warning);
    if (!png) fail(path, "png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "png_create_info_struct failed");
    }

    if (setjmp(png_jmpbuf(png))) {
        const std::string msg = *error_message;
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, msg);
    }

    png_init_io(png, file.get());
    png_read_info(png, info);

    const png_uint_32 width = png_get_image_width(png, info);
    const png_uint_32 height = png_get_image_height(png, info);
    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);

    // Normalize every supported layout to 8-bit RGB.
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
        png_set_expand_gray_1_2_4_to_8(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
    if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
        png_set_gray_to_rgb(png);
    png_set_strip_alpha(png);
    png_read_update_info(png, info);

    if (png_get_rowbytes(png, info) != static_cast<size_t>(width) * 3)
        png_error(png, "unexpected row size after RGB normalization");

    // Heap mutation only; the buffer pointer itself was fixed before
    // the setjmp anchor above.
    buffer->allocate(width, height);
    png_read_image(png, buffer->rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    FrameRgb frame(static_cast<int>(width), static_cast<int>(height));
    for (png_uint_32 y = 0; y < height; ++y) {
        const uint8_t* src = buffer->rows[y];
        uint8_t* r = frame.plane(Plane::Red).row(static_cast<int>(y));
        uint8_t* g = frame.plane(Plane::Green).row(static_cast<int>(y));
        uint8_t* b = frame.plane(Plane::Blue).row(static_cast<int>(y));
        for (png_uint_32 x = 0; x < width; ++x) {
            r[x] = src[3 * x];
            g[x] = src[3 * x + 1];
            b[x] = src[3 * x + 2];
        }
    }
    return frame;
}

void write_png(const std::string& path, const FrameRgb& frame) {
    const int w = frame.width(), h = frame.height();
    auto buffer = std::make_unique<RowBuffer>();
    buffer->allocate(static_cast<size_t>(w), static_cast<size_t>(h));
    for (int y = 0; y < h; ++y) {
        const uint8_t* r = frame.red().row(y);
        const uint8_t* g = frame.green().row(y);
        const uint8_t* b = frame.blue().row(y);
        uint8_t* dst = buffer->rows[y];
        for (int x = 0; x < w; ++x) {
            dst[3 * x] = r[x];
            dst[3 * x + 1] = g[x];
            dst[3 * x + 2] = b[x];
        }
    }

    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) fail(path, "cannot open for writing");

    auto error_message = std::make_unique<std::string>("png write error");
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, error_message.get(),
                                              on_png_error, on_png_warning);
    if (!png) fail(path, "png_create_write_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        fail(path, "png_create_info_struct failed");
    }

    if (setjmp(png_jmpbuf(png))) {
        const std::string msg = *error_message;
        png_destroy_write_struct(&png, &info);
        fail(path, msg);
    }

    png_init_io(png, file.get());
    // Fixed encoder settings keep identical frames byte-identical on disk.
    png_set_compression_level(png, 6);
    png_set_IHDR(png, info, static_cast<png_uint_32>(w), static_cast<png_uint_32>(h), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, buffer->rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

} // namespace lanepre::io
