#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lanepre {

// Row-major single-plane image. T is uint8_t for storage planes,
// int16/int32 for gradient data, double for filter intermediates.
template <typename T>
class Image {
public:
    Image() = default;
    Image(int width, int height, T fill = T{})
        : width_(checked_dim(width)), height_(checked_dim(height)),
          data_(static_cast<size_t>(width) * static_cast<size_t>(height), fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    size_t size() const { return data_.size(); }

    T* row(int y) { return data_.data() + static_cast<size_t>(y) * width_; }
    const T* row(int y) const { return data_.data() + static_cast<size_t>(y) * width_; }

    T& at(int x, int y) { return data_[static_cast<size_t>(y) * width_ + x]; }
    const T& at(int x, int y) const { return data_[static_cast<size_t>(y) * width_ + x]; }

    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    bool same_size(int w, int h) const { return width_ == w && height_ == h; }

    template <typename U>
    bool same_size(const Image<U>& other) const {
        return width_ == other.width() && height_ == other.height();
    }

    friend bool operator==(const Image& a, const Image& b) {
        return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
    }

private:
    // Runs before the data vector is sized, so a negative dimension
    // cannot reach the allocator as a huge size_t.
    static int checked_dim(int v) {
        if (v <= 0) throw std::invalid_argument("Image: dimensions must be positive");
        return v;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

using ImageU8 = Image<uint8_t>;
using ImageF64 = Image<double>;

// Binary edge image, samples are 0 or 1.
using EdgeMap = Image<uint8_t>;

// Plane indices follow the on-disk channel order: 0 = blue, 1 = green, 2 = red.
enum class Plane : int { Blue = 0, Green = 1, Red = 2 };

// Three 8-bit planes of equal size. Minimum 3x3 so that every 3x3
// convolution in the pipeline has at least one interior pixel.
class FrameRgb {
public:
    FrameRgb() = default;
    FrameRgb(int width, int height)
        : width_(width), height_(height),
          planes_{ImageU8(width, height), ImageU8(width, height), ImageU8(width, height)} {
        if (width < 3 || height < 3)
            throw std::invalid_argument("FrameRgb: minimum size is 3x3");
    }

    int width() const { return width_; }
    int height() const { return height_; }

    ImageU8& plane(Plane p) { return planes_[static_cast<int>(p)]; }
    const ImageU8& plane(Plane p) const { return planes_[static_cast<int>(p)]; }
    ImageU8& plane(int i) { return planes_[i]; }
    const ImageU8& plane(int i) const { return planes_[i]; }

    const ImageU8& blue() const { return planes_[0]; }
    const ImageU8& green() const { return planes_[1]; }
    const ImageU8& red() const { return planes_[2]; }

    friend bool operator==(const FrameRgb& a, const FrameRgb& b) {
        return a.planes_ == b.planes_;
    }

private:
    int width_ = 0;
    int height_ = 0;
    std::array<ImageU8, 3> planes_;
};

// Symmetric mirror fold: ... 2 1 0 | 0 1 2 ... n-1 | n-1 n-2 ...
// Well defined for any overshoot, including kernels wider than the image.
inline int mirror_index(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * n;
    i %= period;
    if (i < 0) i += period;
    return i < n ? i : period - 1 - i;
}

// Round half up, the one rounding rule used for every real -> 8-bit
// conversion in this project.
inline uint8_t round_u8(double v) {
    double r = std::floor(v + 0.5);
    if (r < 0.0) r = 0.0;
    if (r > 255.0) r = 255.0;
    return static_cast<uint8_t>(r);
}

} // namespace lanepre
