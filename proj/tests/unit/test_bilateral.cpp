#include <doctest.h>

#include <random>

#include "lanepre/backend.hpp"
#include "lanepre/bilateral.hpp"

#include "common/oracles.hpp"

using namespace lanepre;
using filter::BilateralParams;

namespace {

ImageU8 random_image(int w, int h, uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    ImageU8 img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) img.at(x, y) = static_cast<uint8_t>(dist(rng));
    return img;
}

ImageF64 to_f64(const ImageU8& img) {
    ImageF64 out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) out.at(x, y) = img.at(x, y);
    return out;
}

double max_abs_diff(const ImageF64& a, const ImageF64& b) {
    double m = 0.0;
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x)
            m = std::max(m, std::abs(a.at(x, y) - b.at(x, y)));
    return m;
}

} // namespace

TEST_CASE("bilateral parameter validation") {
    BilateralParams p;
    p.kernel_size = 4;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.kernel_size = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BilateralParams{};
    p.sigma_spatial = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = BilateralParams{};
    p.sigma_intensity = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK_NOTHROW(BilateralParams{}.validate());
}

TEST_CASE("constant image passes through unchanged") {
    const ImageU8 img(9, 9, 128);
    const ImageU8 out = filter::bilateral_filter_u8(img, BilateralParams{});
    CHECK(out == img);
}

TEST_CASE("image narrower than the kernel stays constant under mirror padding") {
    const ImageU8 img(1, 12, 77);
    const ImageU8 out = filter::bilateral_filter_u8(img, BilateralParams{});
    CHECK(out == img);
}

TEST_CASE("pipeline output matches the brute-force oracle within 1e-6") {
    const BilateralParams p;
    for (uint32_t seed : {11u, 12u, 13u}) {
        const ImageU8 img = random_image(64, 64, seed);
        const ImageF64 got = filter::bilateral_filter_raw(img, p);
        const ImageF64 want = oracles::bilateral(img, p.kernel_size, p.sigma_spatial,
                                                 p.sigma_intensity);
        CHECK(max_abs_diff(got, want) <= 1e-6);
    }
}

TEST_CASE("table-driven path equals the per-tap reference path bitwise") {
    const ImageU8 img = random_image(48, 33, 21);
    const ImageF64 via_tables = filter::bilateral_filter_raw(img, BilateralParams{},
                                                             Backend::Scalar);
    const ImageF64 via_exp = filter::bilateral_filter(to_f64(img), BilateralParams{});
    CHECK(via_tables == via_exp);
}

TEST_CASE("scalar and avx2 bilateral agree bitwise") {
    if (!cpu_has_avx2()) return;
    BilateralParams p;
    for (uint32_t seed : {31u, 32u}) {
        const ImageU8 img = random_image(129, 40, seed); // width not a lane multiple
        CHECK(filter::bilateral_filter_raw(img, p, Backend::Scalar) ==
              filter::bilateral_filter_raw(img, p, Backend::Avx2));
    }
    p.kernel_size = 5;
    const ImageU8 img = random_image(64, 64, 33);
    CHECK(filter::bilateral_filter_raw(img, p, Backend::Scalar) ==
          filter::bilateral_filter_raw(img, p, Backend::Avx2));
}

TEST_CASE("huge intensity sigma reduces the filter to a gaussian blur") {
    BilateralParams p;
    p.sigma_intensity = 1e6;
    const ImageU8 img = random_image(40, 40, 5);
    const ImageF64 got = filter::bilateral_filter_raw(img, p);
    const ImageF64 want = oracles::gaussian_blur(img, p.kernel_size, p.sigma_spatial);
    CHECK(max_abs_diff(got, want) <= 0.5);
}

TEST_CASE("output stays inside the kernel neighborhood range") {
    const BilateralParams p;
    const int r = p.kernel_size / 2;
    const ImageU8 img = random_image(32, 24, 99);
    const ImageF64 out = filter::bilateral_filter_raw(img, p);
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            int lo = 255, hi = 0;
            for (int dy = -r; dy <= r; ++dy)
                for (int dx = -r; dx <= r; ++dx) {
                    const int v = img.at(oracles::reflect(x + dx, img.width()),
                                         oracles::reflect(y + dy, img.height()));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            CHECK(out.at(x, y) >= lo - 1e-9);
            CHECK(out.at(x, y) <= hi + 1e-9);
        }
}
