#include <doctest.h>

#include "lanepre/image.hpp"

#include "common/oracles.hpp"

using namespace lanepre;

TEST_CASE("image rejects non-positive dimensions") {
    CHECK_THROWS_AS(ImageU8(0, 4), std::invalid_argument);
    CHECK_THROWS_AS(ImageU8(4, 0), std::invalid_argument);
    CHECK_THROWS_AS(ImageF64(-1, 3), std::invalid_argument);
}

TEST_CASE("image fill, accessors and equality") {
    ImageU8 img(3, 2, 7);
    CHECK(img.width() == 3);
    CHECK(img.height() == 2);
    CHECK(img.size() == 6);
    for (int y = 0; y < 2; ++y)
        for (int x = 0; x < 3; ++x) CHECK(img.at(x, y) == 7);
    img.at(2, 1) = 9;
    CHECK(img.row(1)[2] == 9);
    ImageU8 other(3, 2, 7);
    CHECK_FALSE(img == other);
    other.at(2, 1) = 9;
    CHECK(img == other);
}

TEST_CASE("frame requires at least 3x3 and keeps plane order") {
    CHECK_THROWS_AS(FrameRgb(2, 5), std::invalid_argument);
    CHECK_THROWS_AS(FrameRgb(5, 2), std::invalid_argument);
    FrameRgb f(3, 3);
    f.plane(Plane::Blue).at(0, 0) = 1;
    f.plane(Plane::Green).at(0, 0) = 2;
    f.plane(Plane::Red).at(0, 0) = 3;
    CHECK(f.blue().at(0, 0) == 1);
    CHECK(f.green().at(0, 0) == 2);
    CHECK(f.red().at(0, 0) == 3);
    CHECK(f.plane(0).at(0, 0) == 1);
}

TEST_CASE("mirror fold agrees with explicit reflection for any overshoot") {
    for (int n : {1, 2, 3, 7, 16})
        for (int i = -3 * n; i <= 3 * n; ++i) {
            const int got = mirror_index(i, n);
            CHECK(got == oracles::reflect(i, n));
            CHECK(got >= 0);
            CHECK(got < n);
        }
    CHECK(mirror_index(-1, 8) == 0);
    CHECK(mirror_index(8, 8) == 7);
}

TEST_CASE("round half up saturates at both ends") {
    CHECK(round_u8(0.49) == 0);
    CHECK(round_u8(0.5) == 1);
    CHECK(round_u8(127.5) == 128);
    CHECK(round_u8(-3.0) == 0);
    CHECK(round_u8(255.4) == 255);
    CHECK(round_u8(400.0) == 255);
    CHECK(round_u8(254.5) == 255);
}
