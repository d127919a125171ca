#include <doctest.h>

#include "slipkit/core.hpp"

#include <random>

using namespace slipkit;

TEST_CASE("luminance of primary colors") {
    RgbImage img{3, 1, {255, 255, 255, 0, 0, 0, 255, 0, 0}};
    const GrayImage g = luminance(img);
    REQUIRE(g.rows() == 1);
    REQUIRE(g.cols() == 3);
    CHECK(g(0, 0) == 255);
    CHECK(g(0, 1) == 0);
    // round(0.299 * 255) = round(76.245)
    CHECK(g(0, 2) == 76);
}

TEST_CASE("luminance rejects a buffer of the wrong length") {
    RgbImage img{2, 2, std::vector<std::uint8_t>(11, 0)};
    CHECK_THROWS_AS(luminance(img), DimensionMismatch);
}

TEST_CASE("luminance matches the weighted sum on random pixels") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> byte(0, 255);
    RgbImage img{17, 9, {}};
    for (int i = 0; i < 17 * 9 * 3; ++i) img.data.push_back(static_cast<std::uint8_t>(byte(rng)));
    const GrayImage g = luminance(img);
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 17; ++x) {
            const std::size_t i = static_cast<std::size_t>((y * 17 + x) * 3);
            const double l = 0.299 * img.data[i] + 0.587 * img.data[i + 1] + 0.114 * img.data[i + 2];
            CHECK(std::abs(g(y, x) - l) <= 0.5 + 1e-9);
        }
    }
}

TEST_CASE("EllipseParams::make normalizes the axis order") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> len(0.5, 50.0), ang(-400.0, 400.0);
    for (int i = 0; i < 200; ++i) {
        const double a = len(rng), b = len(rng), t = ang(rng);
        const EllipseParams e = EllipseParams::make(1.0, 2.0, a, b, t);
        CHECK(e.a >= e.b);
        CHECK(e.b > 0.0);
        CHECK(e.theta >= 0.0);
        CHECK(e.theta < 180.0);
        const double expected = canonical_axis(a < b ? t + 90.0 : t);
        CHECK(e.theta == doctest::Approx(expected).epsilon(1e-12));
    }
    const EllipseParams e = EllipseParams::make(0, 0, 5, 10, 30);
    CHECK(e.a == 10);
    CHECK(e.b == 5);
    CHECK(e.theta == doctest::Approx(120));
    CHECK_THROWS_AS(EllipseParams::make(0, 0, 0, 1, 0), InvalidArgument);
    CHECK_THROWS_AS(EllipseParams::make(0, 0, 1, -1, 0), InvalidArgument);
}

TEST_CASE("axis angles use the screen counterclockwise convention") {
    CHECK(axis_angle_of(1.0, 0.0) == doctest::Approx(0.0));
    CHECK(axis_angle_of(-1.0, 0.0) == doctest::Approx(0.0));
    CHECK(axis_angle_of(0.0, -1.0) == doctest::Approx(90.0));
    CHECK(axis_angle_of(1.0, 1.0) == doctest::Approx(135.0));
    CHECK(axis_angle_of(1.0, -1.0) == doctest::Approx(45.0));
    CHECK(canonical_axis(-10.0) == doctest::Approx(170.0));
    CHECK(canonical_axis(540.0) == doctest::Approx(0.0));
}

TEST_CASE("mask_points lists set pixels in scan order") {
    BinaryMask m = BinaryMask::Constant(3, 4, false);
    m(0, 3) = m(2, 1) = m(1, 0) = true;
    const auto p = mask_points(m);
    REQUIRE(p.rows() == 3);
    CHECK(p(0, 0) == 3);
    CHECK(p(0, 1) == 0);
    CHECK(p(1, 0) == 0);
    CHECK(p(1, 1) == 1);
    CHECK(p(2, 0) == 1);
    CHECK(p(2, 1) == 2);
}
