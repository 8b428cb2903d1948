#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "statedge/filters.hpp"
#include "statedge/gradient.hpp"

using namespace statedge;

namespace {

RasterImage vertical_step(int w, int h, double lo, double hi) {
    RasterImage img(w, h, 1);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            img.at(x, y) = x < w / 2 ? lo : hi;
        }
    }
    return img;
}

RasterImage random_image(int w, int h, std::uint64_t seed) {
    RasterImage img(w, h, 1);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 255.0);
    for (double& v : img.data()) v = u(rng);
    return img;
}

}  // namespace

TEST_CASE("convolve2d: zero-sum kernel on constant image gives zero") {
    RasterImage img(7, 5, 1, 10.0);
    Kernel k(3, 3, {1, -2, 1, 0, 0, 0, -1, 2, -1});
    RasterImage out = convolve2d(img, k);
    for (double v : out.data()) CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("convolve2d: 1x1 identity kernel") {
    RasterImage img = random_image(9, 6, 1);
    RasterImage out = convolve2d(img, Kernel(1, 1, {1.0}));
    for (size_t i = 0; i < img.data().size(); ++i) CHECK(out.data()[i] == img.data()[i]);
}

TEST_CASE("convolve2d: sobel x on vertical step gives 1020 at the step") {
    RasterImage img = vertical_step(8, 6, 0.0, 255.0);
    RasterImage out = convolve2d(img, sobel_x_kernel());
    // step between columns 3 and 4; the interior response spans those columns
    for (int y = 1; y < 5; ++y) {
        CHECK(std::abs(out.at(3, y)) == doctest::Approx(1020.0));
        CHECK(std::abs(out.at(4, y)) == doctest::Approx(1020.0));
        CHECK(out.at(1, y) == doctest::Approx(0.0));
        CHECK(out.at(6, y) == doctest::Approx(0.0));
    }
}

TEST_CASE("convolve2d: rejects multi-channel input") {
    RasterImage rgb(4, 4, 3);
    CHECK_THROWS_AS(convolve2d(rgb, Kernel(1, 1, {1.0})), std::invalid_argument);
}

TEST_CASE("convolve2d is linear") {
    RasterImage a = random_image(12, 9, 2);
    RasterImage b = random_image(12, 9, 3);
    Kernel k(3, 3, {0.5, -1, 2, 0, 3, -0.25, 1, 1, -2});

    RasterImage combined(12, 9, 1);
    for (size_t i = 0; i < combined.data().size(); ++i) {
        combined.data()[i] = 2.0 * a.data()[i] + 0.5 * b.data()[i];
    }
    RasterImage lhs = convolve2d(combined, k);
    RasterImage ca = convolve2d(a, k);
    RasterImage cb = convolve2d(b, k);
    for (size_t i = 0; i < lhs.data().size(); ++i) {
        const double rhs = 2.0 * ca.data()[i] + 0.5 * cb.data()[i];
        CHECK(lhs.data()[i] == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("median_filter: constant image unchanged") {
    RasterImage img(10, 10, 1, 42.0);
    RasterImage out = median_filter(img, 5);
    for (double v : out.data()) CHECK(v == 42.0);
}

TEST_CASE("median_filter: removes single impulse at size 5") {
    RasterImage img(11, 11, 1, 0.0);
    img.at(5, 5) = 255.0;
    RasterImage out = median_filter(img, 5);
    CHECK(out.at(5, 5) == 0.0);
}

TEST_CASE("median_filter: 2-pixel stripe survives size 3, dies at size 5") {
    RasterImage img(12, 12, 1, 0.0);
    for (int y = 0; y < 12; ++y) {
        img.at(5, y) = 255.0;
        img.at(6, y) = 255.0;
    }
    // 3x3 window centred on the stripe holds 6 of 9 high samples
    RasterImage keep = median_filter(img, 3);
    for (int y = 0; y < 12; ++y) {
        CHECK(keep.at(5, y) == 255.0);
        CHECK(keep.at(6, y) == 255.0);
        CHECK(keep.at(3, y) == 0.0);
        CHECK(keep.at(8, y) == 0.0);
    }
    // 5x5 window holds only 10 of 25 high samples, below the majority
    RasterImage gone = median_filter(img, 5);
    for (double v : gone.data()) CHECK(v == 0.0);
}

TEST_CASE("median_filter: size 3 matches direct window sort") {
    RasterImage img = random_image(17, 13, 21);
    RasterImage out = median_filter(img, 3);
    for (int y = 0; y < 13; ++y) {
        for (int x = 0; x < 17; ++x) {
            std::array<double, 9> win;
            int i = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    const int sx = std::clamp(x + dx, 0, 16);
                    const int sy = std::clamp(y + dy, 0, 12);
                    win[i++] = img.at(sx, sy);
                }
            }
            std::nth_element(win.begin(), win.begin() + 4, win.end());
            CHECK(out.at(x, y) == win[4]);
        }
    }
}

TEST_CASE("median_filter: rejects even size") {
    RasterImage img(4, 4, 1);
    CHECK_THROWS_AS(median_filter(img, 4), std::invalid_argument);
}

TEST_CASE("morphology: constant image unchanged") {
    RasterImage img(6, 6, 1, 17.0);
    RasterImage d = dilate3x3(img);
    RasterImage e = erode3x3(img);
    for (double v : d.data()) CHECK(v == 17.0);
    for (double v : e.data()) CHECK(v == 17.0);
}

TEST_CASE("dilate3x3: single pixel becomes 3x3 block") {
    RasterImage img(7, 7, 1, 0.0);
    img.at(3, 3) = 255.0;
    RasterImage out = dilate3x3(img);
    for (int y = 0; y < 7; ++y) {
        for (int x = 0; x < 7; ++x) {
            const bool inside = std::abs(x - 3) <= 1 && std::abs(y - 3) <= 1;
            CHECK(out.at(x, y) == (inside ? 255.0 : 0.0));
        }
    }
}

TEST_CASE("closing fills a 1-pixel gap in a line") {
    RasterImage img(5, 5, 1, 0.0);
    for (int x = 0; x < 5; ++x) img.at(x, 2) = 255.0;
    img.at(2, 2) = 0.0;  // the gap
    RasterImage out = close3x3(img);
    for (int x = 0; x < 5; ++x) CHECK(out.at(x, 2) == 255.0);
}

TEST_CASE("morphology is extensive / anti-extensive and monotone") {
    RasterImage a = random_image(10, 8, 7);
    RasterImage d = dilate3x3(a);
    RasterImage e = erode3x3(a);
    for (size_t i = 0; i < a.data().size(); ++i) {
        CHECK(d.data()[i] >= a.data()[i]);
        CHECK(e.data()[i] <= a.data()[i]);
    }

    // pixelwise order is preserved
    RasterImage b = a;
    for (double& v : b.data()) v += 5.0;
    RasterImage ma = median_filter(a, 3);
    RasterImage mb = median_filter(b, 3);
    RasterImage da = dilate3x3(a);
    RasterImage db = dilate3x3(b);
    for (size_t i = 0; i < a.data().size(); ++i) {
        CHECK(ma.data()[i] <= mb.data()[i]);
        CHECK(da.data()[i] <= db.data()[i]);
    }
}

TEST_CASE("all filters preserve dimensions") {
    RasterImage img = random_image(13, 7, 11);
    CHECK(convolve2d(img, sobel_x_kernel()).same_dims(img));
    CHECK(median_filter(img, 3).same_dims(img));
    CHECK(dilate3x3(img).same_dims(img));
    CHECK(erode3x3(img).same_dims(img));
}
