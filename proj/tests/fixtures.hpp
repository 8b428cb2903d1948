#ifndef STATEDGE_TESTS_FIXTURES_HPP
#define STATEDGE_TESTS_FIXTURES_HPP

#include <random>
#include <utility>
#include <vector>

#include "statedge/image.hpp"

namespace statedge::fixtures {

struct LineSpeckleFixture {
    RasterImage image;
    std::vector<std::pair<int, int>> line_pixels;
    std::vector<std::pair<int, int>> speckle_pixels;
};

// 45-degree bright line of the given length plus isolated bright speckles
// scattered away from the line, on a black field.
inline LineSpeckleFixture line_and_speckles(int size = 128, int line_length = 60,
                                            int speckles = 40, std::uint64_t seed = 42) {
    LineSpeckleFixture f{RasterImage(size, size, 1, 0.0), {}, {}};
    const int start = (size - line_length) / 2;
    for (int i = 0; i < line_length; ++i) {
        const int x = start + i;
        f.image.at(x, x) = 255.0;
        f.line_pixels.emplace_back(x, x);
    }

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(2, size - 3);
    while (static_cast<int>(f.speckle_pixels.size()) < speckles) {
        const int x = coord(rng);
        const int y = coord(rng);
        if (std::abs(x - y) < 6) continue;  // keep clear of the line
        bool near_existing = false;
        for (const auto& p : f.speckle_pixels) {
            if (std::abs(p.first - x) <= 4 && std::abs(p.second - y) <= 4) {
                near_existing = true;
                break;
            }
        }
        if (near_existing) continue;
        f.image.at(x, y) = 255.0;
        f.speckle_pixels.emplace_back(x, y);
    }
    return f;
}

// edge map of the fixture's true line, for ground-truth comparisons
inline EdgeMap line_ground_truth(const LineSpeckleFixture& f) {
    EdgeMap gt(f.image.width(), f.image.height());
    for (const auto& p : f.line_pixels) gt.set(p.first, p.second, true);
    return gt;
}

}  // namespace statedge::fixtures

#endif  // STATEDGE_TESTS_FIXTURES_HPP
