#ifndef STATEDGE_THRESHOLD_HPP
#define STATEDGE_THRESHOLD_HPP

#include <array>
#include <cstddef>
#include <cstdint>

namespace statedge {

struct Histogram256 {
    std::array<std::uint64_t, 256> counts{};
    std::uint64_t total = 0;

    void add(int level, std::uint64_t n = 1) {
        counts[static_cast<size_t>(level)] += n;
        total += n;
    }
    int distinct_levels() const;
};

struct DualThreshold {
    int t_star = 0;  // the Otsu maximizer
    int t_high = 0;
    int t_low = 0;
};

enum class PixelClass { StrongEdge, Candidate, Noise };

// Smallest threshold maximizing the inter-class variance
// w0 * w1 * (mu0 - mu1)^2. Background is levels <= T.
int otsu(const Histogram256& hist);

// t_high = otsu, t_low = round(ratio * t_high).
DualThreshold dual_thresholds(const Histogram256& hist, double ratio);

// v > t_high -> strong edge; t_low < v <= t_high -> candidate; else noise.
PixelClass classify_pixel(double v, const DualThreshold& dt);

}  // namespace statedge

#endif  // STATEDGE_THRESHOLD_HPP
