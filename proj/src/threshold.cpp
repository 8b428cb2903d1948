#include "statedge/threshold.hpp"

#include <cmath>
#include <stdexcept>

namespace statedge {

int Histogram256::distinct_levels() const {
    int n = 0;
    for (std::uint64_t c : counts) n += c > 0;
    return n;
}

int otsu(const Histogram256& hist) {
    if (hist.total == 0) {
        throw std::invalid_argument("otsu: empty histogram");
    }
    const double total = static_cast<double>(hist.total);

    double weighted_total = 0.0;
    for (int i = 0; i < 256; ++i) weighted_total += double(i) * hist.counts[i];

    int best_t = 0;
    double best_var = -1.0;
    double w0_count = 0.0;
    double w0_weighted = 0.0;
    for (int t = 0; t < 256; ++t) {
        w0_count += hist.counts[t];
        w0_weighted += double(t) * hist.counts[t];
        const double w1_count = total - w0_count;
        if (w0_count == 0.0 || w1_count == 0.0) {
            // one class empty: zero inter-class variance
            if (best_var < 0.0) { best_var = 0.0; best_t = t; }
            continue;
        }
        const double mu0 = w0_weighted / w0_count;
        const double mu1 = (weighted_total - w0_weighted) / w1_count;
        const double var = (w0_count / total) * (w1_count / total) * (mu0 - mu1) * (mu0 - mu1);
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t;
}

DualThreshold dual_thresholds(const Histogram256& hist, double ratio) {
    if (ratio <= 0.0 || ratio > 1.0) {
        throw std::invalid_argument("dual_thresholds: ratio must be in (0,1]");
    }
    DualThreshold dt;
    dt.t_star = otsu(hist);
    dt.t_high = dt.t_star;
    dt.t_low = static_cast<int>(std::lround(ratio * dt.t_high));
    return dt;
}

PixelClass classify_pixel(double v, const DualThreshold& dt) {
    if (v > dt.t_high) return PixelClass::StrongEdge;
    if (v > dt.t_low) return PixelClass::Candidate;
    return PixelClass::Noise;
}

}  // namespace statedge
