#include "statedge/windows.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace statedge {

int window_size(double g, int wmin, int wmax, double decay, WindowMode mode) {
    if (g < 0.0 || g > 1.0) {
        throw std::invalid_argument("window_size: gradient must be in [0,1]");
    }
    if (wmin >= wmax || decay <= 0.0) {
        throw std::invalid_argument("window_size: need wmin < wmax and decay > 0");
    }
    const double span = double(wmax - wmin);
    const double e = std::exp(-decay * g);
    const double w = mode == WindowMode::Intent ? wmin + span * e : wmin + span * (1.0 - e);
    return std::clamp(static_cast<int>(std::lround(w)), wmin, wmax);
}

Complexity classify(double mean_gradient, double threshold) {
    return mean_gradient >= threshold ? Complexity::High : Complexity::LowMedium;
}

namespace {

// summed-area table for O(1) rectangle means of the normalized gradient
class IntegralField {
 public:
    explicit IntegralField(const RasterImage& img)
        : m_w(img.width()), m_h(img.height()), m_sums((m_w + 1) * (m_h + 1), 0.0) {
        for (int y = 0; y < m_h; ++y) {
            for (int x = 0; x < m_w; ++x) {
                m_sums[idx(x + 1, y + 1)] = img.at(x, y)
                    + m_sums[idx(x, y + 1)] + m_sums[idx(x + 1, y)] - m_sums[idx(x, y)];
            }
        }
    }

    // mean over [x0, x1) x [y0, y1), clipped to the image
    double mean(int x0, int y0, int x1, int y1) const {
        x0 = std::clamp(x0, 0, m_w);
        x1 = std::clamp(x1, 0, m_w);
        y0 = std::clamp(y0, 0, m_h);
        y1 = std::clamp(y1, 0, m_h);
        const long long area = static_cast<long long>(x1 - x0) * (y1 - y0);
        if (area <= 0) return 0.0;
        const double s = m_sums[idx(x1, y1)] - m_sums[idx(x0, y1)]
                       - m_sums[idx(x1, y0)] + m_sums[idx(x0, y0)];
        return s / double(area);
    }

 private:
    size_t idx(int x, int y) const { return static_cast<size_t>(y) * (m_w + 1) + x; }
    int m_w;
    int m_h;
    std::vector<double> m_sums;
};

std::vector<RegionSpec> partition_impl(int width, int height, const GradientField& field,
                                       const WindowConfig& cfg, int fixed_size) {
    if (cfg.overlap < 0.0 || cfg.overlap >= 1.0) {
        throw std::invalid_argument("partition: overlap must be in [0,1)");
    }
    const IntegralField integral(field.normalized);
    std::vector<RegionSpec> regions;

    int y0 = 0;
    for (;;) {
        int band_min_w = cfg.wmax;
        int x0 = 0;
        for (;;) {
            // window size from the local mean gradient around the origin
            int w;
            if (fixed_size > 0) {
                w = fixed_size;
            } else {
                const double sizing_g = std::clamp(
                    integral.mean(x0, y0, x0 + cfg.wmax, y0 + cfg.wmax), 0.0, 1.0);
                w = window_size(sizing_g, cfg.wmin, cfg.wmax, cfg.decay, cfg.mode);
            }
            band_min_w = std::min(band_min_w, w);

            // clamp origin so the last region touches the border
            RegionSpec r;
            r.x0 = std::min(x0, std::max(0, width - w));
            r.y0 = std::min(y0, std::max(0, height - w));
            r.w = std::min(w, width - r.x0);
            r.h = std::min(w, height - r.y0);
            r.window_size = w;
            r.mean_gradient = std::clamp(
                integral.mean(r.x0, r.y0, r.x0 + r.w, r.y0 + r.h), 0.0, 1.0);
            r.complexity = classify(r.mean_gradient, cfg.gradient_threshold);
            regions.push_back(r);

            if (r.x0 + r.w >= width) break;
            x0 += std::max(1, static_cast<int>(std::floor(w * (1.0 - cfg.overlap))));
        }
        if (fixed_size > 0) band_min_w = fixed_size;
        if (y0 >= height - band_min_w) break;
        y0 += std::max(1, static_cast<int>(std::floor(band_min_w * (1.0 - cfg.overlap))));
    }
    return regions;
}

}  // namespace

std::vector<RegionSpec> partition(int width, int height, const GradientField& field,
                                  const WindowConfig& cfg) {
    return partition_impl(width, height, field, cfg, 0);
}

std::vector<RegionSpec> partition_fixed(int width, int height, const GradientField& field,
                                        const WindowConfig& cfg, int fixed_size) {
    if (fixed_size < 1) {
        throw std::invalid_argument("partition_fixed: fixed_size must be >= 1");
    }
    return partition_impl(width, height, field, cfg, fixed_size);
}

}  // namespace statedge
