#include "statedge/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "statedge/filters.hpp"

namespace statedge {

Kernel sobel_x_kernel() {
    return Kernel(3, 3, {-1, 0, 1, -2, 0, 2, -1, 0, 1});
}

Kernel sobel_y_kernel() {
    return Kernel(3, 3, {1, 2, 1, 0, 0, 0, -1, -2, -1});
}

GradientField sobel(const RasterImage& image) {
    if (image.channels() != 1) {
        throw std::invalid_argument("sobel: single-channel image required");
    }
    GradientField f;
    f.gx = convolve2d(image, sobel_x_kernel());
    f.gy = convolve2d(image, sobel_y_kernel());

    const int w = image.width();
    const int h = image.height();
    f.magnitude = RasterImage(w, h, 1);
    double maxmag = 0.0;
    const std::vector<double>& gx = f.gx.data();
    const std::vector<double>& gy = f.gy.data();
    std::vector<double>& mag = f.magnitude.data();
    for (size_t i = 0; i < mag.size(); ++i) {
        const double m = std::sqrt(gx[i] * gx[i] + gy[i] * gy[i]);
        mag[i] = m;
        maxmag = std::max(maxmag, m);
    }
    f.normalized = RasterImage(w, h, 1);
    if (maxmag > 0.0) {
        std::vector<double>& norm = f.normalized.data();
        for (size_t i = 0; i < norm.size(); ++i) {
            norm[i] = mag[i] / maxmag;
        }
    }
    return f;
}

double membership(double g, double k, double x0) {
    if (!std::isfinite(g) || !std::isfinite(k) || !std::isfinite(x0)) {
        throw std::invalid_argument("membership: non-finite input");
    }
    if (k <= 0.0) {
        throw std::invalid_argument("membership: k must be > 0");
    }
    return 1.0 / (1.0 + std::exp(-k * (g - x0)));
}

double median_of(const RasterImage& single_channel) {
    std::vector<double> v = single_channel.data();
    // lower-of-two-middles keeps the result an element of the sample
    auto mid = v.begin() + (v.size() - 1) / 2;
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

RasterImage membership_map(const GradientField& field, double k_sigmoid) {
    const double x0 = median_of(field.normalized);
    const int w = field.normalized.width();
    const int h = field.normalized.height();
    RasterImage out(w, h, 1);
    const std::vector<double>& src = field.normalized.data();
    std::vector<double>& dst = out.data();
    for (size_t i = 0; i < dst.size(); ++i) {
        dst[i] = membership(src[i], k_sigmoid, x0);
    }
    return out;
}

}  // namespace statedge
