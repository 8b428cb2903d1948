#include "statedge/filters.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace statedge {

namespace {

inline int clamp_coord(int v, int n) { return v < 0 ? 0 : (v >= n ? n - 1 : v); }

inline int reflect_coord(int v, int n) {
    // reflect-101 style without repeating the border sample twice
    if (n == 1) return 0;
    while (v < 0 || v >= n) {
        if (v < 0) v = -v;
        if (v >= n) v = 2 * (n - 1) - v;
    }
    return v;
}

double sample(const RasterImage& img, int x, int y, BorderPolicy border) {
    const int w = img.width();
    const int h = img.height();
    switch (border) {
        case BorderPolicy::Replicate:
            return img.at(clamp_coord(x, w), clamp_coord(y, h));
        case BorderPolicy::Reflect:
            return img.at(reflect_coord(x, w), reflect_coord(y, h));
        case BorderPolicy::Zero:
            if (x < 0 || x >= w || y < 0 || y >= h) return 0.0;
            return img.at(x, y);
    }
    return 0.0;
}

void require_single_channel(const RasterImage& image, const char* op) {
    if (image.channels() != 1) {
        throw std::invalid_argument(std::string(op) + ": single-channel image required");
    }
}

inline void order2(double& lo, double& hi) {
    const double t = lo;
    lo = std::min(t, hi);
    hi = std::max(t, hi);
}

// median of 9 via the 19-comparison sorting network
inline double median9(double p0, double p1, double p2, double p3, double p4,
                      double p5, double p6, double p7, double p8) {
    order2(p1, p2); order2(p4, p5); order2(p7, p8);
    order2(p0, p1); order2(p3, p4); order2(p6, p7);
    order2(p1, p2); order2(p4, p5); order2(p7, p8);
    order2(p0, p3); order2(p5, p8); order2(p4, p7);
    order2(p3, p6); order2(p1, p4); order2(p2, p5);
    order2(p4, p7); order2(p4, p2); order2(p6, p4);
    order2(p4, p2);
    return p4;
}

// replicate-border 3x3 median with direct row indexing
RasterImage median3(const RasterImage& image) {
    const int w = image.width();
    const int h = image.height();
    RasterImage out(w, h, 1);
    const double* src = image.data().data();
    double* dst = out.data().data();
    for (int y = 0; y < h; ++y) {
        const double* r0 = src + static_cast<size_t>(std::max(y - 1, 0)) * w;
        const double* r1 = src + static_cast<size_t>(y) * w;
        const double* r2 = src + static_cast<size_t>(std::min(y + 1, h - 1)) * w;
        double* o = dst + static_cast<size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0);
            const int xp = std::min(x + 1, w - 1);
            o[x] = median9(r0[xm], r0[x], r0[xp],
                           r1[xm], r1[x], r1[xp],
                           r2[xm], r2[x], r2[xp]);
        }
    }
    return out;
}

}  // namespace

RasterImage convolve2d(const RasterImage& image, const Kernel& kernel, BorderPolicy border) {
    require_single_channel(image, "convolve2d");
    const int w = image.width();
    const int h = image.height();
    const int cr = kernel.rows() / 2;
    const int cc = kernel.cols() / 2;

    RasterImage out(w, h, 1);
    auto generic_pixel = [&](int x, int y) {
        double acc = 0.0;
        for (int i = 0; i < kernel.rows(); ++i) {
            for (int j = 0; j < kernel.cols(); ++j) {
                acc += kernel.at(i, j) * sample(image, x + j - cc, y + i - cr, border);
            }
        }
        out.at(x, y) = acc;
    };

    if (kernel.rows() == 3 && kernel.cols() == 3 && w >= 3 && h >= 3) {
        // interior needs no border handling; unroll the taps
        const double k00 = kernel.at(0, 0), k01 = kernel.at(0, 1), k02 = kernel.at(0, 2);
        const double k10 = kernel.at(1, 0), k11 = kernel.at(1, 1), k12 = kernel.at(1, 2);
        const double k20 = kernel.at(2, 0), k21 = kernel.at(2, 1), k22 = kernel.at(2, 2);
        const double* src = image.data().data();
        double* dst = out.data().data();
        for (int y = 1; y + 1 < h; ++y) {
            const double* r0 = src + static_cast<size_t>(y - 1) * w;
            const double* r1 = src + static_cast<size_t>(y) * w;
            const double* r2 = src + static_cast<size_t>(y + 1) * w;
            double* o = dst + static_cast<size_t>(y) * w;
            for (int x = 1; x + 1 < w; ++x) {
                o[x] = k00 * r0[x - 1] + k01 * r0[x] + k02 * r0[x + 1]
                     + k10 * r1[x - 1] + k11 * r1[x] + k12 * r1[x + 1]
                     + k20 * r2[x - 1] + k21 * r2[x] + k22 * r2[x + 1];
            }
        }
        for (int x = 0; x < w; ++x) {
            generic_pixel(x, 0);
            generic_pixel(x, h - 1);
        }
        for (int y = 1; y + 1 < h; ++y) {
            generic_pixel(0, y);
            generic_pixel(w - 1, y);
        }
        return out;
    }

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            generic_pixel(x, y);
        }
    }
    return out;
}

RasterImage median_filter(const RasterImage& image, int size) {
    require_single_channel(image, "median_filter");
    if (size < 1 || size % 2 == 0) {
        throw std::invalid_argument("median_filter: size must be odd and >= 1");
    }
    if (size == 3) return median3(image);
    const int w = image.width();
    const int h = image.height();
    const int r = size / 2;

    RasterImage out(w, h, 1);
    std::vector<double> window;
    window.reserve(static_cast<size_t>(size) * size);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            window.clear();
            for (int dy = -r; dy <= r; ++dy) {
                for (int dx = -r; dx <= r; ++dx) {
                    window.push_back(sample(image, x + dx, y + dy, BorderPolicy::Replicate));
                }
            }
            auto mid = window.begin() + window.size() / 2;
            std::nth_element(window.begin(), mid, window.end());
            out.at(x, y) = *mid;
        }
    }
    return out;
}

namespace {

template <typename Cmp>
RasterImage morph3x3(const RasterImage& image, Cmp better) {
    const int w = image.width();
    const int h = image.height();
    RasterImage out(w, h, 1);
    const double* src = image.data().data();
    double* dst = out.data().data();
    for (int y = 0; y < h; ++y) {
        const double* r0 = src + static_cast<size_t>(std::max(y - 1, 0)) * w;
        const double* r1 = src + static_cast<size_t>(y) * w;
        const double* r2 = src + static_cast<size_t>(std::min(y + 1, h - 1)) * w;
        double* o = dst + static_cast<size_t>(y) * w;
        for (int x = 0; x < w; ++x) {
            const int xm = std::max(x - 1, 0);
            const int xp = std::min(x + 1, w - 1);
            double best = r0[xm];
            for (double v : {r0[x], r0[xp], r1[xm], r1[x], r1[xp], r2[xm], r2[x], r2[xp]}) {
                if (better(v, best)) best = v;
            }
            o[x] = best;
        }
    }
    return out;
}

}  // namespace

RasterImage dilate3x3(const RasterImage& image) {
    require_single_channel(image, "dilate3x3");
    return morph3x3(image, [](double a, double b) { return a > b; });
}

RasterImage erode3x3(const RasterImage& image) {
    require_single_channel(image, "erode3x3");
    return morph3x3(image, [](double a, double b) { return a < b; });
}

RasterImage close3x3(const RasterImage& image) {
    return erode3x3(dilate3x3(image));
}

}  // namespace statedge
