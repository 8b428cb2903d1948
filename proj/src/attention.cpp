#include "statedge/attention.hpp"

#include <algorithm>
#include <cmath>

#include "statedge/filters.hpp"

namespace statedge {

double relu(double x) { return x > 0.0 ? x : 0.0; }

namespace {

RasterImage extract_channel(const RasterImage& image, int c) {
    RasterImage out(image.width(), image.height(), 1);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.at(x, y) = image.at(x, y, c);
        }
    }
    return out;
}

// Max-pooled ReLU response of one channel. pool_size <= 0 pools globally;
// otherwise cell maxima are averaged into one scalar.
double channel_response(const RasterImage& channel, const AttentionConfig& cfg) {
    RasterImage r = convolve2d(channel, cfg.depthwise_kernel);
    for (double& v : r.data()) v = relu(v);

    if (cfg.pool_size <= 0) {
        return *std::max_element(r.data().begin(), r.data().end());
    }
    const int p = cfg.pool_size;
    double sum = 0.0;
    int cells = 0;
    for (int y0 = 0; y0 < r.height(); y0 += p) {
        for (int x0 = 0; x0 < r.width(); x0 += p) {
            double m = 0.0;
            for (int y = y0; y < std::min(y0 + p, r.height()); ++y) {
                for (int x = x0; x < std::min(x0 + p, r.width()); ++x) {
                    m = std::max(m, r.at(x, y));
                }
            }
            sum += m;
            ++cells;
        }
    }
    return sum / cells;
}

}  // namespace

std::array<double, 3> channel_weights(const RasterImage& image, const AttentionConfig& cfg) {
    if (image.channels() != 3) {
        throw std::invalid_argument("channel_weights: 3-channel image required");
    }
    std::array<double, 3> r{};
    for (int c = 0; c < 3; ++c) {
        r[c] = channel_response(extract_channel(image, c), cfg);
    }
    const double total = r[0] + r[1] + r[2];
    if (total <= 0.0) {
        return {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    }
    return {r[0] / total, r[1] / total, r[2] / total};
}

RasterImage fuse(const RasterImage& image, const AttentionConfig& cfg) {
    if (image.channels() != 3) {
        throw std::invalid_argument("fuse: 3-channel image required");
    }
    const std::array<double, 3> w = cfg.enabled
        ? channel_weights(image, cfg)
        : std::array<double, 3>{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};

    RasterImage out(image.width(), image.height(), 1);
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            double v = 0.0;
            for (int c = 0; c < 3; ++c) v += w[c] * image.at(x, y, c);
            out.at(x, y) = std::clamp(v, 0.0, 255.0);
        }
    }
    return out;
}

RasterImage to_single_channel(const RasterImage& image, const AttentionConfig& cfg) {
    if (image.channels() == 1) return image;
    return fuse(image, cfg);
}

}  // namespace statedge
