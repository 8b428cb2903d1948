#ifndef STATEDGE_ATTENTION_HPP
#define STATEDGE_ATTENTION_HPP

#include <array>

#include "statedge/image.hpp"

namespace statedge {

// Deterministic channel-attention preprocessing: a depthwise kernel probes
// each channel for edge response, the max-pooled ReLU responses become
// normalized channel weights, and a weighted sum fuses the channels.
// There are no learned parameters.
struct AttentionConfig {
    Kernel depthwise_kernel = Kernel(3, 3, {0, -1, 0, -1, 4, -1, 0, -1, 0});
    int pool_size = 0;  // 0 means global max pool
    bool enabled = true;
};

double relu(double x);

// One weight per channel, derived from max-pooled ReLU responses, summing to 1.
std::array<double, 3> channel_weights(const RasterImage& image, const AttentionConfig& cfg);

// Weighted channel sum, clamped to [0, 255]. With cfg.enabled == false the
// weights are uniform (plain luma average).
RasterImage fuse(const RasterImage& image, const AttentionConfig& cfg);

// Grayscale path: 3-channel images go through fuse, 1-channel pass through.
RasterImage to_single_channel(const RasterImage& image, const AttentionConfig& cfg);

}  // namespace statedge

#endif  // STATEDGE_ATTENTION_HPP
