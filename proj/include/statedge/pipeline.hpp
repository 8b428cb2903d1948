#ifndef STATEDGE_PIPELINE_HPP
#define STATEDGE_PIPELINE_HPP

#include <cstdint>

#include "statedge/attention.hpp"
#include "statedge/image.hpp"
#include "statedge/windows.hpp"

namespace statedge {

enum class MergeRule { AnyRetain, Majority };

struct PipelineConfig {
    int filter_size = 5;          // median filter
    double alpha = 0.05;          // significance level
    int k = 3;                    // displacement threshold
    int wmin = 8;
    int wmax = 64;
    double overlap = 0.2;
    double gradient_threshold = 0.7;
    double k_sigmoid = 5.0;
    double window_decay = 4.0;
    WindowMode window_mode = WindowMode::Intent;
    double dual_ratio = 0.5;
    int n_min = 5;
    MergeRule merge_rule = MergeRule::AnyRetain;
    bool attention_enabled = true;
    int pair_cap = 2000;          // per-window point-set cap before pair counting
    std::uint64_t seed = 0;
    int threads = 0;              // 0 = hardware concurrency
    AttentionConfig attention;

    WindowConfig window_config() const {
        return WindowConfig{wmin, wmax, window_decay, window_mode, overlap,
                            gradient_threshold};
    }
};

// Membership-map smoothing used by detect: 3x3 median iterated to a fixed
// point (at most size - 1 passes) followed by a 3x3 closing. The iterated
// small median suppresses isolated specks and rings but keeps 2-pixel-wide
// ridges, which a single size x size median would erase along with the step
// edges they mark.
RasterImage smooth_membership(const RasterImage& membership, int filter_size);

// Full adaptive pipeline: attention fuse, gradient + membership, smoothing,
// adaptive partition, per-region dual thresholds and independence testing,
// overlap merge.
EdgeMap detect(const RasterImage& image, const PipelineConfig& cfg);

// Same pipeline with every region forced to fixed_size; the runtime baseline.
EdgeMap detect_fixed_window(const RasterImage& image, const PipelineConfig& cfg,
                            int fixed_size);

// i.i.d. zero-mean Gaussian noise, clamped to [0,255]; deterministic per seed.
RasterImage add_gaussian_noise(const RasterImage& image, double sigma, std::uint64_t seed);

// Classical baselines for the comparison harness.
EdgeMap sobel_otsu_baseline(const RasterImage& image, const PipelineConfig& cfg);
EdgeMap otsu_binarize_baseline(const RasterImage& image, const PipelineConfig& cfg);

}  // namespace statedge

#endif  // STATEDGE_PIPELINE_HPP
