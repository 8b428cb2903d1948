#include "statedge/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "statedge/filters.hpp"
#include "statedge/gradient.hpp"
#include "statedge/stats.hpp"
#include "statedge/threshold.hpp"

namespace statedge {

RasterImage smooth_membership(const RasterImage& membership, int filter_size) {
    if (filter_size < 1 || filter_size % 2 == 0) {
        throw std::invalid_argument("smooth_membership: size must be odd and >= 1");
    }
    // Iterate the 3x3 median toward its root signal: stable ridges (>= 2 px
    // wide) are fixed points, while impulse remnants decay to the background
    // within a few passes. The cap keeps the cost bounded on noisy maps.
    RasterImage out = membership;
    for (int pass = 0; pass < filter_size - 1; ++pass) {
        RasterImage next = median_filter(out, 3);
        if (next.data() == out.data()) break;
        out = std::move(next);
    }
    return close3x3(out);
}

RasterImage add_gaussian_noise(const RasterImage& image, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) {
        throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
    }
    RasterImage out = image;
    if (sigma == 0.0) return out;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    for (double& v : out.data()) {
        v = std::clamp(v + noise(rng), 0.0, 255.0);
    }
    return out;
}

namespace {

int level_of(double membership_value) {
    return std::clamp(static_cast<int>(std::lround(membership_value * 255.0)), 0, 255);
}

// per-image precomputation shared by all regions: quantized membership levels
// and the candidate mask (membership > 0.5)
struct SmoothView {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> levels;
    std::vector<std::uint8_t> candidate;

    explicit SmoothView(const RasterImage& smooth)
        : width(smooth.width()), height(smooth.height()),
          levels(smooth.data().size()), candidate(smooth.data().size()) {
        const std::vector<double>& d = smooth.data();
        for (size_t i = 0; i < d.size(); ++i) {
            levels[i] = static_cast<std::uint8_t>(level_of(d[i]));
            candidate[i] = d[i] > 0.5;
        }
    }
};

Histogram256 region_histogram(const SmoothView& view, int x0, int y0, int w, int h) {
    Histogram256 hist;
    for (int y = y0; y < y0 + h; ++y) {
        const std::uint8_t* row = view.levels.data() + static_cast<size_t>(y) * view.width;
        for (int x = x0; x < x0 + w; ++x) {
            hist.add(row[x]);
        }
    }
    return hist;
}

// stable per-region seed, independent of processing order
std::uint64_t region_seed(std::uint64_t base, int x0, int y0) {
    std::uint64_t s = base;
    s ^= std::uint64_t(std::uint32_t(x0)) * 0x9E3779B97F4A7C15ULL;
    s ^= std::uint64_t(std::uint32_t(y0)) * 0xC2B2AE3D27D4EB4FULL;
    return s;
}

bool points_pass_independence(std::vector<std::pair<int, int>>& points,
                              const PipelineConfig& cfg, std::uint64_t seed) {
    if (static_cast<int>(points.size()) < std::max(cfg.n_min, 2)) return false;
    if (static_cast<int>(points.size()) > cfg.pair_cap) {
        std::mt19937_64 rng(seed);
        std::shuffle(points.begin(), points.end(), rng);
        points.resize(static_cast<size_t>(cfg.pair_cap));
    }
    const ContingencyTable table = build_table(points, cfg.k);
    return independence_test(table, cfg.alpha).reject_h0;
}

std::vector<std::pair<int, int>> candidates_in_rect(const SmoothView& view,
                                                    int x0, int y0, int w, int h) {
    std::vector<std::pair<int, int>> pts;
    for (int y = y0; y < y0 + h; ++y) {
        const std::uint8_t* row = view.candidate.data() + static_cast<size_t>(y) * view.width;
        for (int x = x0; x < x0 + w; ++x) {
            if (row[x]) pts.emplace_back(x, y);
        }
    }
    return pts;
}

struct RegionVerdict {
    std::vector<std::pair<int, int>> retained;
};

RegionVerdict process_region(const RegionSpec& region, const SmoothView& view,
                             const DualThreshold& global_dt, const PipelineConfig& cfg) {
    RegionVerdict verdict;

    if (region.complexity == Complexity::High) {
        // high-complexity regions keep their candidate pixels untouched
        verdict.retained =
            candidates_in_rect(view, region.x0, region.y0, region.w, region.h);
        return verdict;
    }

    // one pass per region: candidate list and level histogram together
    std::vector<std::pair<int, int>> candidates;
    Histogram256 hist;
    for (int y = region.y0; y < region.y0 + region.h; ++y) {
        const size_t base = static_cast<size_t>(y) * view.width;
        const std::uint8_t* lvl = view.levels.data() + base;
        const std::uint8_t* cand = view.candidate.data() + base;
        for (int x = region.x0; x < region.x0 + region.w; ++x) {
            hist.add(lvl[x]);
            if (cand[x]) candidates.emplace_back(x, y);
        }
    }
    if (candidates.empty()) return verdict;

    const DualThreshold dt = hist.distinct_levels() < 2
        ? global_dt : dual_thresholds(hist, cfg.dual_ratio);

    std::vector<std::pair<int, int>> undecided;
    for (const auto& p : candidates) {
        switch (classify_pixel(
            view.levels[static_cast<size_t>(p.second) * view.width + p.first], dt)) {
            case PixelClass::StrongEdge:
                verdict.retained.push_back(p);
                break;
            case PixelClass::Candidate:
                undecided.push_back(p);
                break;
            case PixelClass::Noise:
                break;
        }
    }
    if (static_cast<int>(undecided.size()) < cfg.n_min) return verdict;

    const std::uint64_t seed = region_seed(cfg.seed, region.x0, region.y0);
    std::vector<std::pair<int, int>> test_points = undecided;
    bool keep = points_pass_independence(test_points, cfg, seed);

    if (!keep) {
        // second chance at the largest scale before final discard
        const int width = view.width;
        const int height = view.height;
        const int big = cfg.wmax;
        const int bx = std::clamp(region.x0 + region.w / 2 - big / 2, 0,
                                  std::max(0, width - big));
        const int by = std::clamp(region.y0 + region.h / 2 - big / 2, 0,
                                  std::max(0, height - big));
        std::vector<std::pair<int, int>> wide = candidates_in_rect(
            view, bx, by, std::min(big, width - bx), std::min(big, height - by));
        keep = points_pass_independence(wide, cfg, seed ^ 0xA5A5A5A5ULL);
    }
    if (keep) {
        verdict.retained.insert(verdict.retained.end(), undecided.begin(), undecided.end());
    }
    return verdict;
}

EdgeMap run_pipeline(const RasterImage& image, const PipelineConfig& cfg, int fixed_size) {
    if (image.width() < 1 || image.height() < 1) {
        throw std::invalid_argument("detect: empty image");
    }
    AttentionConfig att = cfg.attention;
    att.enabled = cfg.attention_enabled;
    const RasterImage gray = to_single_channel(image, att);

    const GradientField field = sobel(gray);
    const RasterImage memb = membership_map(field, cfg.k_sigmoid);
    const RasterImage smooth = smooth_membership(memb, cfg.filter_size);
    const SmoothView view(smooth);

    const WindowConfig wincfg = cfg.window_config();
    const std::vector<RegionSpec> regions = fixed_size > 0
        ? partition_fixed(image.width(), image.height(), field, wincfg, fixed_size)
        : partition(image.width(), image.height(), field, wincfg);

    const DualThreshold global_dt = dual_thresholds(
        region_histogram(view, 0, 0, view.width, view.height), cfg.dual_ratio);

    std::vector<RegionVerdict> verdicts(regions.size());
    const int want = cfg.threads > 0 ? cfg.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
    const int workers = std::min<int>(want, static_cast<int>(regions.size()));
    if (workers <= 1) {
        for (size_t i = 0; i < regions.size(); ++i) {
            verdicts[i] = process_region(regions[i], view, global_dt, cfg);
        }
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const size_t i = next.fetch_add(1);
                    if (i >= regions.size()) break;
                    verdicts[i] = process_region(regions[i], view, global_dt, cfg);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    // merge in region order so the result is independent of worker count
    EdgeMap out(image.width(), image.height());
    if (cfg.merge_rule == MergeRule::AnyRetain) {
        for (const RegionVerdict& v : verdicts) {
            for (const auto& p : v.retained) out.set(p.first, p.second, true);
        }
    } else {
        std::vector<int> votes(image.pixel_count(), 0);
        std::vector<int> covers(image.pixel_count(), 0);
        for (size_t i = 0; i < regions.size(); ++i) {
            const RegionSpec& r = regions[i];
            for (int y = r.y0; y < r.y0 + r.h; ++y) {
                for (int x = r.x0; x < r.x0 + r.w; ++x) {
                    ++covers[static_cast<size_t>(y) * image.width() + x];
                }
            }
            for (const auto& p : verdicts[i].retained) {
                ++votes[static_cast<size_t>(p.second) * image.width() + p.first];
            }
        }
        for (int y = 0; y < image.height(); ++y) {
            for (int x = 0; x < image.width(); ++x) {
                const size_t i = static_cast<size_t>(y) * image.width() + x;
                out.set(x, y, 2 * votes[i] > covers[i]);
            }
        }
    }
    return out;
}

}  // namespace

EdgeMap detect(const RasterImage& image, const PipelineConfig& cfg) {
    return run_pipeline(image, cfg, 0);
}

EdgeMap detect_fixed_window(const RasterImage& image, const PipelineConfig& cfg,
                            int fixed_size) {
    if (fixed_size < 1) {
        throw std::invalid_argument("detect_fixed_window: fixed_size must be >= 1");
    }
    return run_pipeline(image, cfg, fixed_size);
}

EdgeMap sobel_otsu_baseline(const RasterImage& image, const PipelineConfig& cfg) {
    AttentionConfig att;
    att.enabled = false;
    const RasterImage gray = to_single_channel(image, att);
    const GradientField field = sobel(gray);

    Histogram256 hist;
    for (double v : field.normalized.data()) {
        hist.add(std::clamp(static_cast<int>(std::lround(v * 255.0)), 0, 255));
    }
    const int t = otsu(hist);
    EdgeMap out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.set(x, y, std::lround(field.normalized.at(x, y) * 255.0) > t);
        }
    }
    (void)cfg;
    return out;
}

EdgeMap otsu_binarize_baseline(const RasterImage& image, const PipelineConfig& cfg) {
    AttentionConfig att;
    att.enabled = false;
    const RasterImage gray = to_single_channel(image, att);

    Histogram256 hist;
    for (double v : gray.data()) {
        hist.add(std::clamp(static_cast<int>(std::lround(v)), 0, 255));
    }
    const int t = otsu(hist);
    EdgeMap out(image.width(), image.height());
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            out.set(x, y, std::lround(gray.at(x, y)) > t);
        }
    }
    (void)cfg;
    return out;
}

}  // namespace statedge
