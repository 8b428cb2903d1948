#ifndef STATEDGE_WINDOWS_HPP
#define STATEDGE_WINDOWS_HPP

#include <vector>

#include "statedge/gradient.hpp"
#include "statedge/image.hpp"

namespace statedge {

enum class Complexity { LowMedium, High };

// Intent mode shrinks the window as the gradient grows (small windows on
// detail, large on smooth regions); literal mode applies the printed
// growth formula instead.
enum class WindowMode { Intent, Literal };

struct RegionSpec {
    int x0 = 0;
    int y0 = 0;
    int w = 0;   // clipped extent inside the image
    int h = 0;
    Complexity complexity = Complexity::LowMedium;
    double mean_gradient = 0.0;  // mean normalized gradient over the region
    int window_size = 0;         // the size chosen before clipping
};

struct WindowConfig {
    int wmin = 8;
    int wmax = 64;
    double decay = 4.0;
    WindowMode mode = WindowMode::Intent;
    double overlap = 0.2;
    double gradient_threshold = 0.7;
};

// Window side length for a normalized gradient g in [0,1], rounded and
// clamped to [wmin, wmax].
int window_size(double g, int wmin, int wmax, double decay, WindowMode mode);

Complexity classify(double mean_gradient, double threshold = 0.7);

// Overlapping tiling of the image driven by local mean gradient; every
// pixel is covered by at least one region.
std::vector<RegionSpec> partition(int width, int height, const GradientField& field,
                                  const WindowConfig& cfg);

// Fixed-size variant for the runtime comparison baseline.
std::vector<RegionSpec> partition_fixed(int width, int height, const GradientField& field,
                                        const WindowConfig& cfg, int fixed_size);

}  // namespace statedge

#endif  // STATEDGE_WINDOWS_HPP
