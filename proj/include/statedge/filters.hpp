#ifndef STATEDGE_FILTERS_HPP
#define STATEDGE_FILTERS_HPP

#include "statedge/image.hpp"

namespace statedge {

// 2D correlation of a single-channel image with a center-anchored kernel.
// Out-of-bounds samples follow the border policy (default replicate).
RasterImage convolve2d(const RasterImage& image, const Kernel& kernel,
                       BorderPolicy border = BorderPolicy::Replicate);

// Median of the size x size neighborhood, replicate border. size must be odd.
RasterImage median_filter(const RasterImage& image, int size);

// Flat 3x3 grayscale max / min filters, replicate border.
RasterImage dilate3x3(const RasterImage& image);
RasterImage erode3x3(const RasterImage& image);

// Dilate then erode; bridges 1-pixel gaps in bright structures.
RasterImage close3x3(const RasterImage& image);

}  // namespace statedge

#endif  // STATEDGE_FILTERS_HPP
