#ifndef STATEDGE_GRADIENT_HPP
#define STATEDGE_GRADIENT_HPP

#include "statedge/image.hpp"

namespace statedge {

// Sobel gradient field with normalized magnitude and sigmoid membership.
struct GradientField {
    RasterImage gx;          // horizontal response
    RasterImage gy;          // vertical response
    RasterImage magnitude;   // sqrt(gx^2 + gy^2), >= 0
    RasterImage normalized;  // magnitude / max(magnitude), in [0,1]; all zero if flat
};

Kernel sobel_x_kernel();
Kernel sobel_y_kernel();

GradientField sobel(const RasterImage& image);

// Logistic membership 1 / (1 + e^{-k (g - x0)}), strictly in (0, 1).
double membership(double g, double k, double x0);

// Median of the normalized magnitude; lower-of-two-middles for even counts.
double median_of(const RasterImage& single_channel);

// Per-pixel membership map of the normalized magnitude, inflection at its median.
RasterImage membership_map(const GradientField& field, double k_sigmoid);

}  // namespace statedge

#endif  // STATEDGE_GRADIENT_HPP
