#ifndef STATEDGE_METRICS_HPP
#define STATEDGE_METRICS_HPP

#include <cstdint>

#include "statedge/image.hpp"

namespace statedge {

struct MetricsReport {
    double mse = 0.0;
    double mse_scaled = 0.0;  // per-mille mismatch of {0,255} maps: mse / 255^2 * 1000
    double psnr = 0.0;        // infinity when mse == 0
    double precision = 0.0;
    double recall = 0.0;
    double f_measure = 0.0;
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
};

double mse(const RasterImage& pred, const RasterImage& ref);

// 10 log10(255^2 / mse); +infinity when mse == 0.
double psnr(const RasterImage& pred, const RasterImage& ref);

// Greedy one-to-one matching in row-major order within Chebyshev distance tol.
MetricsReport f_measure(const EdgeMap& pred, const EdgeMap& gt, int tol);

// MSE/PSNR computed on the {0,255} renderings of the two maps, combined with
// the matching-based precision/recall/F.
MetricsReport evaluate_edge_map(const EdgeMap& pred, const EdgeMap& gt, int tol);

RasterImage edge_map_to_image(const EdgeMap& m);

}  // namespace statedge

#endif  // STATEDGE_METRICS_HPP
