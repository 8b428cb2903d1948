#include "statedge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace statedge {

double mse(const RasterImage& pred, const RasterImage& ref) {
    if (!pred.same_dims(ref)) {
        throw std::invalid_argument("mse: dimension mismatch");
    }
    double acc = 0.0;
    const auto& a = pred.data();
    const auto& b = ref.data();
    for (size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc / double(a.size());
}

double psnr(const RasterImage& pred, const RasterImage& ref) {
    const double e = mse(pred, ref);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / e);
}

MetricsReport f_measure(const EdgeMap& pred, const EdgeMap& gt, int tol) {
    if (pred.width() != gt.width() || pred.height() != gt.height()) {
        throw std::invalid_argument("f_measure: dimension mismatch");
    }
    if (tol < 0) {
        throw std::invalid_argument("f_measure: tol must be >= 0");
    }
    const int w = pred.width();
    const int h = pred.height();

    std::vector<unsigned char> gt_matched(static_cast<size_t>(w) * h, 0);
    std::uint64_t n_pred = 0;
    std::uint64_t n_gt = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            n_gt += gt.get(x, y);
        }
    }

    std::uint64_t tp = 0;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!pred.get(x, y)) continue;
            ++n_pred;
            // first unmatched ground-truth pixel in the tolerance box, row-major
            for (int gy = std::max(0, y - tol); gy <= std::min(h - 1, y + tol); ++gy) {
                bool matched = false;
                for (int gx = std::max(0, x - tol); gx <= std::min(w - 1, x + tol); ++gx) {
                    const size_t idx = static_cast<size_t>(gy) * w + gx;
                    if (gt.get(gx, gy) && !gt_matched[idx]) {
                        gt_matched[idx] = 1;
                        ++tp;
                        matched = true;
                        break;
                    }
                }
                if (matched) break;
            }
        }
    }

    MetricsReport r;
    r.tp = tp;
    r.fp = n_pred - tp;
    r.fn = n_gt - tp;
    r.precision = n_pred > 0 ? double(tp) / double(n_pred) : 0.0;
    r.recall = n_gt > 0 ? double(tp) / double(n_gt) : 0.0;
    r.f_measure = (r.precision + r.recall) > 0.0
        ? 2.0 * r.precision * r.recall / (r.precision + r.recall) : 0.0;
    return r;
}

RasterImage edge_map_to_image(const EdgeMap& m) {
    RasterImage img(m.width(), m.height(), 1);
    for (int y = 0; y < m.height(); ++y) {
        for (int x = 0; x < m.width(); ++x) {
            img.at(x, y) = m.get(x, y) ? 255.0 : 0.0;
        }
    }
    return img;
}

MetricsReport evaluate_edge_map(const EdgeMap& pred, const EdgeMap& gt, int tol) {
    MetricsReport r = f_measure(pred, gt, tol);
    const RasterImage pi = edge_map_to_image(pred);
    const RasterImage gi = edge_map_to_image(gt);
    r.mse = mse(pi, gi);
    r.mse_scaled = r.mse / (255.0 * 255.0) * 1000.0;
    r.psnr = psnr(pi, gi);
    return r;
}

}  // namespace statedge
