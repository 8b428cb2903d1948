#include "statedge/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace statedge {

std::int64_t ContingencyTable::min_cell() const {
    return std::min({a, b, c, d});
}

bool ContingencyTable::degenerate() const {
    return row1() == 0 || row2() == 0 || col1() == 0 || col2() == 0;
}

namespace {

// pairs with |v_i - v_j| <= k; sorts its argument
std::int64_t close_pairs_1d(std::vector<int>& v, int k) {
    std::sort(v.begin(), v.end());
    std::int64_t count = 0;
    size_t lo = 0;
    for (size_t i = 0; i < v.size(); ++i) {
        while (v[i] - v[lo] > k) ++lo;
        count += static_cast<std::int64_t>(i - lo);
    }
    return count;
}

struct Fenwick {
    std::vector<std::int32_t> tree;
    explicit Fenwick(int n) : tree(static_cast<size_t>(n) + 1, 0) {}
    void add(int i) {
        for (++i; i < static_cast<int>(tree.size()); i += i & -i) ++tree[static_cast<size_t>(i)];
    }
    void remove(int i) {
        for (++i; i < static_cast<int>(tree.size()); i += i & -i) --tree[static_cast<size_t>(i)];
    }
    std::int64_t prefix(int i) const {  // sum over [0, i]
        std::int64_t s = 0;
        for (++i; i > 0; i -= i & -i) s += tree[static_cast<size_t>(i)];
        return s;
    }
};

}  // namespace

ContingencyTable build_table(std::span<const std::pair<int, int>> points, int k) {
    if (points.size() < 2) {
        throw std::invalid_argument("build_table: need at least 2 points");
    }
    if (k < 1) {
        throw std::invalid_argument("build_table: displacement threshold k must be >= 1");
    }
    ContingencyTable t;
    if (points.size() <= 64) {
        for (size_t i = 0; i < points.size(); ++i) {
            for (size_t j = i + 1; j < points.size(); ++j) {
                const int dx = std::abs(points[i].first - points[j].first);
                const int dy = std::abs(points[i].second - points[j].second);
                if (dx <= k) {
                    if (dy <= k) ++t.a; else ++t.b;
                } else {
                    if (dy <= k) ++t.c; else ++t.d;
                }
            }
        }
        return t;
    }

    // large sets: cell a by an x-window sweep with a Fenwick tree over y,
    // margins by 1-d two-pointer counts, d from the pair total
    std::vector<std::pair<int, int>> pts(points.begin(), points.end());
    std::sort(pts.begin(), pts.end());
    int min_y = pts[0].second, max_y = pts[0].second;
    for (const auto& p : pts) {
        min_y = std::min(min_y, p.second);
        max_y = std::max(max_y, p.second);
    }
    const int range = max_y - min_y;
    Fenwick bit(range + 1);
    std::int64_t a = 0;
    size_t lo = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        while (pts[i].first - pts[lo].first > k) {
            bit.remove(pts[lo].second - min_y);
            ++lo;
        }
        const int y = pts[i].second - min_y;
        const int hi_y = std::min(range, y + k);
        const int lo_y = y - k;
        a += bit.prefix(hi_y) - (lo_y > 0 ? bit.prefix(lo_y - 1) : 0);
        bit.add(y);
    }

    std::vector<int> xs, ys;
    xs.reserve(pts.size());
    ys.reserve(pts.size());
    for (const auto& p : pts) {
        xs.push_back(p.first);
        ys.push_back(p.second);
    }
    const std::int64_t ab = close_pairs_1d(xs, k);
    const std::int64_t ac = close_pairs_1d(ys, k);
    const std::int64_t m = static_cast<std::int64_t>(pts.size());
    t.a = a;
    t.b = ab - a;
    t.c = ac - a;
    t.d = m * (m - 1) / 2 - ab - ac + a;
    return t;
}

TestOutcome chi_square_test(const ContingencyTable& t, bool yates, double alpha) {
    TestOutcome out;
    out.method = TestMethod::ChiSquare;
    if (t.degenerate()) {
        // a zero margin carries no evidence against independence
        out.degenerate = true;
        out.p_value = 1.0;
        out.reject_h0 = false;
        return out;
    }
    const double n = static_cast<double>(t.n());
    const double observed[4] = {double(t.a), double(t.b), double(t.c), double(t.d)};
    const double expected[4] = {
        double(t.row1()) * t.col1() / n,
        double(t.row1()) * t.col2() / n,
        double(t.row2()) * t.col1() / n,
        double(t.row2()) * t.col2() / n,
    };
    double stat = 0.0;
    for (int i = 0; i < 4; ++i) {
        double dev = std::abs(observed[i] - expected[i]);
        if (yates) dev = std::max(0.0, dev - 0.5);
        stat += dev * dev / expected[i];
    }
    out.statistic = stat;
    out.p_value = std::erfc(std::sqrt(stat / 2.0));  // upper tail, df = 1
    out.reject_h0 = out.p_value < alpha;
    return out;
}

double log_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0)
         - std::lgamma(double(n - k) + 1.0);
}

namespace {

// log P of the table with top-left cell = a, margins fixed
double log_point_prob(std::int64_t a, std::int64_t r1, std::int64_t c1, std::int64_t n) {
    return log_choose(r1, a) + log_choose(n - r1, c1 - a) - log_choose(n, c1);
}

}  // namespace

TestOutcome fisher_exact_test(const ContingencyTable& t, FisherMode mode, double alpha) {
    TestOutcome out;
    out.method = TestMethod::FisherExact;

    const std::int64_t r1 = t.row1();
    const std::int64_t c1 = t.col1();
    const std::int64_t n = t.n();
    if (n == 0) {
        out.degenerate = true;
        out.p_value = 1.0;
        return out;
    }

    const std::int64_t lo = std::max<std::int64_t>(0, r1 + c1 - n);
    const std::int64_t hi = std::min(r1, c1);
    const double log_p_obs = log_point_prob(t.a, r1, c1, n);

    double p = 0.0;
    switch (mode) {
        case FisherMode::Point:
            p = std::exp(log_p_obs);
            break;
        case FisherMode::OneTail: {
            // tail in the direction of the observed association
            const bool positive = double(t.a) * t.d - double(t.b) * t.c >= 0.0;
            if (positive) {
                for (std::int64_t a = t.a; a <= hi; ++a) {
                    p += std::exp(log_point_prob(a, r1, c1, n));
                }
            } else {
                for (std::int64_t a = lo; a <= t.a; ++a) {
                    p += std::exp(log_point_prob(a, r1, c1, n));
                }
            }
            break;
        }
        case FisherMode::TwoTail: {
            // sum of all tables no more probable than the observed one
            const double cutoff = log_p_obs + 1e-7;
            for (std::int64_t a = lo; a <= hi; ++a) {
                const double lp = log_point_prob(a, r1, c1, n);
                if (lp <= cutoff) p += std::exp(lp);
            }
            break;
        }
    }
    out.p_value = std::min(p, 1.0);
    out.degenerate = t.degenerate();
    out.reject_h0 = out.p_value < alpha;
    return out;
}

TestOutcome independence_test(const ContingencyTable& t, double alpha) {
    if (alpha <= 0.0 || alpha >= 1.0) {
        throw std::invalid_argument("independence_test: alpha must be in (0,1)");
    }
    if (t.min_cell() < 5) {
        return fisher_exact_test(t, FisherMode::OneTail, alpha);
    }
    return chi_square_test(t, false, alpha);
}

}  // namespace statedge
