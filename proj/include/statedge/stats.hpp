#ifndef STATEDGE_STATS_HPP
#define STATEDGE_STATS_HPP

#include <cstdint>
#include <span>
#include <utility>

namespace statedge {

// 2x2 cross-tabulation of pairwise pixel displacements against a threshold k:
//   a: |dx| <= k, |dy| <= k    b: |dx| <= k, |dy| > k
//   c: |dx| >  k, |dy| <= k    d: |dx| >  k, |dy| > k
struct ContingencyTable {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::int64_t c = 0;
    std::int64_t d = 0;

    std::int64_t n() const { return a + b + c + d; }
    std::int64_t row1() const { return a + b; }
    std::int64_t row2() const { return c + d; }
    std::int64_t col1() const { return a + c; }
    std::int64_t col2() const { return b + d; }
    std::int64_t min_cell() const;
    bool degenerate() const;  // any zero margin
};

enum class TestMethod { ChiSquare, FisherExact };
enum class FisherMode { Point, OneTail, TwoTail };

struct TestOutcome {
    TestMethod method = TestMethod::ChiSquare;
    double statistic = 0.0;  // chi-square value; 0 for Fisher
    double p_value = 1.0;
    bool reject_h0 = false;
    bool degenerate = false;
};

// Counts unordered pairs of points into the four displacement cells.
ContingencyTable build_table(std::span<const std::pair<int, int>> points, int k);

// Pearson chi-square with 1 degree of freedom; p via erfc(sqrt(x/2)).
// Degenerate tables return p = 1 with the degenerate flag set.
TestOutcome chi_square_test(const ContingencyTable& t, bool yates, double alpha);

// Exact hypergeometric test through log-factorials; no overflow for n <= 1e6.
TestOutcome fisher_exact_test(const ContingencyTable& t, FisherMode mode, double alpha);

// Dispatch per the frequency-5 rule: any cell < 5 -> Fisher (one tail),
// otherwise chi-square without continuity correction.
TestOutcome independence_test(const ContingencyTable& t, double alpha);

// log C(n, k) via lgamma.
double log_choose(std::int64_t n, std::int64_t k);

}  // namespace statedge

#endif  // STATEDGE_STATS_HPP
