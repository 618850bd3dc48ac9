#include <random>

#include "doctest.h"
#include "giet/interval_set.hpp"

using giet::Interval;
using giet::IntervalSet;
using giet::Scalar;

namespace {

/// Membership of the grid points k/48 is a complete oracle for sets with endpoints on the 1/24 grid.
std::vector<bool> grid(const IntervalSet& s) {
    std::vector<bool> out;
    for (int k = 0; k < 48; ++k) out.push_back(s.contains(Scalar(2 * k + 1, 96)));
    return out;
}

IntervalSet random_set(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(0, 4), e(0, 24);
    std::vector<Interval> pieces;
    for (int i = n(rng); i > 0; --i) {
        int a = e(rng), b = e(rng);
        if (a > b) std::swap(a, b);
        pieces.push_back({Scalar(a, 24), Scalar(b, 24)});
    }
    return IntervalSet(pieces);
}

}  // namespace

TEST_CASE("normalization merges touching pieces and drops empty ones") {
    IntervalSet s{{Scalar(1, 2), Scalar(3, 4)}, {Scalar(0), Scalar(1, 4)}, {Scalar(1, 4), Scalar(1, 2)},
                  {Scalar(7, 8), Scalar(7, 8)}};
    REQUIRE(s.pieces().size() == 1);
    CHECK(s.pieces()[0] == Interval{Scalar(0), Scalar(3, 4)});
    CHECK(s.measure() == Scalar(3, 4));
    CHECK(s.contains(Scalar(0)));
    CHECK_FALSE(s.contains(Scalar(3, 4)));
}

TEST_CASE("interval basics") {
    const Interval a{Scalar(0), Scalar(1, 2)}, b{Scalar(1, 2), Scalar(1)};
    CHECK_FALSE(a.intersects(b));
    CHECK_FALSE(a.intersect(b).has_value());
    CHECK(a.contains(Interval{Scalar(1, 4), Scalar(1, 2)}));
    CHECK(Interval{Scalar(1), Scalar(1)}.empty());
}

TEST_CASE("set algebra agrees with grid membership") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        const IntervalSet x = random_set(rng), y = random_set(rng);
        const auto gx = grid(x), gy = grid(y);
        const auto gu = grid(x.unite(y)), gi = grid(x.intersect(y)), gs = grid(x.subtract(y));
        int count = 0;
        for (int k = 0; k < 48; ++k) {
            CHECK(gu[k] == (gx[k] || gy[k]));
            CHECK(gi[k] == (gx[k] && gy[k]));
            CHECK(gs[k] == (gx[k] && !gy[k]));
            count += gx[k];
        }
        CHECK(x.measure() == Scalar(count, 48));
        CHECK(x.unite(y).measure() + x.intersect(y).measure() == x.measure() + y.measure());
        CHECK(x.contains(x.intersect(y)));
        CHECK(x.intersects(y) == !x.intersect(y).empty());
    }
}
