#include <set>

#include "doctest.h"
#include "generators.hpp"
#include "giet/first_return.hpp"
#include "giet/orbit.hpp"

using namespace giet;

namespace {

GGiet rotation(const Scalar& a_len, const Scalar& b_len) {
    return GGiet(Layout({Item::interval("A", a_len), Item::interval("B", b_len)}),
                 Layout({Item::interval("B", b_len), Item::interval("A", a_len)}), {{"A", 1}, {"B", 1}});
}

Scalar iterate_n(const GGiet& m, Scalar x, int n) {
    for (int i = 0; i < n; ++i) x = *m.apply(x).value;
    return x;
}

}  // namespace

TEST_CASE("first return of the 1/3 rotation to [0, 1/3)") {
    const FirstReturn fr = first_return(rotation(Scalar(2, 3), Scalar(1, 3)), {Scalar(0), Scalar(1, 3)}, 10);
    REQUIRE(fr.map.d() == 1);
    const Label a = fr.map.labels().front();
    CHECK(fr.return_time.at(a) == 3);
    CHECK(fr.itinerary.at(a) == std::vector<Label>{"A", "A", "B"});
    CHECK(fr.map.top_interval(a) == Interval{Scalar(0), Scalar(1, 3)});
    CHECK(fr.map.bottom_interval(a) == Interval{Scalar(0), Scalar(1, 3)});
    CHECK(fr.map.slope(a) == Scalar(1));
    CHECK(fr.map.length() == Scalar(1, 3));
    CHECK(fr.lost.empty());
}

TEST_CASE("first return to the whole span of a gapless map is the map") {
    testgen::Rng rng(41);
    for (int i = 0; i < 50; ++i) {
        const GGiet m = testgen::random_iet(rng, testgen::uniform(rng, 1, 6));
        const FirstReturn fr = first_return(m, {Scalar(0), m.length()}, 2);
        CHECK(equal_up_to_relabeling(fr.map, m));
        for (const auto& [a, t] : fr.return_time) CHECK(t == 1);
    }
}

TEST_CASE("points falling into a gap are lost") {
    const GGiet s(Layout({Item::interval("A", Scalar(1, 2)), Item::make_gap(Scalar(1, 2))}),
                  Layout({Item::make_gap(Scalar(1, 2)), Item::interval("A", Scalar(1, 2))}), {{"A", 1}});
    const FirstReturn fr = first_return(s, {Scalar(0), Scalar(1, 2)}, 10);
    CHECK(fr.map.d() == 0);
    CHECK(fr.lost == std::vector<Interval>{{Scalar(0), Scalar(1, 2)}});
}

TEST_CASE("trapped pieces are detected without reaching the horizon") {
    // A contracts [1/4, 3/4) towards 1/2 and never returns to [0, 1/8)
    const GGiet cyl(Layout({Item::interval("L", Scalar(1, 4)), Item::interval("A", Scalar(1, 2)), Item::make_gap(Scalar(1, 4))}),
                    Layout({Item::make_gap(Scalar(1, 8)), Item::interval("L", Scalar(1, 4)), Item::interval("A", Scalar(1, 4)),
                            Item::make_gap(Scalar(3, 8))}),
                    {{"L", 1}, {"A", Scalar(1, 2)}});
    REQUIRE(validate(cyl).empty());
    const FirstReturn fr = first_return(cyl, {Scalar(0), Scalar(1, 8)}, 1000);
    CHECK(fr.map.d() == 0);
    CHECK_FALSE(fr.lost.empty());
    CHECK(fr.over_horizon.empty());
}

TEST_CASE("horizon policy") {
    const Scalar g = Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5);
    const GGiet golden = rotation(Scalar(1) - g, g);
    const Interval J{Scalar(0), Scalar(1, 100)};
    CHECK_THROWS_AS(first_return(golden, J, 5), HorizonExceeded);
    const FirstReturn fr = first_return(golden, J, 5, ExcessPolicy::Exclude);
    CHECK(fr.map.d() == 0);
    CHECK_FALSE(fr.over_horizon.empty());
    const FirstReturn full = first_return(golden, J, 1000);
    CHECK(full.map.d() <= 4);
    // three-gap theorem: at most three return times, the largest being the sum of the other two
    std::set<int> times;
    for (const auto& [a, t] : full.return_time) times.insert(t);
    REQUIRE(times.size() >= 2);
    CHECK(times.size() <= 3);
    if (times.size() == 3) CHECK(*times.rbegin() == *times.begin() + *std::next(times.begin()));
}

TEST_CASE("returned intervals have constant return time and the right branch") {
    testgen::Rng rng(42);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const GGiet m = testgen::random_map(rng);
        const Interval J = testgen::random_subinterval(rng, m.length());
        FirstReturn fr;
        try {
            fr = first_return(m, J, 1000);
        } catch (const HorizonExceeded&) {
            continue;
        }
        CHECK(fr.map.d() <= m.d() + 2);
        CHECK(validate(fr.map).empty());
        for (const auto& a : fr.map.labels()) {
            const Interval& iv = fr.map.top_interval(a);
            for (int s = 0; s < 20; ++s) {
                const Scalar x = iv.lo + iv.length() * Scalar(2 * s + 1, 40);
                const int t = fr.return_time.at(a);
                CHECK(return_time(m, x, J, 1000) == std::optional<int>(t));
                CHECK(iterate_n(m, x, t) == *fr.map.apply(x).value);
                ++checked;
            }
        }
        // everything in J that is not returned must be lost (never returns)
        IntervalSet accounted = fr.map.domain().unite(IntervalSet(fr.lost));
        CHECK(accounted.contains(J));
        for (const auto& l : fr.lost) {
            const Scalar x = l.lo + l.length() / Scalar(3);
            CHECK_FALSE(return_time(m, x, J, 2000).has_value());
        }
    }
    CHECK(checked > 1000);
}
