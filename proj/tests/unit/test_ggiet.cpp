#include "doctest.h"
#include "generators.hpp"
#include "giet/ggiet.hpp"

using namespace giet;

namespace {

GGiet rotation(const Scalar& a_len, const Scalar& b_len) {
    return GGiet(Layout({Item::interval("A", a_len), Item::interval("B", b_len)}),
                 Layout({Item::interval("B", b_len), Item::interval("A", a_len)}), {{"A", 1}, {"B", 1}});
}

GGiet cyl() {
    return GGiet(Layout({Item::make_gap(Scalar(1, 4)), Item::interval("A", Scalar(1, 2)), Item::make_gap(Scalar(1, 4))}),
                 Layout({Item::make_gap(Scalar(3, 8)), Item::interval("A", Scalar(1, 4)), Item::make_gap(Scalar(3, 8))}),
                 {{"A", Scalar(1, 2)}});
}

bool has_violation(const GGiet& m, const std::string& needle) {
    for (const auto& v : validate(m)) {
        if (v.find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("layout canonicalization") {
    Layout l({Item::make_gap(Scalar(1, 4)), Item::make_gap(Scalar(1, 4)), Item::interval("A", Scalar(1, 2)),
              Item::make_gap(Scalar(0))});
    REQUIRE(l.items().size() == 2);
    CHECK(l.items()[0].gap);
    CHECK(l.items()[0].length == Scalar(1, 2));
    CHECK(l.total() == Scalar(1));
    CHECK(l.spans()[1] == Interval{Scalar(1, 2), Scalar(1)});
}

TEST_CASE("validate") {
    const GGiet r = rotation(Scalar(2, 3), Scalar(1, 3));
    CHECK(validate(r).empty());

    GGiet bad_slope(r.top(), r.bottom(), {{"A", 2}, {"B", 1}});
    CHECK(has_violation(bad_slope, "branch length mismatch for A"));

    GGiet short_bottom(Layout({Item::interval("A", 1)}),
                       Layout({Item::interval("A", Scalar(7, 8)), Item::make_gap(Scalar(1, 8))}), {{"A", Scalar(7, 8)}});
    CHECK(validate(short_bottom).empty());
    GGiet mismatch(Layout({Item::interval("A", 1)}), Layout({Item::interval("A", Scalar(7, 8))}), {{"A", 1}});
    CHECK(has_violation(mismatch, "ambient length mismatch"));

    GGiet missing(Layout({Item::interval("A", 1)}), Layout({Item::interval("B", 1)}), {{"A", 1}, {"B", 1}});
    CHECK(has_violation(missing, "missing from bottom"));

    GGiet mixed(Layout({Item::interval("A", Scalar::quadratic(0, 1, 2))}),
                Layout({Item::interval("A", Scalar::quadratic(0, 1, 2))}), {{"A", Scalar::quadratic(1, 1, 3)}});
    CHECK(has_violation(mixed, "field mismatch"));
    CHECK_THROWS_AS(GGiet(Layout({Item::interval("A", Scalar::quadratic(0, 1, 2)), Item::make_gap(Scalar::quadratic(0, 1, 3))}),
                          Layout({Item::interval("A", Scalar::quadratic(0, 1, 2))}), {{"A", 1}}),
                    FieldMismatch);

    CHECK(validate(GGiet()).empty());
    CHECK(validate(cyl()).empty());
}

TEST_CASE("apply") {
    const GGiet r = rotation(Scalar(2, 3), Scalar(1, 3));
    CHECK(*r.apply(Scalar(0)).value == Scalar(1, 3));
    CHECK(*r.apply(Scalar(2, 3)).value == Scalar(0));
    const GGiet c = cyl();
    CHECK(*c.apply(Scalar(1, 2)).value == Scalar(1, 2));
    const ApplyResult gap = c.apply(Scalar(1, 8));
    CHECK_FALSE(gap.defined());
    CHECK(gap.gap == std::size_t{0});
    CHECK(c.apply(Scalar(7, 8)).gap == std::size_t{1});
    CHECK_THROWS_AS(c.apply(Scalar(1)), std::out_of_range);
    CHECK_THROWS_AS(c.apply(Scalar(-1, 8)), std::out_of_range);
}

TEST_CASE("invert") {
    const GGiet r = rotation(Scalar(2, 3), Scalar(1, 3));
    CHECK(equal_up_to_relabeling(r.invert(), rotation(Scalar(1, 3), Scalar(2, 3))));
    CHECK(cyl().invert().slope("A") == Scalar(2));
    testgen::Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const GGiet m = testgen::random_map(rng);
        CHECK(m.invert().invert() == m);
    }
}

TEST_CASE("apply lands in the bottom interval of the same label and inverts") {
    testgen::Rng rng(32);
    for (int i = 0; i < 100; ++i) {
        const GGiet m = testgen::random_map(rng);
        REQUIRE(validate(m).empty());
        const GGiet inv = m.invert();
        for (int k = 0; k < 20; ++k) {
            const Scalar x = testgen::random_point(rng, m.length());
            const ApplyResult y = m.apply(x);
            const auto label = m.top_label_at(x);
            CHECK(y.defined() == label.has_value());
            if (!y.defined()) continue;
            CHECK(m.bottom_interval(*label).contains(*y.value));
            CHECK(m.bottom_label_at(*y.value) == label);
            CHECK(*inv.apply(*y.value).value == x);
            CHECK(*m.apply_inverse(*y.value).value == x);
        }
    }
}

TEST_CASE("restrict") {
    const GGiet r = rotation(Scalar(2, 3), Scalar(1, 3));
    const GGiet res = r.restrict(IntervalSet{{Scalar(0), Scalar(2, 3)}});
    CHECK(validate(res).empty());
    CHECK(res.d() == 1);
    CHECK(res.top_gaps() == std::vector<Interval>{{Scalar(2, 3), Scalar(1)}});
    CHECK(res.bottom_gaps() == std::vector<Interval>{{Scalar(0), Scalar(1, 3)}});

    // straddling the discontinuity keeps both letters
    const GGiet both = r.restrict(IntervalSet{{Scalar(1, 2), Scalar(5, 6)}});
    CHECK(both.d() == 2);
    CHECK(both.bottom_interval("B") == Interval{Scalar(0), Scalar(1, 6)});
    CHECK(both.bottom_interval("A") == Interval{Scalar(5, 6), Scalar(1)});

    // two components inside one letter get split names
    const GGiet split = r.restrict(IntervalSet{{Scalar(0), Scalar(1, 6)}, {Scalar(1, 3), Scalar(1, 2)}});
    CHECK(split.d() == 2);
    CHECK(split.has("A_1"));
    CHECK(split.has("A_2"));

    CHECK_THROWS_AS(cyl().restrict(IntervalSet{{Scalar(0), Scalar(1, 2)}}), std::invalid_argument);

    // a sub-interval of one letter of a 4-IET opens new gaps
    const Scalar q(1, 4);
    const GGiet iet(Layout({Item::interval("A", q), Item::interval("B", q), Item::interval("C", q), Item::interval("D", q)}),
                    Layout({Item::interval("D", q), Item::interval("C", q), Item::interval("B", q), Item::interval("A", q)}),
                    {{"A", 1}, {"B", 1}, {"C", 1}, {"D", 1}});
    const GGiet blue = iet.restrict(IntervalSet{{Scalar(5, 16), Scalar(7, 16)}});
    CHECK(blue.d() == 1);
    CHECK(blue.top_gaps().size() >= 1);
    CHECK(blue.bottom_gaps().size() >= 1);
}

TEST_CASE("restrict to the domain is the identity and restrictions validate") {
    testgen::Rng rng(33);
    for (int i = 0; i < 100; ++i) {
        const GGiet m = testgen::random_map(rng);
        CHECK(m.restrict(m.domain()) == m);
        const IntervalSet J = m.domain().intersect(IntervalSet{testgen::random_subinterval(rng, m.length())});
        const GGiet r = m.restrict(J);
        CHECK(validate(r).empty());
        CHECK(r.domain() == J);
        CHECK(r.length() == m.length());
    }
}

TEST_CASE("extended combinatorics round-trip") {
    testgen::Rng rng(34);
    for (int i = 0; i < 100; ++i) {
        const GGiet m = testgen::random_map(rng);
        std::map<Label, Scalar> lengths;
        for (const auto& a : m.labels()) lengths[a] = m.top_interval(a).length();
        std::vector<Scalar> tg, bg;
        for (const auto& g : m.top_gaps()) tg.push_back(g.length());
        for (const auto& g : m.bottom_gaps()) bg.push_back(g.length());
        const GGiet back = GGiet::from_comb(m.comb(), lengths, tg, bg, m.slopes());
        CHECK(back == m);
    }
}

TEST_CASE("comb data") {
    const CombData c = cyl().comb();
    CHECK(c.pi_top.at("A") == 1);
    CHECK(c.extended_top.size() == 3);
    CHECK_FALSE(c.extended_top[0].has_value());
    CHECK(c.extended_top[1] == std::optional<Label>("A"));
}

TEST_CASE("from_branches rejects overlaps") {
    std::vector<Branch> bs = {{"A", {Scalar(0), Scalar(1, 2)}, Scalar(1), Scalar(0)},
                              {"B", {Scalar(1, 4), Scalar(3, 4)}, Scalar(1), Scalar(1, 2)}};
    CHECK_THROWS_AS(GGiet::from_branches(Scalar(1), bs), std::invalid_argument);
}

TEST_CASE("empty map") {
    const GGiet e;
    CHECK(e.d() == 0);
    CHECK(e.length() == Scalar(0));
    CHECK(e.domain().empty());
}
