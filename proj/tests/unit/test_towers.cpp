#include "corpus.hpp"
#include "doctest.h"
#include "generators.hpp"
#include "giet/orbit.hpp"
#include "giet/towers.hpp"

using namespace giet;

namespace {

GGiet rotation(const Scalar& a_len, const Scalar& b_len) {
    return GGiet(Layout({Item::interval("A", a_len), Item::interval("B", b_len)}),
                 Layout({Item::interval("B", b_len), Item::interval("A", a_len)}), {{"A", 1}, {"B", 1}});
}

Scalar golden() { return Scalar::quadratic(mpq_class(-1, 2), mpq_class(1, 2), 5); }

std::vector<TowerBase> bases_of(const TowerRep& rep) {
    std::vector<TowerBase> out;
    for (const auto& a : rep.base.labels()) {
        out.push_back({rep.base.top_interval(a), static_cast<int>(rep.heights.at(a))});
    }
    return out;
}

}  // namespace

TEST_CASE("rotation floors") {
    const GGiet r = rotation(Scalar(2, 3), Scalar(1, 3));
    const GGiet base(Layout({Item::interval("A", Scalar(1, 3)), Item::make_gap(Scalar(2, 3))}),
                     Layout({Item::interval("A", Scalar(1, 3)), Item::make_gap(Scalar(2, 3))}), {{"A", 1}});
    const TowerRep rep = build_tower_rep(r, base, {{"A", 3}});
    REQUIRE(rep.floors.size() == 3);
    CHECK(rep.floors[0].interval == Interval{Scalar(0), Scalar(1, 3)});
    CHECK(rep.floors[1].interval == Interval{Scalar(1, 3), Scalar(2, 3)});
    CHECK(rep.floors[2].interval == Interval{Scalar(2, 3), Scalar(1)});
    CHECK(rep.ord.at({"A", 0}) == 0);
    CHECK(rep.ord.at({"A", 1}) == 1);
    CHECK(rep.ord.at({"A", 2}) == 2);
    CHECK(rep.region() == IntervalSet{{Scalar(0), Scalar(1)}});
    CHECK_FALSE(verify_tower(r, bases_of(rep), &base).has_value());

    const TowerRep one = build_tower_rep(r, base, {{"A", 1}});
    CHECK(one.floors.size() == 1);
    CHECK(one.region() == IntervalSet{{Scalar(0), Scalar(1, 3)}});

    CHECK_THROWS_AS(build_tower_rep(r, base, {{"A", 4}}), TowerError);
}

TEST_CASE("floors escaping through a gap are rejected") {
    const GGiet s(Layout({Item::interval("A", Scalar(1, 2)), Item::make_gap(Scalar(1, 2))}),
                  Layout({Item::make_gap(Scalar(1, 2)), Item::interval("A", Scalar(1, 2))}), {{"A", 1}});
    const GGiet base = s.restrict(IntervalSet{{Scalar(0), Scalar(1, 4)}});
    CHECK_NOTHROW(build_tower_rep(s, base, {{"A", 2}}));
    CHECK_THROWS_AS(build_tower_rep(s, base, {{"A", 3}}), TowerError);
}

TEST_CASE("towers from induction snapshots tile the induced orbits and pass verify_tower") {
    testgen::Rng rng(71);
    int built = 0;
    for (int i = 0; i < 60; ++i) {
        const GGiet m = testgen::random_map(rng);
        const RVState st = iterate(m, 15);
        std::optional<TowerRep> prev;
        for (int n = 0; n <= st.n; ++n) {
            const Snapshot& snap = st.history[n];
            if (snap.map.d() == 0) break;
            const TowerRep rep = build_tower_rep(m, snap.map, snap.heights);
            ++built;
            CHECK_FALSE(verify_tower(m, bases_of(rep)).has_value());
            for (const auto& f : rep.floors) CHECK(rep.ord.count({f.label, f.level}) == 1);
            // recursion: a 1a loser's tower is its old tower followed by the winner's
            if (prev && n > 0 && st.steps[n - 1].kind == StepCase::C1a) {
                const Label& l = st.steps[n - 1].loser.label;
                const Label& w = st.steps[n - 1].winner.label;
                CHECK(rep.heights.at(l) == prev->heights.at(l) + prev->heights.at(w));
            }
            prev = rep;
        }
    }
    CHECK(built > 100);
}

TEST_CASE("compare_orders") {
    const GGiet g = rotation(Scalar(1) - golden(), golden());
    const RVState st = iterate(g, 8);
    const Snapshot& snap = st.history.back();
    const TowerRep a = build_tower_rep(g, snap.map, snap.heights);
    CHECK(compare_orders(a, a).same);
    TowerRep b = a;
    auto first = b.ord.begin();
    auto second = std::next(first);
    std::swap(first->second, second->second);
    const OrderComparison c = compare_orders(a, b);
    CHECK_FALSE(c.same);
    REQUIRE(c.differ_at.has_value());
    CHECK(*c.differ_at == first->first);

    const TowerRep shorter = build_tower_rep(g, st.history[2].map, st.history[2].heights);
    CHECK_THROWS_AS(compare_orders(a, shorter), std::invalid_argument);
}

TEST_CASE("semiconjugacy witness: golden rotation against itself") {
    const GGiet g = rotation(Scalar(1) - golden(), golden());
    const RVState st = iterate(g, 60);
    const Stability stab = classify_stability(st, 20);
    const SemiconjugacyWitness w = semiconjugacy_witness(g, st, stab, 30);
    INFO(w.failure);
    CHECK(w.ok);
    CHECK(w.depth == 30);
    CHECK(w.orbit_length > 0);
    CHECK(w.target.d() == 2);
    const SemiconjugacyWitness self = semiconjugacy_witness(g, st, stab, 30, &g);
    INFO(self.failure);
    CHECK(self.ok);
}

TEST_CASE("semiconjugacy witness preconditions") {
    const GGiet cyl(Layout({Item::make_gap(Scalar(1, 4)), Item::interval("A", Scalar(1, 2)), Item::make_gap(Scalar(1, 4))}),
                    Layout({Item::make_gap(Scalar(3, 8)), Item::interval("A", Scalar(1, 4)), Item::make_gap(Scalar(3, 8))}),
                    {{"A", Scalar(1, 2)}});
    const RVState st = iterate(cyl, 10);
    const Stability stab = classify_stability(st, 8);
    CHECK_THROWS_AS(semiconjugacy_witness(cyl, st, stab, 10), std::invalid_argument);
}

TEST_CASE("semiconjugacy witness fails against a target with other combinatorics") {
    const GGiet g = rotation(Scalar(1) - golden(), golden());
    const RVState st = iterate(g, 60);
    const Stability stab = classify_stability(st, 20);
    const GGiet other = rotation(Scalar(2, 5), Scalar(3, 5));
    CHECK_FALSE(semiconjugacy_witness(g, st, stab, 30, &other).ok);
}

TEST_CASE("affine map with slopes 2 and 1/2 orders its orbit like the golden rotation") {
    // the induction follows the golden path for 38 steps
    const GGiet m = testdata::load("affine_golden");
    REQUIRE(validate(m).empty());
    CHECK(m.slope("A") == Scalar(2));
    CHECK(m.slope("B") == Scalar(1, 2));
    const RVState st = iterate(m, 12);
    const Stability stab = classify_stability(st, 6);
    REQUIRE(stab.kind == Stability::Kind::Stable);
    CHECK_FALSE(stab.certified);
    const GGiet target = rotation(golden(), Scalar(1) - golden());
    const SemiconjugacyWitness w = semiconjugacy_witness(m, st, stab, 30, &target);
    INFO(w.failure);
    CHECK(w.ok);
    CHECK(w.depth == 30);
    // heights along the path are Fibonacci numbers
    const RVState deep = iterate(m, 38);
    CHECK(deep.heights.at("A") == 196418);
    CHECK(deep.heights.at("B") == 121393);
    CHECK(iterate(m, 39).current.d() == 1);
}
