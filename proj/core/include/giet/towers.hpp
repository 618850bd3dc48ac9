#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "giet/ggiet.hpp"
#include "giet/rauzy_veech.hpp"

namespace giet {

struct Floor {
    Label label;
    long level;
    Interval interval;
};

struct TowerRep {
    GGiet base;
    std::map<Label, long> heights;
    std::vector<Floor> floors;
    std::map<std::pair<Label, long>, long> ord;

    IntervalSet region() const;
};

struct TowerError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Floors T^i(I_b), 0 <= i < heights[b], for every base interval. Throws TowerError when a floor
/// escapes the domain, splits, or overlaps another floor, or when the total floor count exceeds max_floors.
TowerRep build_tower_rep(const GGiet& ambient, const GGiet& base, const Heights& heights,
                         long max_floors = 2'000'000);

struct OrderComparison {
    bool same;
    std::optional<std::pair<Label, long>> differ_at;
};

/// Throws std::invalid_argument when label sets or heights differ.
OrderComparison compare_orders(const TowerRep& a, const TowerRep& b);

struct SemiconjugacyWitness {
    bool ok = false;
    std::string failure;
    /// The IET the map is compared against.
    GGiet target;
    int depth = 0;
    /// Depth at which tower orders were compared (limited by floor count).
    int tower_depth = 0;
    Label marked;
    int orbit_length = 0;
    std::vector<Label> path;
};

/// Replays the reduced winner stream from the stable snapshot as a Rauzy path and builds an IET with
/// the same permutation realizing it (Perron vector for a certified 2-letter period, pulled-back
/// lengths otherwise), or uses `target`. Then checks heights, tower orders and the order of the
/// forward orbit of a marked left endpoint. Throws std::invalid_argument when the preconditions fail.
SemiconjugacyWitness semiconjugacy_witness(const GGiet& m, const RVState& state, const Stability& stability,
                                           int depth, const GGiet* target = nullptr);

}  // namespace giet
