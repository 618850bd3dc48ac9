#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "giet/ggiet.hpp"

namespace giet {

struct HorizonExceeded : std::runtime_error {
    HorizonExceeded(Interval piece, int horizon);
    Interval piece;
    int horizon;
};

enum class ExcessPolicy {
    Throw,
    /// Pieces still travelling at the horizon are left out of the result and listed.
    Exclude,
};

struct FirstReturn {
    /// Map on [0, b) whose domain is the returning part of J = [a, b).
    GGiet map;
    std::map<Label, int> return_time;
    std::map<Label, std::vector<Label>> itinerary;
    /// Parts of J that provably never come back (they fall into a gap or get trapped outside J).
    std::vector<Interval> lost;
    std::vector<Interval> over_horizon;
};

/// First return map of m to J. Pieces are followed as whole intervals; a piece is
/// declared trapped when one of its images lands inside an earlier image outside J.
FirstReturn first_return(const GGiet& m, const Interval& J, int horizon,
                         ExcessPolicy policy = ExcessPolicy::Throw);

}  // namespace giet
