#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "giet/ggiet.hpp"

namespace giet {

/// T^{-m}(seed) lies in a bottom gap and T^{l+1}(seed) lies in a top gap.
struct Transient {
    int m;
    int l;
};
struct Periodic {
    int period;
};
struct Undecided {
    int horizon;
};

using OrbitClass = std::variant<Transient, Periodic, Undecided>;

struct OrbitRecord {
    Scalar seed;
    /// T(seed), T^2(seed), ... up to the exit point, the return to seed, or the horizon.
    std::vector<Scalar> forward;
    std::vector<Scalar> backward;
    OrbitClass classification;
    std::optional<std::size_t> forward_exit_gap;
    std::optional<std::size_t> backward_exit_gap;
};

constexpr int kDefaultHorizon = 10000;

OrbitRecord classify_orbit(const GGiet& m, const Scalar& x, int horizon = kDefaultHorizon,
                           bool keep_iterates = true);

std::string to_string(const OrbitClass& c);

enum class DomainVerdict { AllTransient, FoundNonTransient, Undecided };

struct TransitionCheck {
    DomainVerdict verdict;
    std::optional<Scalar> witness;
};

/// Sound when it finds a periodic sample; AllTransient only speaks for the samples given.
TransitionCheck is_transition_domain(const GGiet& m, const std::vector<Scalar>& samples,
                                     int horizon = kDefaultHorizon);

enum class Direction { Forward, Backward, Both };

/// Thrown when an image of the interval reaches a gap before the requested count.
struct LeftDomain : std::runtime_error {
    LeftDomain(int step, const std::string& what) : std::runtime_error(what), step(step) {}
    int step;
};

struct WanderingResult {
    bool disjoint;
    /// n when disjoint, otherwise the first index whose image meets an earlier one
    /// (negative for backward images).
    int k;
};

WanderingResult check_wandering(const GGiet& m, const Interval& J, int n, Direction direction);

/// Image of a set under m. Throws LeftDomain(0, ...) when part of the set is outside the domain.
IntervalSet image_of(const GGiet& m, const IntervalSet& s);

struct TowerBase {
    Interval base;
    int height;
};

/// Empty when the floors T^i(base), i < height, are pairwise disjoint and stay in the domain,
/// and (if given) the accelerated map agrees with T^height on sample points of every base.
std::optional<std::string> verify_tower(const GGiet& m, const std::vector<TowerBase>& bases,
                                        const GGiet* accelerated = nullptr);

/// Smallest k >= 1 with T^k(x) in J, if reached within the horizon.
std::optional<int> return_time(const GGiet& m, const Scalar& x, const Interval& J, int horizon);

/// Midpoints of a uniform refinement plus each left endpoint nudged right by a millionth of its piece.
std::vector<Scalar> sample_points(const IntervalSet& region, int count);

}  // namespace giet
