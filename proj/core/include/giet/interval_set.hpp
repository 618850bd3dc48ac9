#pragma once

#include <optional>
#include <string>
#include <vector>

#include "giet/scalar.hpp"

namespace giet {

/// Right-open interval [lo, hi). Empty when hi <= lo.
struct Interval {
    Scalar lo;
    Scalar hi;

    Scalar length() const { return hi - lo; }
    bool empty() const { return !(lo < hi); }
    bool contains(const Scalar& x) const { return !(x < lo) && x < hi; }
    bool contains(const Interval& other) const { return !(other.lo < lo) && !(hi < other.hi); }
    bool intersects(const Interval& other) const { return lo < other.hi && other.lo < hi; }
    std::optional<Interval> intersect(const Interval& other) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

std::string to_string(const Interval& iv);

/// Finite union of right-open intervals, kept sorted with touching pieces merged.
class IntervalSet {
public:
    IntervalSet() = default;
    IntervalSet(std::initializer_list<Interval> pieces);
    explicit IntervalSet(std::vector<Interval> pieces);

    const std::vector<Interval>& pieces() const { return pieces_; }
    bool empty() const { return pieces_.empty(); }
    Scalar measure() const;
    bool contains(const Scalar& x) const;
    bool contains(const Interval& iv) const;
    bool contains(const IntervalSet& other) const;

    IntervalSet unite(const IntervalSet& other) const;
    IntervalSet intersect(const IntervalSet& other) const;
    IntervalSet subtract(const IntervalSet& other) const;
    bool intersects(const IntervalSet& other) const { return !intersect(other).empty(); }

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    void normalize();
    std::vector<Interval> pieces_;
};

std::string to_string(const IntervalSet& set);

}  // namespace giet
