#include "giet/interval_set.hpp"

#include <algorithm>

namespace giet {

std::optional<Interval> Interval::intersect(const Interval& other) const {
    Interval r{max(lo, other.lo), min(hi, other.hi)};
    if (r.empty()) return std::nullopt;
    return r;
}

std::string to_string(const Interval& iv) {
    return "[" + iv.lo.to_string() + ", " + iv.hi.to_string() + ")";
}

IntervalSet::IntervalSet(std::initializer_list<Interval> pieces) : pieces_(pieces) { normalize(); }

IntervalSet::IntervalSet(std::vector<Interval> pieces) : pieces_(std::move(pieces)) { normalize(); }

void IntervalSet::normalize() {
    std::erase_if(pieces_, [](const Interval& iv) { return iv.empty(); });
    std::sort(pieces_.begin(), pieces_.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    std::vector<Interval> merged;
    merged.reserve(pieces_.size());
    for (auto& iv : pieces_) {
        if (!merged.empty() && !(merged.back().hi < iv.lo)) {
            if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
        } else {
            merged.push_back(std::move(iv));
        }
    }
    pieces_ = std::move(merged);
}

Scalar IntervalSet::measure() const {
    Scalar total;
    for (const auto& iv : pieces_) total += iv.length();
    return total;
}

bool IntervalSet::contains(const Scalar& x) const {
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& iv) { return iv.contains(x); });
}

bool IntervalSet::contains(const Interval& iv) const {
    if (iv.empty()) return true;
    return std::any_of(pieces_.begin(), pieces_.end(), [&](const Interval& p) { return p.contains(iv); });
}

bool IntervalSet::contains(const IntervalSet& other) const {
    return std::all_of(other.pieces_.begin(), other.pieces_.end(),
                       [&](const Interval& iv) { return contains(iv); });
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
    std::vector<Interval> all = pieces_;
    all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
    return IntervalSet(std::move(all));
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    while (i < pieces_.size() && j < other.pieces_.size()) {
        if (auto r = pieces_[i].intersect(other.pieces_[j])) out.push_back(std::move(*r));
        if (pieces_[i].hi < other.pieces_[j].hi) {
            ++i;
        } else {
            ++j;
        }
    }
    return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
    std::vector<Interval> out;
    for (const auto& iv : pieces_) {
        Scalar cursor = iv.lo;
        for (const auto& cut : other.pieces_) {
            if (!(cut.lo < iv.hi)) break;
            if (!(cursor < cut.hi)) continue;
            if (cursor < cut.lo) out.push_back({cursor, cut.lo});
            cursor = max(cursor, cut.hi);
        }
        if (cursor < iv.hi) out.push_back({cursor, iv.hi});
    }
    return IntervalSet(std::move(out));
}

std::string to_string(const IntervalSet& set) {
    std::string out = "{";
    for (std::size_t i = 0; i < set.pieces().size(); ++i) {
        if (i) out += ", ";
        out += to_string(set.pieces()[i]);
    }
    return out + "}";
}

}  // namespace giet
