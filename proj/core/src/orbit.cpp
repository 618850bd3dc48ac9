#include "giet/orbit.hpp"

#include <algorithm>

namespace giet {

namespace {

struct Walk {
    std::vector<Scalar> points;
    bool returned = false;
    int steps = 0;
    std::optional<std::size_t> exit_gap;
    int exit_index = -1;
};

template <typename Step>
Walk walk(const Scalar& x, int horizon, bool keep, Step step) {
    Walk w;
    Scalar y = x;
    for (int k = 1; k <= horizon; ++k) {
        ApplyResult r = step(y);
        if (!r.defined()) {
            w.exit_gap = r.gap;
            w.exit_index = k - 1;
            return w;
        }
        y = std::move(*r.value);
        w.steps = k;
        if (keep) w.points.push_back(y);
        if (y == x) {
            w.returned = true;
            return w;
        }
    }
    return w;
}

}  // namespace

OrbitRecord classify_orbit(const GGiet& m, const Scalar& x, int horizon, bool keep_iterates) {
    if (x.sign() < 0 || !(x < m.length())) throw std::out_of_range("classify_orbit: seed outside [0, L)");
    OrbitRecord rec;
    rec.seed = x;
    Walk fwd = walk(x, horizon, keep_iterates, [&](const Scalar& y) { return m.apply(y); });
    Walk bwd = walk(x, horizon, keep_iterates, [&](const Scalar& y) { return m.apply_inverse(y); });
    rec.forward = std::move(fwd.points);
    rec.backward = std::move(bwd.points);
    rec.forward_exit_gap = fwd.exit_gap;
    rec.backward_exit_gap = bwd.exit_gap;
    if (fwd.returned) {
        rec.classification = Periodic{fwd.steps};
    } else if (fwd.exit_gap && bwd.exit_gap) {
        rec.classification = Transient{bwd.exit_index, fwd.exit_index - 1};
    } else {
        rec.classification = Undecided{horizon};
    }
    return rec;
}

std::string to_string(const OrbitClass& c) {
    if (auto t = std::get_if<Transient>(&c)) {
        return "transient(m=" + std::to_string(t->m) + ", l=" + std::to_string(t->l) + ")";
    }
    if (auto p = std::get_if<Periodic>(&c)) return "periodic(" + std::to_string(p->period) + ")";
    return "undecided(" + std::to_string(std::get<Undecided>(c).horizon) + ")";
}

TransitionCheck is_transition_domain(const GGiet& m, const std::vector<Scalar>& samples, int horizon) {
    bool undecided = false;
    for (const auto& x : samples) {
        const OrbitRecord rec = classify_orbit(m, x, horizon, false);
        if (std::holds_alternative<Periodic>(rec.classification)) return {DomainVerdict::FoundNonTransient, x};
        if (std::holds_alternative<Undecided>(rec.classification)) undecided = true;
    }
    return {undecided ? DomainVerdict::Undecided : DomainVerdict::AllTransient, std::nullopt};
}

IntervalSet image_of(const GGiet& m, const IntervalSet& s) {
    std::vector<Interval> out;
    const auto spans = m.top().spans();
    for (const auto& piece : s.pieces()) {
        for (std::size_t i = 0; i < spans.size(); ++i) {
            auto part = spans[i].intersect(piece);
            if (!part) continue;
            const auto& item = m.top().items()[i];
            if (item.gap) throw LeftDomain(0, "set meets the top gap " + to_string(spans[i]));
            const Scalar lo = m.branch(item.label, part->lo);
            out.push_back({lo, lo + m.slope(item.label) * part->length()});
        }
    }
    return IntervalSet(std::move(out));
}

WanderingResult check_wandering(const GGiet& m, const Interval& J, int n, Direction direction) {
    IntervalSet seen{J};
    auto run = [&](const GGiet& map, int sign) -> std::optional<int> {
        IntervalSet cur{J};
        for (int k = 1; k <= n; ++k) {
            try {
                cur = image_of(map, cur);
            } catch (const LeftDomain&) {
                throw LeftDomain(sign * k, "image " + std::to_string(sign * k) + " of " + to_string(J) +
                                               " leaves the domain");
            }
            if (seen.intersects(cur)) return sign * k;
            seen = seen.unite(cur);
        }
        return std::nullopt;
    };
    if (direction != Direction::Backward) {
        if (auto k = run(m, 1)) return {false, *k};
    }
    if (direction != Direction::Forward) {
        if (auto k = run(m.invert(), -1)) return {false, *k};
    }
    return {true, n};
}

std::optional<std::string> verify_tower(const GGiet& m, const std::vector<TowerBase>& bases,
                                        const GGiet* accelerated) {
    struct Floor {
        Interval iv;
        std::size_t tower;
        int level;
    };
    const IntervalSet dom = m.domain();
    std::vector<Floor> floors;
    for (std::size_t t = 0; t < bases.size(); ++t) {
        IntervalSet cur{bases[t].base};
        for (int i = 0; i < bases[t].height; ++i) {
            if (!dom.contains(cur)) {
                return "floor " + std::to_string(i) + " of tower " + std::to_string(t) + " leaves the domain";
            }
            for (const auto& piece : cur.pieces()) floors.push_back({piece, t, i});
            if (i + 1 < bases[t].height) cur = image_of(m, cur);
        }
    }
    std::sort(floors.begin(), floors.end(), [](const Floor& a, const Floor& b) { return a.iv.lo < b.iv.lo; });
    for (std::size_t i = 1; i < floors.size(); ++i) {
        if (floors[i].iv.lo < floors[i - 1].iv.hi) {
            return "floor " + std::to_string(floors[i - 1].level) + " of tower " + std::to_string(floors[i - 1].tower) +
                   " overlaps floor " + std::to_string(floors[i].level) + " of tower " +
                   std::to_string(floors[i].tower);
        }
    }
    if (accelerated) {
        for (std::size_t t = 0; t < bases.size(); ++t) {
            const Interval& b = bases[t].base;
            for (int s = 0; s < 5; ++s) {
                const Scalar x = b.lo + b.length() * Scalar(2 * s + 1, 10);
                Scalar y = x;
                for (int i = 0; i < bases[t].height; ++i) {
                    auto r = m.apply(y);
                    if (!r.defined()) return "sample " + x.to_string() + " of tower " + std::to_string(t) + " escapes";
                    y = std::move(*r.value);
                }
                auto r = accelerated->apply(x);
                if (!r.defined() || *r.value != y) {
                    return "accelerated map disagrees with T^" + std::to_string(bases[t].height) + " at " +
                           x.to_string();
                }
            }
        }
    }
    return std::nullopt;
}

std::optional<int> return_time(const GGiet& m, const Scalar& x, const Interval& J, int horizon) {
    Scalar y = x;
    for (int k = 1; k <= horizon; ++k) {
        auto r = m.apply(y);
        if (!r.defined()) return std::nullopt;
        y = std::move(*r.value);
        if (J.contains(y)) return k;
    }
    return std::nullopt;
}

std::vector<Scalar> sample_points(const IntervalSet& region, int count) {
    std::vector<Scalar> out;
    if (region.empty() || count <= 0) return out;
    const Scalar total = region.measure();
    const auto& pieces = region.pieces();
    for (const auto& p : pieces) {
        if (static_cast<int>(out.size()) >= count) break;
        out.push_back(p.lo + p.length() / Scalar(1000000));
    }
    const int remaining = count - static_cast<int>(out.size());
    if (remaining <= 0) return out;
    // Midpoints of a uniform refinement of the region by measure.
    Scalar offset;
    std::size_t idx = 0;
    for (int j = 0; j < remaining; ++j) {
        Scalar target = total * Scalar(2 * j + 1, 2 * remaining);
        while (idx + 1 < pieces.size() && !(target < offset + pieces[idx].length())) {
            offset += pieces[idx].length();
            ++idx;
        }
        out.push_back(pieces[idx].lo + (target - offset));
    }
    return out;
}

}  // namespace giet
