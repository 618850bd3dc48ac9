#include "giet/first_return.hpp"

#include <set>

namespace giet {

HorizonExceeded::HorizonExceeded(Interval p, int h)
    : std::runtime_error("first return of piece " + to_string(p) + " exceeds horizon " + std::to_string(h)),
      piece(std::move(p)),
      horizon(h) {}

namespace {

struct Piece {
    Interval orig;
    Interval cur;
    Label label;
    int k = 0;
    std::vector<Label> itin;
    Interval cp;
    int cp_k = 0;
};

struct Returned {
    Interval orig;
    Interval image;
    int time;
    std::vector<Label> itin;
};

/// Sub-interval of `from` corresponding to `sub` of `to`, both affine images of one piece.
Interval pull(const Interval& from, const Interval& to, const Interval& sub) {
    const Scalar ratio = from.length() / to.length();
    const Scalar lo = from.lo + (sub.lo - to.lo) * ratio;
    return {lo, lo + sub.length() * ratio};
}

std::vector<std::pair<Interval, std::optional<Label>>> split_by_top(const GGiet& m, const Interval& q) {
    std::vector<std::pair<Interval, std::optional<Label>>> out;
    const auto spans = m.top().spans();
    for (std::size_t i = 0; i < spans.size(); ++i) {
        auto part = spans[i].intersect(q);
        if (!part) continue;
        const auto& item = m.top().items()[i];
        out.emplace_back(std::move(*part), item.gap ? std::nullopt : std::optional<Label>(item.label));
    }
    return out;
}

/// True when q lies in the top interval of a contracting letter whose fixed point x is in that interval too,
/// and the hull of q and x misses J. The hull is then mapped into itself.
bool attracted(const GGiet& m, const Label& a, const Interval& q, const Interval& J) {
    const Scalar& s = m.slope(a);
    if (!(s < Scalar(1))) return false;
    const Interval& top = m.top_interval(a);
    const Scalar x = (m.bottom_interval(a).lo - s * top.lo) / (Scalar(1) - s);
    if (!top.contains(x)) return false;
    const Interval hull{min(q.lo, x), max(q.hi, x)};
    return !hull.intersect(J) && !J.contains(x);
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Label name_for(const std::vector<Label>& itin, std::set<Label>& taken) {
    bool single = true;
    for (const auto& a : itin) single = single && a.size() == 1;
    Label base;
    for (std::size_t i = 0; i < itin.size(); ++i) {
        if (i && !single) base += '.';
        base += itin[i];
    }
    Label name = base;
    for (int n = 2; taken.count(name); ++n) name = base + "#" + std::to_string(n);
    taken.insert(name);
    return name;
}

}  // namespace

FirstReturn first_return(const GGiet& m, const Interval& J, int horizon, ExcessPolicy policy) {
    if (J.empty() || J.lo.sign() < 0 || m.length() < J.hi) {
        throw std::invalid_argument("first_return: " + to_string(J) + " is not a nonempty subinterval of [0, L)");
    }
    FirstReturn result;
    std::vector<Returned> returned;
    std::vector<Piece> stack;
    for (auto& [iv, label] : split_by_top(m, J)) {
        if (!label) {
            result.lost.push_back(iv);
            continue;
        }
        stack.push_back({iv, iv, *label, 0, {}, iv, 0});
    }

    while (!stack.empty()) {
        Piece p = std::move(stack.back());
        stack.pop_back();
        const Scalar lo = m.branch(p.label, p.cur.lo);
        const Interval img{lo, lo + m.slope(p.label) * p.cur.length()};
        const int nk = p.k + 1;
        std::vector<Label> itin = p.itin;
        itin.push_back(p.label);

        if (auto inside = img.intersect(J)) {
            returned.push_back({pull(p.orig, img, *inside), *inside, nk, itin});
        }
        const Interval outside[2] = {{img.lo, min(img.hi, J.lo)}, {max(img.lo, J.hi), img.hi}};
        for (const auto& part : outside) {
            if (part.empty()) continue;
            for (auto& [sub, label] : split_by_top(m, part)) {
                const Interval orig = pull(p.orig, img, sub);
                if (!label) {
                    result.lost.push_back(orig);
                    continue;
                }
                Interval cp_sub = p.cp_k > 0 ? pull(p.cp, img, sub) : sub;
                if ((p.cp_k > 0 && cp_sub.contains(sub)) || attracted(m, *label, sub, J)) {
                    result.lost.push_back(orig);
                    continue;
                }
                if (nk >= horizon) {
                    if (policy == ExcessPolicy::Throw) throw HorizonExceeded(orig, horizon);
                    result.over_horizon.push_back(orig);
                    continue;
                }
                Piece next{orig, sub, *label, nk, itin, std::move(cp_sub), p.cp_k};
                if (power_of_two(nk)) {
                    next.cp = sub;
                    next.cp_k = nk;
                }
                stack.push_back(std::move(next));
            }
        }
    }

    std::set<Label> taken;
    std::vector<Branch> branches;
    for (auto& r : returned) {
        Label name = name_for(r.itin, taken);
        const Scalar slope = r.image.length() / r.orig.length();
        branches.push_back({name, r.orig, slope, r.image.lo});
        result.return_time[name] = r.time;
        result.itinerary[name] = std::move(r.itin);
    }
    result.map = GGiet::from_branches(J.hi, std::move(branches));
    return result;
}

}  // namespace giet
