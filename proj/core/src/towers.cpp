#include "giet/towers.hpp"

#include <algorithm>
#include <numeric>

namespace giet {

IntervalSet TowerRep::region() const {
    std::vector<Interval> pieces;
    pieces.reserve(floors.size());
    for (const auto& f : floors) pieces.push_back(f.interval);
    return IntervalSet(std::move(pieces));
}

namespace {

long to_long(const Height& h) {
    if (!h.fits_slong_p()) throw TowerError("tower height " + h.get_str() + " is too large");
    return h.get_si();
}

}  // namespace

TowerRep build_tower_rep(const GGiet& ambient, const GGiet& base, const Heights& heights, long max_floors) {
    TowerRep rep;
    rep.base = base;
    long total = 0;
    for (const auto& b : base.labels()) {
        auto it = heights.find(b);
        const long h = it == heights.end() ? 1 : to_long(it->second);
        if (h < 1) throw TowerError("height of " + b + " must be positive");
        total += h;
        if (total > max_floors) throw TowerError("tower has more than " + std::to_string(max_floors) + " floors");
        rep.heights[b] = h;
    }
    for (const auto& b : base.labels()) {
        Interval cur = base.top_interval(b);
        const long h = rep.heights[b];
        for (long i = 0; i < h; ++i) {
            rep.floors.push_back({b, i, cur});
            if (i + 1 == h) break;
            auto lab = ambient.top_label_at(cur.lo);
            if (!lab || !ambient.top_interval(*lab).contains(cur)) {
                throw TowerError("floor " + std::to_string(i) + " of " + b + " " + to_string(cur) +
                                 " is not inside one domain interval");
            }
            const Scalar lo = ambient.branch(*lab, cur.lo);
            cur = {lo, lo + ambient.slope(*lab) * cur.length()};
        }
    }
    std::vector<std::size_t> idx(rep.floors.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t x, std::size_t y) { return rep.floors[x].interval.lo < rep.floors[y].interval.lo; });
    for (std::size_t r = 0; r < idx.size(); ++r) {
        const Floor& f = rep.floors[idx[r]];
        if (r > 0) {
            const Floor& prev = rep.floors[idx[r - 1]];
            if (f.interval.lo < prev.interval.hi) {
                throw TowerError("floor (" + prev.label + ", " + std::to_string(prev.level) + ") overlaps (" + f.label +
                                 ", " + std::to_string(f.level) + ")");
            }
        }
        rep.ord[{f.label, f.level}] = static_cast<long>(r);
    }
    return rep;
}

OrderComparison compare_orders(const TowerRep& a, const TowerRep& b) {
    if (a.heights != b.heights) throw std::invalid_argument("compare_orders: towers have different shapes");
    for (const auto& f : a.floors) {
        const auto key = std::make_pair(f.label, f.level);
        if (a.ord.at(key) != b.ord.at(key)) return {false, key};
    }
    return {true, std::nullopt};
}

namespace {

struct Move {
    Label winner;
    Label loser;
    Side side;
};

std::vector<Label> bottom_order(const GGiet& m) { return m.bottom().labels(); }

GGiet make_iet(const std::vector<Label>& top, const std::vector<Label>& bottom, const std::map<Label, Scalar>& len) {
    std::vector<Item> t, b;
    std::map<Label, Scalar> slopes;
    for (const auto& a : top) {
        t.push_back(Item::interval(a, len.at(a)));
        slopes.emplace(a, Scalar(1));
    }
    for (const auto& a : bottom) b.push_back(Item::interval(a, len.at(a)));
    return GGiet(Layout(std::move(t)), Layout(std::move(b)), std::move(slopes));
}

/// Lengths after the moves are pulled back to the start: the winner was longer by the loser's length.
std::map<Label, Scalar> pull_back(const std::vector<Move>& moves, std::map<Label, Scalar> len) {
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) len[it->winner] += len[it->loser];
    return len;
}

/// Perron eigenvector of the 2x2 product of elementary matrices along one period.
std::optional<std::map<Label, Scalar>> perron_lengths(const std::vector<Label>& labels, const std::vector<Move>& moves) {
    if (labels.size() != 2 || moves.empty()) return std::nullopt;
    // Column j of the product is the pull-back of the unit vector e_j.
    mpz_class mat[2][2];
    for (int j = 0; j < 2; ++j) {
        std::map<Label, Scalar> e{{labels[0], Scalar(j == 0 ? 1 : 0)}, {labels[1], Scalar(j == 1 ? 1 : 0)}};
        auto col = pull_back(moves, e);
        for (int i = 0; i < 2; ++i) mat[i][j] = col[labels[i]].rational_part().get_num();
    }
    const mpz_class a = mat[0][0], b = mat[0][1], c = mat[1][0], d = mat[1][1];
    const mpz_class disc = (a - d) * (a - d) + 4 * b * c;
    if (disc <= 0 || b == 0) return std::nullopt;
    // disc = s^2 f with f square-free.
    mpz_class s = 1, f = disc;
    for (mpz_class p = 2; p * p <= f; ++p) {
        while (f % (p * p) == 0) {
            f /= p * p;
            s *= p;
        }
    }
    Scalar root;
    if (f == 1) {
        root = Scalar(mpq_class(s));
    } else {
        if (!f.fits_slong_p()) return std::nullopt;
        root = Scalar::quadratic(0, mpq_class(s), f.get_si());
    }
    const Scalar mu = (Scalar(mpq_class(a + d)) + root) / Scalar(2);
    Scalar v0{mpq_class(b)};
    Scalar v1 = mu - Scalar(mpq_class(a));
    const Scalar total = v0 + v1;
    return std::map<Label, Scalar>{{labels[0], v0 / total}, {labels[1], v1 / total}};
}

std::vector<std::size_t> rank_of(const std::vector<Scalar>& xs) {
    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
    return idx;
}

}  // namespace

SemiconjugacyWitness semiconjugacy_witness(const GGiet& m, const RVState& state, const Stability& stability,
                                           int depth, const GGiet* target) {
    if (state.history.empty() || !(state.history.front().map == m)) {
        throw std::invalid_argument("semiconjugacy_witness: state was not computed from this map");
    }
    if (stability.kind != Stability::Kind::Stable || stability.a_inf.size() < 2) {
        throw std::invalid_argument("semiconjugacy_witness: needs a stable state with at least two recurrent letters");
    }
    if (inf_complete(state, stability).kind != Completeness::Kind::Yes) {
        throw std::invalid_argument("semiconjugacy_witness: rotation number is not infinite complete");
    }
    SemiconjugacyWitness w;
    w.depth = depth;
    const GGiet& start = state.history[stability.at_step].map;
    const RVState local = iterate(start, depth);
    if (local.n < depth) {
        w.failure = "induction stopped after " + std::to_string(local.n) + " steps";
        return w;
    }
    std::vector<Move> moves;
    std::vector<int> moves_before(depth + 1, 0);
    for (int i = 0; i < depth; ++i) {
        const RVStep& st = local.steps[i];
        if (st.deleted) {
            w.failure = "a letter is deleted at step " + std::to_string(i + 1);
            return w;
        }
        if (st.kind == StepCase::C1a) moves.push_back({st.winner.label, st.loser.label, st.winner.side});
        moves_before[i + 1] = static_cast<int>(moves.size());
    }
    for (const auto& mv : moves) w.path.push_back(mv.winner);

    const std::vector<Label> top = start.labels();
    const std::vector<Label> bottom = bottom_order(start);
    if (target) {
        w.target = *target;
    } else {
        std::optional<std::map<Label, Scalar>> len;
        if (stability.certificate) {
            std::vector<Move> period;
            for (int i = 0; i < stability.certificate->period; ++i) {
                const RVStep& st = local.steps[i];
                if (st.kind == StepCase::C1a) period.push_back({st.winner.label, st.loser.label, st.winner.side});
            }
            len = perron_lengths(top, period);
        }
        if (!len) {
            std::map<Label, Scalar> ones;
            for (const auto& a : top) ones[a] = Scalar(1);
            len = pull_back(moves, ones);
        }
        w.target = make_iet(top, bottom, *len);
    }
    if (w.target.labels() != top || bottom_order(w.target) != bottom) {
        w.failure = "target permutation differs from the map's";
        return w;
    }

    const int k = static_cast<int>(moves.size());
    const RVState replay = iterate(w.target, k);
    if (replay.n < k) {
        w.failure = "target induction stops after " + std::to_string(replay.n) + " steps";
        return w;
    }
    for (int i = 0; i < k; ++i) {
        const RVStep& st = replay.steps[i];
        if (st.kind != StepCase::C1a || st.winner.label != moves[i].winner) {
            w.failure = "target leaves the path at move " + std::to_string(i + 1);
            return w;
        }
    }
    if (replay.heights != local.heights) {
        w.failure = "heights differ at depth " + std::to_string(depth);
        return w;
    }

    constexpr long kFloorCap = 20000;
    int tower_depth = depth;
    auto floors_at = [&](int n) {
        Height total = 0;
        for (const auto& [a, h] : local.history[n].heights) total += h;
        return total;
    };
    while (tower_depth > 0 && floors_at(tower_depth) > kFloorCap) --tower_depth;
    w.tower_depth = tower_depth;
    try {
        const Snapshot& gs = local.history[tower_depth];
        const Snapshot& ts = replay.history[moves_before[tower_depth]];
        const TowerRep a = build_tower_rep(start, gs.map, gs.heights);
        const TowerRep b = build_tower_rep(w.target, ts.map, ts.heights);
        const OrderComparison cmp = compare_orders(a, b);
        if (!cmp.same) {
            w.failure = "tower orders differ at floor (" + cmp.differ_at->first + ", " +
                        std::to_string(cmp.differ_at->second) + ")";
            return w;
        }
    } catch (const std::exception& e) {
        w.failure = std::string("tower comparison failed: ") + e.what();
        return w;
    }

    w.marked = top.front();
    for (const auto& mv : moves) {
        if (mv.side == Side::Top) {
            w.marked = mv.loser;
            break;
        }
    }
    const long orbit_len = std::max<long>(depth, floors_at(tower_depth).get_si());
    std::vector<Scalar> xs{start.top_interval(w.marked).lo};
    std::vector<Scalar> ys{w.target.top_interval(w.marked).lo};
    for (long i = 1; i < orbit_len; ++i) {
        auto x = start.apply(xs.back());
        if (!x.defined()) {
            w.failure = "orbit of the marked endpoint leaves the domain after " + std::to_string(i) + " steps";
            return w;
        }
        xs.push_back(std::move(*x.value));
        ys.push_back(*w.target.apply(ys.back()).value);
    }
    w.orbit_length = static_cast<int>(orbit_len);
    if (rank_of(xs) != rank_of(ys)) {
        w.failure = "orbit orders of the marked endpoint differ";
        return w;
    }
    w.ok = true;
    return w;
}

}  // namespace giet
