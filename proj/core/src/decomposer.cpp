#include "giet/decomposer.hpp"

#include <algorithm>

#include "giet/genus.hpp"

namespace giet {

std::string to_string(BasicStep::Kind k) {
    switch (k) {
        case BasicStep::Kind::SingularPair: return "singular-pair";
        case BasicStep::Kind::Accumulated: return "accumulated";
        case BasicStep::Kind::Trivialized: return "trivialized";
        case BasicStep::Kind::Undecided: return "undecided";
    }
    return "?";
}

std::string to_string(WanderingDirection w) {
    switch (w) {
        case WanderingDirection::ForwardOnly: return "forward-only";
        case WanderingDirection::BackwardOnly: return "backward-only";
        case WanderingDirection::Both: return "both";
        case WanderingDirection::NoneDetected: return "none-detected";
    }
    return "?";
}

namespace {

bool singular_pair(const GGiet& m) {
    if (m.d() == 0) return false;
    const Label& a = m.rightmost_top();
    return a == m.rightmost_bottom() && m.top_interval(a).hi == m.bottom_interval(a).hi;
}

Heights restrict_heights(const Heights& h, const GGiet& m) {
    Heights out;
    for (const auto& a : m.labels()) out[a] = h.at(a);
    return out;
}

WanderingDirection wandering_from(const RVState& state, int from) {
    bool fwd = false, bwd = false;
    for (std::size_t i = static_cast<std::size_t>(from); i < state.steps.size(); ++i) {
        const RVStep& st = state.steps[i];
        if (st.kind != StepCase::C2a || !st.loser.gap) continue;
        // A top interval sticking out over a bottom gap has no preimage: its points wander forward.
        (st.loser.side == Side::Bottom ? fwd : bwd) = true;
    }
    if (fwd && bwd) return WanderingDirection::Both;
    if (fwd) return WanderingDirection::ForwardOnly;
    if (bwd) return WanderingDirection::BackwardOnly;
    return WanderingDirection::NoneDetected;
}

}  // namespace

BasicStep basic_step(const GGiet& m, int window, int max_steps, const Heights& initial_heights) {
    if (window <= 0) window = default_window(m.d());
    BasicStep bs;
    bs.state = iterate(m, max_steps, initial_heights);
    bs.stability = classify_stability(bs.state, window);
    const RVState& s = bs.state;
    const Stability& st = bs.stability;

    int sp = -1;
    for (int i = 0; i < static_cast<int>(s.history.size()); ++i) {
        if (singular_pair(s.history[i].map)) {
            sp = i;
            break;
        }
    }
    const bool stable_certified = st.kind == Stability::Kind::Stable && st.certified;
    if (sp >= 0 && (!stable_certified || sp <= st.at_step)) {
        const Snapshot& snap = s.history[sp];
        const Label a = snap.map.rightmost_top();
        const Interval& iv = snap.map.top_interval(a);
        bs.kind = BasicStep::Kind::SingularPair;
        bs.n = sp;
        bs.e1 = IntervalSet{iv};
        bs.t1 = snap.map.restrict(bs.e1);
        bs.heights = {{a, snap.heights.at(a)}};
        bs.a_inf = {a};
        bs.certified = true;
        bs.limit = RenormLimit{true, iv.hi, iv.hi, iv.hi, true};
        return bs;
    }
    if (st.kind == Stability::Kind::Stable) {
        const Snapshot& snap = s.history[st.at_step];
        std::vector<Interval> pieces;
        for (const auto& a : st.a_inf) {
            if (!snap.map.has(a)) continue;
            pieces.push_back(snap.map.top_interval(a));
            bs.heights[a] = snap.heights.at(a);
            bs.a_inf.insert(a);
        }
        bs.kind = BasicStep::Kind::Accumulated;
        bs.n = st.at_step;
        bs.e1 = IntervalSet(std::move(pieces));
        bs.t1 = snap.map.restrict(bs.e1);
        bs.certified = st.certified;
        bs.limit = renorm_limit(s, st);
        return bs;
    }
    bs.n = s.n;
    bs.kind = st.kind == Stability::Kind::Trivialized ? BasicStep::Kind::Trivialized : BasicStep::Kind::Undecided;
    return bs;
}

DecompositionReport decompose(const GGiet& m, int window, int max_steps) {
    if (auto v = validate(m); !v.empty()) throw std::invalid_argument("decompose: invalid map: " + v.front());
    DecompositionReport rep;
    rep.input = m;
    rep.window = window;
    rep.max_steps = max_steps;

    GGiet cur = m;
    Heights heights;
    IntervalSet covered;
    for (std::size_t iter = 0; iter < m.d() && cur.d() > 0; ++iter) {
        BasicStep bs = basic_step(cur, window, max_steps, heights);
        ++rep.scheme_iterations;
        if (bs.kind == BasicStep::Kind::Trivialized) {
            rep.stops.push_back("S3");
            break;
        }
        if (bs.kind == BasicStep::Kind::Undecided) {
            UndecidedPart part{cur, bs.state.history.front().heights, {}};
            try {
                part.region = build_tower_rep(m, cur, part.heights).region().pieces();
            } catch (const TowerError&) {
                part.region.clear();
            }
            covered = covered.unite(IntervalSet(part.region));
            rep.undecided.push_back(std::move(part));
            rep.stops.push_back("undecided");
            break;
        }

        const TowerRep tower = build_tower_rep(m, bs.t1, bs.heights);
        const IntervalSet region = tower.region();
        if (covered.intersects(region)) throw std::logic_error("decompose: recurrence domains overlap");
        covered = covered.unite(region);

        DomainReport dr;
        dr.region = region.pieces();
        dr.base = bs.t1;
        dr.heights = bs.heights;
        dr.certified = bs.certified;
        dr.induction_steps = bs.n;
        if (bs.a_inf.size() == 1) {
            dr.kind = DomainReport::Kind::Periodic;
            dr.period = bs.heights.begin()->second.get_si();
            dr.anchor = bs.limit->exact ? bs.limit->value : bs.limit->hi;
            dr.at_endpoint = bs.limit->at_endpoint;
            dr.d_i = 1;
        } else {
            dr.kind = DomainReport::Kind::Quasiminimal;
            dr.d_i = static_cast<int>(bs.t1.d());
            dr.comb = bs.t1.comb();
            for (std::size_t i = static_cast<std::size_t>(bs.n); i < bs.state.steps.size() && dr.gamma_prefix.size() < 64;
                 ++i) {
                if (bs.state.steps[i].letter_winner) dr.gamma_prefix.push_back(*bs.state.steps[i].letter_winner);
            }
            dr.certificate = bs.stability.certificate;
            dr.inf_complete = inf_complete(bs.state, bs.stability);
            dr.wandering = wandering_from(bs.state, bs.n);
        }
        rep.domains.push_back(std::move(dr));

        const Snapshot& snap = bs.state.history[bs.n];
        const IntervalSet rest = snap.map.domain().subtract(bs.e1);
        const bool s1 = bs.kind == BasicStep::Kind::SingularPair && snap.map.d() == 1;
        const bool s2 = bs.limit && bs.limit->exact && bs.limit->value.is_zero();
        if (rest.empty()) {
            rep.stops.push_back(s1 ? "S1" : s2 ? "S2" : "exhausted");
            break;
        }
        rep.stops.push_back("continue");
        cur = snap.map.restrict(rest);
        heights = restrict_heights(snap.heights, cur);
    }

    rep.transition = IntervalSet{Interval{Scalar(), m.length()}}.subtract(covered).pieces();
    for (const auto& dr : rep.domains) (dr.kind == DomainReport::Kind::Periodic ? rep.p : rep.q) += 1;
    rep.bounds = compute_bounds(rep);
    rep.certified = rep.undecided.empty() &&
                    std::all_of(rep.domains.begin(), rep.domains.end(), [](const DomainReport& d) { return d.certified; });
    std::string why;
    if (!partition_is_exact(rep, &why)) throw std::logic_error("decompose: " + why);
    return rep;
}

Bounds compute_bounds(const DecompositionReport& rep) {
    Bounds b;
    const int d = static_cast<int>(rep.input.d());
    b.quasiminimal_count = rep.q;
    b.quasiminimal_bound = (d - rep.p) / 2;
    b.satisfied_weak = rep.q <= b.quasiminimal_bound;
    b.satisfied_strict = rep.q < b.quasiminimal_bound;
    for (const auto& dr : rep.domains) {
        if (dr.kind != DomainReport::Kind::Quasiminimal) continue;
        b.ergodic_bound += dr.d_i / 2;
        int g = dr.d_i / 2;
        try {
            g = genus_of_permutation(dr.comb);
        } catch (const std::invalid_argument&) {
        }
        b.genus_bound += g;
    }
    return b;
}

BoundCheck check_bounds(const DecompositionReport& rep) {
    const Bounds b = compute_bounds(rep);
    BoundCheck c{b.satisfied_weak, b.satisfied_strict, rep.q <= b.genus_bound && b.genus_bound <= b.ergodic_bound, {}};
    const std::string counts = "q = " + std::to_string(b.quasiminimal_count) + ", floor((d - p)/2) = " + std::to_string(b.quasiminimal_bound);
    c.notes.push_back(std::string(c.weak_ok ? "weak bound holds: " : "weak bound FAILS: ") + counts);
    if (!c.strict_ok) c.notes.push_back("strict bound q < floor((d - p)/2) does not hold (recorded, not asserted)");
    c.notes.push_back("ergodic measures: genus bound " + std::to_string(b.genus_bound) + ", floor bound " +
                      std::to_string(b.ergodic_bound));
    return c;
}

ValidationSummary cross_validate(const DecompositionReport& rep, int samples_per_region, int horizon) {
    ValidationSummary v;
    const GGiet& m = rep.input;
    auto tally = [&](const OrbitClass& c) {
        ++v.samples;
        if (std::holds_alternative<Transient>(c)) ++v.transient;
        if (std::holds_alternative<Periodic>(c)) ++v.periodic;
        if (std::holds_alternative<Undecided>(c)) ++v.undecided;
    };
    for (const auto& x : sample_points(IntervalSet(rep.transition), samples_per_region)) {
        const OrbitRecord r = classify_orbit(m, x, horizon, false);
        tally(r.classification);
        if (auto p = std::get_if<Periodic>(&r.classification)) {
            v.contradictions.push_back("transition point " + x.to_string() + " is periodic with period " +
                                       std::to_string(p->period));
        }
    }
    for (std::size_t i = 0; i < rep.domains.size(); ++i) {
        const DomainReport& dr = rep.domains[i];
        const IntervalSet region(dr.region);
        const GGiet restricted = m.restrict(region);
        const std::string where = "domain " + std::to_string(i) + " point ";
        for (const auto& x : sample_points(region, samples_per_region)) {
            const OrbitRecord r = classify_orbit(restricted, x, horizon, false);
            tally(r.classification);
            if (std::holds_alternative<Transient>(r.classification)) {
                v.contradictions.push_back(where + x.to_string() + " is transient inside its domain");
            } else if (auto p = std::get_if<Periodic>(&r.classification)) {
                if (dr.kind == DomainReport::Kind::Quasiminimal) {
                    v.contradictions.push_back(where + x.to_string() + " is periodic in a quasiminimal domain");
                } else if (p->period != dr.period) {
                    v.contradictions.push_back(where + x.to_string() + " has period " + std::to_string(p->period) +
                                               ", reported " + std::to_string(dr.period));
                }
            }
        }
    }
    return v;
}

bool partition_is_exact(const DecompositionReport& rep, std::string* why) {
    std::vector<Interval> all = rep.transition;
    for (const auto& dr : rep.domains) all.insert(all.end(), dr.region.begin(), dr.region.end());
    for (const auto& u : rep.undecided) all.insert(all.end(), u.region.begin(), u.region.end());
    std::sort(all.begin(), all.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    Scalar total;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].empty() || all[i].lo.sign() < 0 || rep.input.length() < all[i].hi) {
            if (why) *why = "piece " + to_string(all[i]) + " is empty or outside [0, L)";
            return false;
        }
        if (i > 0 && all[i].lo < all[i - 1].hi) {
            if (why) *why = "pieces " + to_string(all[i - 1]) + " and " + to_string(all[i]) + " overlap";
            return false;
        }
        total += all[i].length();
    }
    if (total != rep.input.length()) {
        if (why) *why = "pieces cover " + total.to_string() + " of " + rep.input.length().to_string();
        return false;
    }
    return true;
}

}  // namespace giet
