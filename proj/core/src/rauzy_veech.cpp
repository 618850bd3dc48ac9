#include "giet/rauzy_veech.hpp"

#include <unordered_map>

#include "giet/first_return.hpp"

namespace giet {

std::string to_string(StepCase c) {
    switch (c) {
        case StepCase::C1a: return "1a";
        case StepCase::C1b: return "1b";
        case StepCase::C1c: return "1c";
        case StepCase::C2a: return "2a";
        case StepCase::C2b: return "2b";
        case StepCase::C2boundary: return "2boundary";
    }
    return "?";
}

std::string to_string(const Player& p) {
    const std::string side = p.side == Side::Top ? "top" : "bottom";
    return p.gap ? side + " gap" : p.label + " (" + side + ")";
}

std::string to_string(Stability::Kind k) {
    switch (k) {
        case Stability::Kind::Stable: return "stable";
        case Stability::Kind::NotYetStable: return "not-yet-stable";
        case Stability::Kind::Stopped1b: return "stopped-1b";
        case Stability::Kind::Trivialized: return "trivialized";
    }
    return "?";
}

std::optional<StepResult> rv_step(const GGiet& m) {
    if (m.d() == 0) return std::nullopt;
    const Label at = m.rightmost_top();
    const Label ab = m.rightmost_bottom();
    const Interval& top = m.top_interval(at);
    const Interval& bot = m.bottom_interval(ab);
    const Scalar &lt = top.lo, &rt = top.hi, &lb = bot.lo, &rb = bot.hi;

    std::map<Label, Branch> br;
    for (auto& b : m.branches()) br.emplace(b.label, std::move(b));

    RVStep step;
    if (rt == rb) {
        if (at == ab) {
            if (m.d() == 1) return std::nullopt;
            step.kind = lt == lb ? StepCase::C1b : StepCase::C1c;
            step.lambda1 = max(lt, lb);
            const bool top_longer = lt < lb;
            step.winner = Player::interval(at, top_longer ? Side::Top : Side::Bottom);
            step.loser = Player::interval(at, top_longer ? Side::Bottom : Side::Top);
            step.deleted = at;
            br.erase(at);
        } else if (lt == lb) {
            step.kind = StepCase::C1b;
            step.lambda1 = lt;
            step.winner = Player::interval(ab, Side::Bottom);
            step.loser = Player::interval(at, Side::Top);
            step.deleted = at;
            br[ab].slope = m.slope(at) * m.slope(ab);
            br[ab].bottom_lo = m.bottom_interval(at).lo;
            br.erase(at);
        } else if (lt < lb) {
            step.kind = StepCase::C1a;
            step.lambda1 = lb;
            step.winner = Player::interval(at, Side::Top);
            step.loser = Player::interval(ab, Side::Bottom);
            step.letter_winner = at;
            br[at].top = {lt, lb};
            br[ab].slope = m.slope(at) * m.slope(ab);
            br[ab].bottom_lo = m.branch(at, lb);
        } else {
            step.kind = StepCase::C1a;
            step.lambda1 = lt;
            step.winner = Player::interval(ab, Side::Bottom);
            step.loser = Player::interval(at, Side::Top);
            step.letter_winner = ab;
            const Interval& ab_top = m.top_interval(ab);
            const Scalar cut = m.inverse_branch(ab, lt);
            br[ab].top = {ab_top.lo, cut};
            br[at] = {at, {cut, ab_top.hi}, m.slope(ab) * m.slope(at), m.bottom_interval(at).lo};
        }
    } else {
        const Scalar lo = max(lt, lb);
        const Scalar hi = min(rt, rb);
        if (lo < hi) {
            step.kind = StepCase::C2a;
            step.lambda1 = hi;
            if (rb < rt) {
                step.winner = Player::interval(at, Side::Top);
                step.loser = Player::gap_on(Side::Bottom);
                step.letter_winner = at;
                br[at].top = {lt, rb};
            } else {
                step.winner = Player::interval(ab, Side::Bottom);
                step.loser = Player::gap_on(Side::Top);
                step.letter_winner = ab;
                br[ab].top = {m.top_interval(ab).lo, m.inverse_branch(ab, rt)};
            }
        } else {
            step.kind = lo == hi ? StepCase::C2boundary : StepCase::C2b;
            step.lambda1 = lo;
            if (rt < rb) {
                step.winner = Player::gap_on(Side::Top);
                step.loser = Player::interval(ab, Side::Bottom);
                step.deleted = ab;
                br.erase(ab);
            } else {
                step.winner = Player::gap_on(Side::Bottom);
                step.loser = Player::interval(at, Side::Top);
                step.deleted = at;
                br.erase(at);
            }
        }
    }

    std::vector<Branch> branches;
    for (auto& [a, b] : br) branches.push_back(std::move(b));
    return StepResult{step, GGiet::from_branches(step.lambda1, std::move(branches))};
}

StepCheck rv_step_oracle_check(const GGiet& m) {
    auto res = rv_step(m);
    if (!res) throw std::logic_error("rv_step_oracle_check: the induction stops on this map");
    FirstReturn fr = first_return(m, {Scalar(0), res->step.lambda1}, 4, ExcessPolicy::Exclude);
    StepCheck check{true, res->step, res->next, fr.map, {}};
    if (!equal_up_to_relabeling(res->next, fr.map)) {
        check.ok = false;
        check.detail = "case " + to_string(res->step.kind) + ": formula " + describe(res->next) + " vs first return " +
                       describe(fr.map);
    }
    return check;
}

namespace {

Scalar right_top_end(const GGiet& m) { return m.d() == 0 ? Scalar() : m.top_interval(m.rightmost_top()).hi; }

}  // namespace

RVState iterate(const GGiet& m, int max_steps, const Heights& initial_heights) {
    RVState s;
    s.current = m;
    for (const auto& a : m.labels()) {
        auto it = initial_heights.find(a);
        s.heights[a] = it == initial_heights.end() ? Height(1) : it->second;
    }
    s.r_top_history.push_back(right_top_end(m));
    s.history.push_back({m, s.heights});
    while (s.n < max_steps) {
        auto res = rv_step(s.current);
        if (!res) {
            s.stopped = true;
            break;
        }
        const RVStep& st = res->step;
        if (st.kind == StepCase::C1a) {
            s.heights[st.loser.label] += s.heights[st.winner.label];
        } else if (st.kind == StepCase::C1b && st.winner.label != st.loser.label) {
            s.heights[st.winner.label] += s.heights[st.loser.label];
        }
        if (st.deleted) s.heights.erase(*st.deleted);
        if (st.letter_winner) {
            s.gamma.push_back(*st.letter_winner);
            if (st.kind == StepCase::C1a) s.gamma_reduced.push_back(*st.letter_winner);
        }
        s.steps.push_back(st);
        s.current = std::move(res->next);
        ++s.n;
        s.r_top_history.push_back(right_top_end(s.current));
        s.history.push_back({s.current, s.heights});
    }
    if (!s.stopped && s.current.d() == 0) s.stopped = true;
    return s;
}

std::string projective_key(const GGiet& m) {
    if (m.top().items().empty()) return "empty";
    const Scalar unit = m.top().items().front().length;
    std::string key;
    auto line = [&](const Layout& layout) {
        for (const auto& it : layout.items()) {
            key += it.gap ? std::string("|") : it.label;
            key += ':';
            key += (it.length / unit).to_string();
            key += ';';
        }
        key += '/';
    };
    line(m.top());
    line(m.bottom());
    for (const auto& [a, s] : m.slopes()) key += a + '=' + s.to_string() + ';';
    return key;
}

std::optional<PeriodicityCertificate> detect_periodicity(const RVState& state) {
    std::unordered_map<std::string, int> seen;
    for (int i = 0; i < static_cast<int>(state.history.size()); ++i) {
        const GGiet& m = state.history[i].map;
        if (m.d() == 0) break;
        std::string key = projective_key(m);
        auto [it, inserted] = seen.emplace(key, i);
        if (!inserted) return PeriodicityCertificate{it->second, i - it->second, key};
    }
    return std::nullopt;
}

std::optional<Scalar> cylinder_fixed_point(const GGiet& m) {
    if (m.d() == 0) return std::nullopt;
    const Label& a = m.rightmost_top();
    if (a != m.rightmost_bottom()) return std::nullopt;
    const Interval& t = m.top_interval(a);
    const Interval& b = m.bottom_interval(a);
    if (t.hi == b.hi) return std::nullopt;
    const Scalar& s = m.slope(a);
    if (s == Scalar(1)) return std::nullopt;
    Scalar x = (b.lo - s * t.lo) / (Scalar(1) - s);
    if (x < max(t.lo, b.lo) || !(x < min(t.hi, b.hi))) return std::nullopt;
    return x;
}

int default_window(std::size_t d) { return 8 * static_cast<int>(std::max<std::size_t>(d, 1)); }

Stability classify_stability(const RVState& state, int window) {
    Stability out;
    const auto cert = detect_periodicity(state);
    const int cert_at = cert ? cert->preperiod : -1;
    for (int i = 0; i < static_cast<int>(state.history.size()); ++i) {
        if (cert && i == cert_at) {
            out.kind = Stability::Kind::Stable;
            out.certified = true;
            out.at_step = i;
            out.certificate = cert;
            for (int k = cert->preperiod; k < cert->preperiod + cert->period; ++k) {
                if (state.steps[k].letter_winner) out.a_inf.insert(*state.steps[k].letter_winner);
            }
            return out;
        }
        if (auto x = cylinder_fixed_point(state.history[i].map)) {
            out.kind = Stability::Kind::Stable;
            out.certified = true;
            out.at_step = i;
            out.label = state.history[i].map.rightmost_top();
            out.a_inf = {*out.label};
            out.fixed_point = x;
            return out;
        }
    }
    if (state.stopped) {
        out.at_step = state.n;
        out.certified = true;
        if (state.current.d() == 0) {
            out.kind = Stability::Kind::Trivialized;
        } else {
            out.kind = Stability::Kind::Stopped1b;
            out.label = state.current.rightmost_top();
            out.a_inf = {*out.label};
        }
        return out;
    }
    int last_drop = 0;
    for (int i = 0; i < state.n; ++i) {
        if (state.steps[i].deleted) last_drop = i + 1;
    }
    if (state.n - last_drop < window) return out;
    out.kind = Stability::Kind::Stable;
    out.at_step = last_drop + window;
    for (int i = state.n - window; i < state.n; ++i) {
        if (state.steps[i].letter_winner) out.a_inf.insert(*state.steps[i].letter_winner);
    }
    return out;
}

RenormLimit renorm_limit(const RVState& state, const Stability& st) {
    if (st.kind == Stability::Kind::Stopped1b) {
        const GGiet& m = state.history[st.at_step].map;
        const Scalar r = m.top_interval(*st.label).hi;
        return {true, r, r, r, true};
    }
    if (st.kind != Stability::Kind::Stable) throw std::logic_error("renorm_limit: state is not stable");
    if (st.fixed_point) return {true, *st.fixed_point, *st.fixed_point, *st.fixed_point, false};
    if (st.certificate) return {true, Scalar(), Scalar(), Scalar(), false};
    const Scalar& hi = state.r_top_history.back();
    return {false, hi, Scalar(), hi, false};
}

Completeness inf_complete(const RVState& state, const Stability& st) {
    if (st.kind == Stability::Kind::Stopped1b) return {Completeness::Kind::Yes, true, {}};
    if (st.kind != Stability::Kind::Stable) return {Completeness::Kind::Undecided, false, {}};
    Completeness c{Completeness::Kind::Yes, st.certified, {}};
    for (const auto& a : state.history[st.at_step].map.labels()) {
        if (!st.a_inf.count(a)) c.missing.insert(a);
    }
    if (!c.missing.empty()) c.kind = Completeness::Kind::No;
    return c;
}

}  // namespace giet
