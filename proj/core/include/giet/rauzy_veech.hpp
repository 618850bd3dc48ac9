#pragma once

/**
 * Gap-aware Rauzy-Veech induction.
 *
 * One step compares the rightmost top interval [l^t, r^t) (label a_t) with the
 * rightmost bottom interval [l^b, r^b) (label a_b) and replaces the map by its
 * first return to [0, lambda), written directly in the original coordinates.
 *
 *   1a   r^t = r^b, l^t != l^b, a_t != a_b   lambda = max(l^t, l^b), the longer interval wins
 *   1b   r^t = r^b, l^t == l^b               lambda = l^t, a_t is absorbed into a_b
 *   1c   r^t = r^b, a_t == a_b, l^t != l^b   lambda = max(l^t, l^b), the letter is trapped and dropped
 *   2a   r^t != r^b, max l < min r           lambda = min(r^t, r^b), the longer interval beats a gap
 *   2b   r^t != r^b, max l > min r           lambda = max(l^t, l^b), a gap wins and deletes a letter
 *   2boundary  max l == min r                handled as 2b
 */

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "giet/ggiet.hpp"

namespace giet {

using Height = mpz_class;
using Heights = std::map<Label, Height>;

enum class Side { Top, Bottom };

struct Player {
    bool gap = false;
    Label label;
    Side side = Side::Top;

    static Player interval(Label a, Side s) { return {false, std::move(a), s}; }
    static Player gap_on(Side s) { return {true, {}, s}; }
    friend bool operator==(const Player&, const Player&) = default;
};

enum class StepCase { C1a, C1b, C1c, C2a, C2b, C2boundary };

std::string to_string(StepCase c);
std::string to_string(const Player& p);

struct RVStep {
    StepCase kind;
    Player winner;
    Player loser;
    Scalar lambda1;
    /// Present in 1a and 2a.
    std::optional<Label> letter_winner;
    /// Present in 1b, 1c, 2b and 2boundary.
    std::optional<Label> deleted;
};

struct StepResult {
    RVStep step;
    GGiet next;
};

/// nullopt means the induction stops: d = 0, or d = 1 with a single interval mapped
/// onto a set with the same right endpoint.
std::optional<StepResult> rv_step(const GGiet& m);

struct StepCheck {
    bool ok;
    RVStep step;
    GGiet formula;
    GGiet oracle;
    std::string detail;
};

/// Compares the step formula with first_return(m, [0, lambda), horizon 4). Requires rv_step(m) to succeed.
StepCheck rv_step_oracle_check(const GGiet& m);

struct Snapshot {
    GGiet map;
    Heights heights;
};

struct RVState {
    GGiet current;
    int n = 0;
    Heights heights;
    std::vector<RVStep> steps;
    std::vector<Label> gamma;
    std::vector<Label> gamma_reduced;
    /// Right end of the rightmost top interval after 0, 1, ..., n steps (0 once d = 0).
    std::vector<Scalar> r_top_history;
    bool stopped = false;
    /// history[i] is the state after i steps.
    std::vector<Snapshot> history;
};

/// Heights start at 1 unless given (return times counted in some ambient map).
RVState iterate(const GGiet& m, int max_steps, const Heights& initial_heights = {});

struct PeriodicityCertificate {
    int preperiod;
    int period;
    std::string witness;
};

/// Combinatorics, item lengths divided by the first item, and slopes.
std::string projective_key(const GGiet& m);

std::optional<PeriodicityCertificate> detect_periodicity(const RVState& state);

/// Fixed point of the branch when the rightmost letters agree, their right ends differ,
/// and the fixed point lies in the overlap of the two intervals.
std::optional<Scalar> cylinder_fixed_point(const GGiet& m);

struct Stability {
    enum class Kind { Stable, NotYetStable, Stopped1b, Trivialized };
    Kind kind = Kind::NotYetStable;
    std::set<Label> a_inf;
    bool certified = false;
    /// Step at which the verdict is pinned (the snapshot the decomposer uses).
    int at_step = 0;
    std::optional<Label> label;
    std::optional<Scalar> fixed_point;
    std::optional<PeriodicityCertificate> certificate;
};

std::string to_string(Stability::Kind k);

int default_window(std::size_t d);

Stability classify_stability(const RVState& state, int window);

struct RenormLimit {
    bool exact;
    Scalar value;
    Scalar lo;
    Scalar hi;
    bool at_endpoint = false;
};

/// Throws std::logic_error unless the stability verdict is Stable or Stopped1b.
RenormLimit renorm_limit(const RVState& state, const Stability& stability);

struct Completeness {
    enum class Kind { Yes, No, Undecided };
    Kind kind;
    bool certified = false;
    std::set<Label> missing;
};

Completeness inf_complete(const RVState& state, const Stability& stability);

}  // namespace giet
