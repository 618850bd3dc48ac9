#pragma once

/**
 * Splits the domain into a transition part and periodic / quasiminimal recurrence domains.
 *
 * Each basic step runs the induction until it either isolates one interval whose
 * rightmost top and bottom copies share a right endpoint (singular pair), settles on
 * a stable set of recurrent letters (accumulation), or loses every letter. The
 * recurrent part becomes a tower over the original map; the induction restarts on
 * the induced map restricted to what is left.
 */

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "giet/ggiet.hpp"
#include "giet/orbit.hpp"
#include "giet/rauzy_veech.hpp"
#include "giet/towers.hpp"

namespace giet {

constexpr int kDefaultMaxSteps = 1000;

struct BasicStep {
    enum class Kind { SingularPair, Accumulated, Trivialized, Undecided };
    Kind kind = Kind::Undecided;
    /// Induction step whose map supplies E1 and T1.
    int n = 0;
    IntervalSet e1;
    GGiet t1;
    Heights heights;
    std::set<Label> a_inf;
    bool certified = false;
    std::optional<RenormLimit> limit;
    RVState state;
    Stability stability;
};

std::string to_string(BasicStep::Kind k);

/// window <= 0 selects default_window(d).
BasicStep basic_step(const GGiet& m, int window, int max_steps, const Heights& initial_heights = {});

enum class WanderingDirection { ForwardOnly, BackwardOnly, Both, NoneDetected };

std::string to_string(WanderingDirection w);

struct DomainReport {
    enum class Kind { Periodic, Quasiminimal };
    Kind kind = Kind::Periodic;

    long period = 0;
    Scalar anchor;
    bool at_endpoint = false;

    int d_i = 0;
    CombData comb;
    std::vector<Label> gamma_prefix;
    std::optional<PeriodicityCertificate> certificate;
    Completeness inf_complete{Completeness::Kind::Undecided, false, {}};
    WanderingDirection wandering = WanderingDirection::NoneDetected;

    std::vector<Interval> region;
    GGiet base;
    Heights heights;
    bool certified = false;
    /// Induction steps spent by the basic step that produced this domain.
    int induction_steps = 0;
};

struct UndecidedPart {
    GGiet map;
    Heights heights;
    std::vector<Interval> region;
};

struct Bounds {
    int quasiminimal_count = 0;
    int quasiminimal_bound = 0;
    bool satisfied_weak = false;
    bool satisfied_strict = false;
    int ergodic_bound = 0;
    /// Sum of genera of the quasiminimal bases where the permutation allows it, otherwise floor(d_i / 2).
    int genus_bound = 0;
};

struct ValidationSummary {
    int samples = 0;
    int transient = 0;
    int periodic = 0;
    int undecided = 0;
    std::vector<std::string> contradictions;

    bool clean() const { return contradictions.empty(); }
};

struct DecompositionReport {
    GGiet input;
    std::vector<Interval> transition;
    std::vector<DomainReport> domains;
    std::vector<UndecidedPart> undecided;
    int p = 0;
    int q = 0;
    Bounds bounds;
    int window = 0;
    int max_steps = kDefaultMaxSteps;
    bool certified = false;
    int scheme_iterations = 0;
    /// One entry per basic step: S1 (singular pair on one interval), S2 (limit 0), S3 (trivialized),
    /// continue, or undecided.
    std::vector<std::string> stops;
    std::optional<ValidationSummary> validation;
};

/// Throws std::logic_error if the assembled pieces fail to partition [0, L) exactly.
DecompositionReport decompose(const GGiet& m, int window = 0, int max_steps = kDefaultMaxSteps);

struct BoundCheck {
    bool weak_ok;
    bool strict_ok;
    bool ergodic_ok;
    std::vector<std::string> notes;
};

Bounds compute_bounds(const DecompositionReport& rep);
BoundCheck check_bounds(const DecompositionReport& rep);

/// Samples each piece and compares with the orbit oracle. Points of the transition part must not be
/// periodic; points of a domain R are classified under T restricted to R and must not be transient;
/// periodic ones must have the reported period; quasiminimal domains must have no periodic points.
ValidationSummary cross_validate(const DecompositionReport& rep, int samples_per_region,
                                 int horizon = kDefaultHorizon);

/// Exact partition check: pieces pairwise disjoint and total measure L.
bool partition_is_exact(const DecompositionReport& rep, std::string* why = nullptr);

}  // namespace giet
