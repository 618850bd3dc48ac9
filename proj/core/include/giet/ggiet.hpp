#pragma once

/**
 * Generalized interval exchanges with gaps and affine branches.
 *
 * A map lives on an ambient interval [0, L). The top layout splits it into
 * labelled intervals and gaps (where the map is undefined); the bottom layout
 * does the same for the image. The branch of label a sends its top interval
 * onto its bottom interval by x -> slope_a * (x - l_a^top) + l_a^bottom.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "giet/interval_set.hpp"
#include "giet/scalar.hpp"

namespace giet {

using Label = std::string;

struct Item {
    bool gap = false;
    Label label;
    Scalar length;

    static Item interval(Label label, Scalar length) { return {false, std::move(label), std::move(length)}; }
    static Item make_gap(Scalar length) { return {true, {}, std::move(length)}; }

    friend bool operator==(const Item&, const Item&) = default;
};

/// Ordered items filling [0, total). Adjacent gaps are merged and empty gaps dropped on construction.
class Layout {
public:
    Layout() = default;
    explicit Layout(std::vector<Item> items);

    const std::vector<Item>& items() const { return items_; }
    Scalar total() const;
    /// Position of every item, in order.
    std::vector<Interval> spans() const;
    std::vector<Label> labels() const;

    friend bool operator==(const Layout&, const Layout&) = default;

private:
    std::vector<Item> items_;
};

/// A branch given by its top interval, slope and the left end of its image.
struct Branch {
    Label label;
    Interval top;
    Scalar slope;
    Scalar bottom_lo;
};

struct ApplyResult {
    std::optional<Scalar> value;
    /// Index of the gap (counting gaps only, left to right) when the point is not in the domain.
    std::optional<std::size_t> gap;

    bool defined() const { return value.has_value(); }
};

/// Permutation data plus the full item sequence with gap positions (nullopt marks a gap).
struct CombData {
    std::map<Label, int> pi_top;
    std::map<Label, int> pi_bottom;
    std::vector<std::optional<Label>> extended_top;
    std::vector<std::optional<Label>> extended_bottom;

    friend bool operator==(const CombData&, const CombData&) = default;
};

class GGiet {
public:
    GGiet() = default;
    GGiet(Layout top, Layout bottom, std::map<Label, Scalar> slopes);

    /// Builds layouts from branches; gaps fill everything not covered, ambient [0, ambient).
    /// Throws std::invalid_argument when top or bottom intervals overlap or leave [0, ambient).
    static GGiet from_branches(const Scalar& ambient, std::vector<Branch> branches);

    /// Inverse of comb(): item lengths come from label lengths, gap lengths and slopes.
    static GGiet from_comb(const CombData& comb, const std::map<Label, Scalar>& top_lengths,
                           const std::vector<Scalar>& top_gaps, const std::vector<Scalar>& bottom_gaps,
                           const std::map<Label, Scalar>& slopes);

    const Layout& top() const { return top_; }
    const Layout& bottom() const { return bottom_; }
    const std::map<Label, Scalar>& slopes() const { return slopes_; }

    std::size_t d() const { return order_.size(); }
    Scalar length() const { return top_spans_.empty() ? Scalar() : top_spans_.back().hi; }
    /// Labels in top order.
    const std::vector<Label>& labels() const { return order_; }
    bool has(const Label& a) const { return top_iv_.count(a) != 0; }

    const Interval& top_interval(const Label& a) const;
    const Interval& bottom_interval(const Label& a) const;
    const Scalar& slope(const Label& a) const;
    std::vector<Branch> branches() const;

    /// Label of the rightmost interval on each line. Requires d() >= 1.
    const Label& rightmost_top() const;
    const Label& rightmost_bottom() const;

    std::optional<Label> top_label_at(const Scalar& x) const;
    std::optional<Label> bottom_label_at(const Scalar& y) const;

    Scalar branch(const Label& a, const Scalar& x) const;
    Scalar inverse_branch(const Label& a, const Scalar& y) const;

    /// Throws std::out_of_range when x is outside [0, L).
    ApplyResult apply(const Scalar& x) const;
    ApplyResult apply_inverse(const Scalar& y) const;

    IntervalSet domain() const;
    IntervalSet image() const;
    std::vector<Interval> top_gaps() const;
    std::vector<Interval> bottom_gaps() const;

    GGiet invert() const;
    /// Restriction to J, which must lie in the domain. Same ambient interval.
    GGiet restrict(const IntervalSet& J) const;
    CombData comb() const;
    /// Common quadratic radicand of all data, 0 when everything is rational.
    long field() const;

    friend bool operator==(const GGiet& a, const GGiet& b) {
        return a.top_ == b.top_ && a.bottom_ == b.bottom_ && a.slopes_ == b.slopes_;
    }

private:
    void index();

    Layout top_;
    Layout bottom_;
    std::map<Label, Scalar> slopes_;

    std::vector<Label> order_;
    std::vector<Label> bottom_order_;
    std::map<Label, Interval> top_iv_;
    std::map<Label, Interval> bottom_iv_;
    std::vector<Interval> top_spans_;
    std::vector<Interval> bottom_spans_;
};

/// Empty iff every invariant holds. Each entry names the clause and the offending label or item.
std::vector<std::string> validate(const GGiet& m);

/// Same gaps, same intervals, same branches; labels may differ.
bool equal_up_to_relabeling(const GGiet& a, const GGiet& b);

std::string describe(const GGiet& m);

}  // namespace giet
