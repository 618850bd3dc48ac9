#include "giet/ggiet.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace giet {

Layout::Layout(std::vector<Item> items) {
    for (auto& it : items) {
        if (it.gap) {
            if (it.length.is_zero()) continue;
            if (!items_.empty() && items_.back().gap) {
                items_.back().length += it.length;
                continue;
            }
            it.label.clear();
        }
        items_.push_back(std::move(it));
    }
}

Scalar Layout::total() const {
    Scalar t;
    for (const auto& it : items_) t += it.length;
    return t;
}

std::vector<Interval> Layout::spans() const {
    std::vector<Interval> out;
    out.reserve(items_.size());
    Scalar pos;
    for (const auto& it : items_) {
        Scalar next = pos + it.length;
        out.push_back({pos, next});
        pos = std::move(next);
    }
    return out;
}

std::vector<Label> Layout::labels() const {
    std::vector<Label> out;
    for (const auto& it : items_) {
        if (!it.gap) out.push_back(it.label);
    }
    return out;
}

GGiet::GGiet(Layout top, Layout bottom, std::map<Label, Scalar> slopes)
    : top_(std::move(top)), bottom_(std::move(bottom)), slopes_(std::move(slopes)) {
    index();
}

void GGiet::index() {
    top_spans_ = top_.spans();
    bottom_spans_ = bottom_.spans();
    order_.clear();
    bottom_order_.clear();
    top_iv_.clear();
    bottom_iv_.clear();
    for (std::size_t i = 0; i < top_.items().size(); ++i) {
        const auto& it = top_.items()[i];
        if (it.gap) continue;
        if (top_iv_.emplace(it.label, top_spans_[i]).second) order_.push_back(it.label);
    }
    for (std::size_t i = 0; i < bottom_.items().size(); ++i) {
        const auto& it = bottom_.items()[i];
        if (it.gap) continue;
        if (bottom_iv_.emplace(it.label, bottom_spans_[i]).second) bottom_order_.push_back(it.label);
    }
}

GGiet GGiet::from_branches(const Scalar& ambient, std::vector<Branch> branches) {
    struct Placed {
        Label label;
        Interval iv;
    };
    std::vector<Placed> tops, bottoms;
    std::map<Label, Scalar> slopes;
    for (auto& b : branches) {
        Interval bot{b.bottom_lo, b.bottom_lo + b.slope * b.top.length()};
        if (!slopes.emplace(b.label, b.slope).second) {
            throw std::invalid_argument("from_branches: duplicate label " + b.label);
        }
        tops.push_back({b.label, b.top});
        bottoms.push_back({b.label, std::move(bot)});
    }
    auto build = [&](std::vector<Placed>& placed, const char* side) {
        std::sort(placed.begin(), placed.end(), [](const Placed& x, const Placed& y) { return x.iv.lo < y.iv.lo; });
        std::vector<Item> items;
        Scalar pos;
        for (auto& p : placed) {
            if (p.iv.lo < pos) {
                throw std::invalid_argument(std::string("from_branches: overlapping ") + side + " intervals at " +
                                            p.label);
            }
            if (pos < p.iv.lo) items.push_back(Item::make_gap(p.iv.lo - pos));
            items.push_back(Item::interval(p.label, p.iv.length()));
            pos = p.iv.hi;
        }
        if (ambient < pos) throw std::invalid_argument(std::string("from_branches: ") + side + " exceeds ambient");
        if (pos < ambient) items.push_back(Item::make_gap(ambient - pos));
        return Layout(std::move(items));
    };
    Layout top = build(tops, "top");
    Layout bottom = build(bottoms, "bottom");
    return GGiet(std::move(top), std::move(bottom), std::move(slopes));
}

GGiet GGiet::from_comb(const CombData& comb, const std::map<Label, Scalar>& top_lengths,
                       const std::vector<Scalar>& top_gaps, const std::vector<Scalar>& bottom_gaps,
                       const std::map<Label, Scalar>& slopes) {
    auto build = [&](const std::vector<std::optional<Label>>& seq, const std::vector<Scalar>& gaps, bool bottom) {
        std::vector<Item> items;
        std::size_t g = 0;
        for (const auto& tok : seq) {
            if (!tok) {
                if (g >= gaps.size()) throw std::invalid_argument("from_comb: not enough gap lengths");
                items.push_back(Item::make_gap(gaps[g++]));
            } else {
                Scalar len = top_lengths.at(*tok);
                if (bottom) len *= slopes.at(*tok);
                items.push_back(Item::interval(*tok, std::move(len)));
            }
        }
        if (g != gaps.size()) throw std::invalid_argument("from_comb: too many gap lengths");
        return Layout(std::move(items));
    };
    return GGiet(build(comb.extended_top, top_gaps, false), build(comb.extended_bottom, bottom_gaps, true), slopes);
}

const Interval& GGiet::top_interval(const Label& a) const {
    auto it = top_iv_.find(a);
    if (it == top_iv_.end()) throw std::out_of_range("unknown label " + a);
    return it->second;
}

const Interval& GGiet::bottom_interval(const Label& a) const {
    auto it = bottom_iv_.find(a);
    if (it == bottom_iv_.end()) throw std::out_of_range("unknown label " + a);
    return it->second;
}

const Scalar& GGiet::slope(const Label& a) const {
    auto it = slopes_.find(a);
    if (it == slopes_.end()) throw std::out_of_range("no slope for label " + a);
    return it->second;
}

std::vector<Branch> GGiet::branches() const {
    std::vector<Branch> out;
    for (const auto& a : order_) out.push_back({a, top_interval(a), slope(a), bottom_interval(a).lo});
    return out;
}

const Label& GGiet::rightmost_top() const {
    if (order_.empty()) throw std::logic_error("rightmost_top on empty map");
    return order_.back();
}

const Label& GGiet::rightmost_bottom() const {
    if (bottom_order_.empty()) throw std::logic_error("rightmost_bottom on empty map");
    return bottom_order_.back();
}

namespace {

std::size_t locate(const std::vector<Interval>& spans, const Scalar& x) {
    auto it = std::upper_bound(spans.begin(), spans.end(), x,
                               [](const Scalar& v, const Interval& iv) { return v < iv.lo; });
    return static_cast<std::size_t>(it - spans.begin()) - 1;
}

std::size_t gap_index(const std::vector<Item>& items, std::size_t pos) {
    std::size_t g = 0;
    for (std::size_t i = 0; i < pos; ++i) g += items[i].gap ? 1 : 0;
    return g;
}

}  // namespace

std::optional<Label> GGiet::top_label_at(const Scalar& x) const {
    if (x.sign() < 0 || !(x < length())) return std::nullopt;
    const auto& item = top_.items()[locate(top_spans_, x)];
    if (item.gap) return std::nullopt;
    return item.label;
}

std::optional<Label> GGiet::bottom_label_at(const Scalar& y) const {
    if (y.sign() < 0 || !(y < bottom_.total())) return std::nullopt;
    const auto& item = bottom_.items()[locate(bottom_spans_, y)];
    if (item.gap) return std::nullopt;
    return item.label;
}

Scalar GGiet::branch(const Label& a, const Scalar& x) const {
    return slope(a) * (x - top_interval(a).lo) + bottom_interval(a).lo;
}

Scalar GGiet::inverse_branch(const Label& a, const Scalar& y) const {
    return (y - bottom_interval(a).lo) / slope(a) + top_interval(a).lo;
}

ApplyResult GGiet::apply(const Scalar& x) const {
    if (x.sign() < 0 || !(x < length())) throw std::out_of_range("apply: point " + x.to_string() + " outside [0, L)");
    const std::size_t i = locate(top_spans_, x);
    const auto& item = top_.items()[i];
    if (item.gap) return {std::nullopt, gap_index(top_.items(), i)};
    return {branch(item.label, x), std::nullopt};
}

ApplyResult GGiet::apply_inverse(const Scalar& y) const {
    if (y.sign() < 0 || !(y < bottom_.total())) {
        throw std::out_of_range("apply_inverse: point " + y.to_string() + " outside [0, L)");
    }
    const std::size_t i = locate(bottom_spans_, y);
    const auto& item = bottom_.items()[i];
    if (item.gap) return {std::nullopt, gap_index(bottom_.items(), i)};
    return {inverse_branch(item.label, y), std::nullopt};
}

IntervalSet GGiet::domain() const {
    std::vector<Interval> out;
    for (const auto& [a, iv] : top_iv_) out.push_back(iv);
    return IntervalSet(std::move(out));
}

IntervalSet GGiet::image() const {
    std::vector<Interval> out;
    for (const auto& [a, iv] : bottom_iv_) out.push_back(iv);
    return IntervalSet(std::move(out));
}

std::vector<Interval> GGiet::top_gaps() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < top_.items().size(); ++i) {
        if (top_.items()[i].gap) out.push_back(top_spans_[i]);
    }
    return out;
}

std::vector<Interval> GGiet::bottom_gaps() const {
    std::vector<Interval> out;
    for (std::size_t i = 0; i < bottom_.items().size(); ++i) {
        if (bottom_.items()[i].gap) out.push_back(bottom_spans_[i]);
    }
    return out;
}

GGiet GGiet::invert() const {
    std::map<Label, Scalar> inv;
    for (const auto& [a, s] : slopes_) inv.emplace(a, Scalar(1) / s);
    return GGiet(bottom_, top_, std::move(inv));
}

GGiet GGiet::restrict(const IntervalSet& J) const {
    if (!domain().contains(J)) throw std::invalid_argument("restrict: set " + to_string(J) + " is not in the domain");
    std::set<Label> taken(order_.begin(), order_.end());
    std::vector<Branch> out;
    for (const auto& a : order_) {
        const IntervalSet parts = J.intersect(IntervalSet{top_interval(a)});
        const auto& pieces = parts.pieces();
        for (std::size_t k = 0; k < pieces.size(); ++k) {
            Label name = a;
            if (pieces.size() > 1) {
                int suffix = static_cast<int>(k) + 1;
                do {
                    name = a + "_" + std::to_string(suffix++);
                } while (taken.count(name));
                taken.insert(name);
            }
            out.push_back({name, pieces[k], slope(a), branch(a, pieces[k].lo)});
        }
    }
    return from_branches(length(), std::move(out));
}

CombData GGiet::comb() const {
    CombData c;
    int rank = 0;
    for (const auto& it : top_.items()) {
        c.extended_top.push_back(it.gap ? std::nullopt : std::optional<Label>(it.label));
        if (!it.gap) c.pi_top[it.label] = ++rank;
    }
    rank = 0;
    for (const auto& it : bottom_.items()) {
        c.extended_bottom.push_back(it.gap ? std::nullopt : std::optional<Label>(it.label));
        if (!it.gap) c.pi_bottom[it.label] = ++rank;
    }
    return c;
}

long GGiet::field() const {
    auto pick = [](long cur, const Scalar& s) { return cur != 0 ? cur : s.field(); };
    long f = 0;
    for (const auto& it : top_.items()) f = pick(f, it.length);
    for (const auto& it : bottom_.items()) f = pick(f, it.length);
    for (const auto& [a, s] : slopes_) f = pick(f, s);
    return f;
}

std::vector<std::string> validate(const GGiet& m) {
    std::vector<std::string> out;

    long field = 0;
    auto check_field = [&](const Scalar& s, const std::string& what) {
        if (s.field() == 0) return;
        if (field == 0) {
            field = s.field();
        } else if (field != s.field()) {
            out.push_back("field mismatch: " + what + " uses sqrt(" + std::to_string(s.field()) +
                          ") but the map uses sqrt(" + std::to_string(field) + ")");
        }
    };
    auto scan = [&](const Layout& layout, const char* side) {
        std::set<Label> seen;
        for (std::size_t i = 0; i < layout.items().size(); ++i) {
            const auto& it = layout.items()[i];
            const std::string name = it.gap ? "gap" : it.label;
            check_field(it.length, std::string(side) + " item " + std::to_string(i) + " (" + name + ")");
            if (!it.gap && it.label.empty()) out.push_back(std::string("empty label at ") + side + " item " + std::to_string(i));
            if (!it.gap && !seen.insert(it.label).second) {
                out.push_back("label " + it.label + " appears twice on " + side);
            }
        }
        return seen;
    };
    const std::set<Label> top_labels = scan(m.top(), "top");
    const std::set<Label> bottom_labels = scan(m.bottom(), "bottom");
    for (const auto& [a, s] : m.slopes()) check_field(s, "slope of " + a);
    if (!out.empty()) return out;

    auto positive = [&](const Layout& layout, const char* side) {
        for (std::size_t i = 0; i < layout.items().size(); ++i) {
            const auto& it = layout.items()[i];
            if (it.length.sign() <= 0) {
                out.push_back(std::string("nonpositive length for ") + (it.gap ? "gap" : it.label) + " at " + side +
                              " item " + std::to_string(i));
            }
        }
    };
    positive(m.top(), "top");
    positive(m.bottom(), "bottom");

    for (const auto& a : top_labels) {
        if (!bottom_labels.count(a)) out.push_back("label " + a + " missing from bottom");
    }
    for (const auto& a : bottom_labels) {
        if (!top_labels.count(a)) out.push_back("label " + a + " missing from top");
    }
    for (const auto& a : top_labels) {
        auto it = m.slopes().find(a);
        if (it == m.slopes().end()) {
            out.push_back("missing slope for " + a);
        } else if (it->second.sign() <= 0) {
            out.push_back("nonpositive slope for " + a);
        }
    }
    for (const auto& [a, s] : m.slopes()) {
        if (!top_labels.count(a) && !bottom_labels.count(a)) out.push_back("slope given for unknown label " + a);
    }
    if (m.top().total() != m.bottom().total()) {
        out.push_back("ambient length mismatch: top " + m.top().total().to_string() + ", bottom " +
                      m.bottom().total().to_string());
    }
    if (!out.empty()) return out;

    for (const auto& a : m.labels()) {
        if (m.slope(a) * m.top_interval(a).length() != m.bottom_interval(a).length()) {
            out.push_back("branch length mismatch for " + a);
        }
    }
    return out;
}

bool equal_up_to_relabeling(const GGiet& a, const GGiet& b) {
    if (a.d() != b.d() || a.length() != b.length()) return false;
    if (a.top_gaps() != b.top_gaps() || a.bottom_gaps() != b.bottom_gaps()) return false;
    for (std::size_t i = 0; i < a.d(); ++i) {
        const Label& x = a.labels()[i];
        const Label& y = b.labels()[i];
        if (a.top_interval(x) != b.top_interval(y)) return false;
        if (a.bottom_interval(x) != b.bottom_interval(y)) return false;
        if (a.slope(x) != b.slope(y)) return false;
    }
    return true;
}

std::string describe(const GGiet& m) {
    std::ostringstream os;
    auto line = [&](const Layout& layout) {
        for (const auto& it : layout.items()) {
            os << '[' << (it.gap ? std::string("gap") : it.label) << ':' << it.length.to_string() << ']';
        }
    };
    os << "top ";
    line(m.top());
    os << " bottom ";
    line(m.bottom());
    if (!m.slopes().empty()) {
        os << " slopes";
        for (const auto& [a, s] : m.slopes()) os << ' ' << a << '=' << s.to_string();
    }
    return os.str();
}

}  // namespace giet
