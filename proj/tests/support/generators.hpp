#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "giet/ggiet.hpp"

namespace giet::testgen {

using Rng = std::mt19937_64;

inline Label letter(int i) { return std::string(1, static_cast<char>('A' + i)); }

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Small-denominator lengths make endpoint coincidences (cases 1b, 1c, 2boundary) common.
inline Scalar small_length(Rng& rng) {
    static const long dens[] = {1, 2, 3, 4, 6, 8, 12};
    const long den = dens[uniform(rng, 0, 6)];
    return Scalar(uniform(rng, 1, static_cast<int>(2 * den)), den);
}

inline Scalar slope(Rng& rng) {
    switch (uniform(rng, 0, 2)) {
        case 0: return Scalar(1, 2);
        case 1: return Scalar(1);
        default: return Scalar(2);
    }
}

struct MapOptions {
    int max_d = 6;
    int min_d = 1;
    double gap_probability = 0.3;
    bool affine = true;
};

/// Random rational g-AIET: shuffled letters on both lines, random interior gaps, and a final gap
/// on the shorter line so both fill the same ambient interval.
inline GGiet random_map(Rng& rng, const MapOptions& opt = {}) {
    const int d = uniform(rng, opt.min_d, opt.max_d);
    std::vector<Label> labels;
    for (int i = 0; i < d; ++i) labels.push_back(letter(i));
    std::map<Label, Scalar> slopes;
    std::map<Label, Scalar> len;
    for (const auto& a : labels) {
        slopes[a] = opt.affine ? slope(rng) : Scalar(1);
        len[a] = small_length(rng);
    }
    auto line = [&](bool top) {
        std::vector<Label> order = labels;
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<Item> items;
        for (const auto& a : order) {
            if (coin(rng, opt.gap_probability)) items.push_back(Item::make_gap(small_length(rng)));
            items.push_back(Item::interval(a, top ? len[a] : len[a] * slopes[a]));
        }
        if (coin(rng, opt.gap_probability)) items.push_back(Item::make_gap(small_length(rng)));
        return items;
    };
    std::vector<Item> top = line(true);
    std::vector<Item> bottom = line(false);
    Scalar tt, bt;
    for (const auto& it : top) tt += it.length;
    for (const auto& it : bottom) bt += it.length;
    if (tt < bt) top.push_back(Item::make_gap(bt - tt));
    if (bt < tt) bottom.push_back(Item::make_gap(tt - bt));
    return GGiet(Layout(top), Layout(bottom), slopes);
}

/// Random gapless rational IET (slopes 1) on d letters.
inline GGiet random_iet(Rng& rng, int d) {
    MapOptions opt;
    opt.min_d = opt.max_d = d;
    opt.gap_probability = 0;
    opt.affine = false;
    return random_map(rng, opt);
}

/// Random right-open subinterval of [0, L) with endpoints on a grid of step L/24.
inline Interval random_subinterval(Rng& rng, const Scalar& L) {
    int a = uniform(rng, 0, 23);
    int b = uniform(rng, 0, 23);
    if (a > b) std::swap(a, b);
    return {L * Scalar(a, 24), L * Scalar(b + 1, 24)};
}

inline Scalar random_point(Rng& rng, const Scalar& L) {
    return L * Scalar(uniform(rng, 0, 9999), 10000) + L * Scalar(1, 20011);
}

}  // namespace giet::testgen
