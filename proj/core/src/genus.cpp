#include "giet/genus.hpp"

#include <set>
#include <stdexcept>

namespace giet {

namespace {

/// p[i] = bottom position of the letter at top position i, positions 1..d, with p[0] = 0 and p[d+1] = d+1.
std::vector<int> top_to_bottom(const CombData& pi) {
    const int d = static_cast<int>(pi.pi_top.size());
    if (static_cast<int>(pi.pi_bottom.size()) != d) throw std::invalid_argument("permutation sides differ in size");
    std::vector<int> p(d + 2, 0);
    for (const auto& [a, t] : pi.pi_top) {
        auto it = pi.pi_bottom.find(a);
        if (it == pi.pi_bottom.end()) throw std::invalid_argument("label " + a + " missing from bottom");
        p[t] = it->second;
    }
    p[d + 1] = d + 1;
    return p;
}

}  // namespace

bool is_irreducible(const CombData& pi) {
    const std::vector<int> p = top_to_bottom(pi);
    const int d = static_cast<int>(p.size()) - 2;
    int prefix_max = 0;
    for (int k = 1; k < d; ++k) {
        prefix_max = std::max(prefix_max, p[k]);
        if (prefix_max == k) return false;
    }
    return true;
}

int genus_of_permutation(const CombData& pi) {
    if (!is_irreducible(pi)) throw std::invalid_argument("genus_of_permutation: permutation is reducible");
    const std::vector<int> p = top_to_bottom(pi);
    const int d = static_cast<int>(p.size()) - 2;
    std::vector<int> inv(d + 2);
    for (int i = 0; i <= d + 1; ++i) inv[p[i]] = i;
    // sigma(j) = p^{-1}(p(j) + 1) - 1 permutes {0, ..., d}; its cycles are the singularities.
    std::vector<bool> seen(d + 1, false);
    int cycles = 0;
    for (int j = 0; j <= d; ++j) {
        if (seen[j]) continue;
        ++cycles;
        for (int k = j; !seen[k]; k = inv[p[k] + 1] - 1) seen[k] = true;
    }
    return (d - cycles + 1) / 2;
}

}  // namespace giet
