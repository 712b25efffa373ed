#pragma once

#include "tanglekit/tangle_ops.hpp"

// Shared hand-built tangles. Disc presentation of rectangle diagrams: points
// 0..2n-1 counterclockwise, bottom_i = point i-1, top_i = point 2n-i, base
// point 0, white base region at the left edge.

namespace fixtures {

using namespace tanglekit;

// Noncrossing matching (pairs of disc positions) as a single-disc tangle.
inline Tangle matching_tangle(int n, const std::vector<std::pair<int, int>>& pairs,
                              Color shading = Color::white) {
    Tangle t;
    t.outer = {n, n > 0 ? 0 : -1};
    for (auto [i, j] : pairs) t.strands.push_back(Strand(Endpoint{-1, i}, Endpoint{-1, j}));
    std::sort(t.strands.begin(), t.strands.end());
    t.shading = shading;
    return t;
}

// The TL_2 cup-cap generator as a disc tangle.
inline Tangle cupcap() { return matching_tangle(2, {{0, 1}, {2, 3}}); }

// The multiplication tangle for TL_n: outer rectangle, disc 0 = lower factor,
// disc 1 = upper factor, products read bottom to top.
inline Tangle stacking_tangle(int n) {
    Tangle t;
    t.outer = {n, 0};
    t.inner = {{n, 0}, {n, 0}};
    for (int i = 1; i <= n; ++i) {
        t.strands.push_back(Strand(Endpoint{-1, i - 1}, Endpoint{0, i - 1}));
        t.strands.push_back(Strand(Endpoint{0, 2 * n - i}, Endpoint{1, i - 1}));
        t.strands.push_back(Strand(Endpoint{1, 2 * n - i}, Endpoint{-1, 2 * n - i}));
    }
    std::sort(t.strands.begin(), t.strands.end());
    t.shading = Color::white;
    return t;
}

} // namespace fixtures
