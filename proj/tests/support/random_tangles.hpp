#pragma once

#include <optional>
#include <random>

#include "support/fixtures.hpp"
#include "tanglekit/evaluate.hpp"

// Seeded random tangles for property tests. Pieces are built from annular
// diagrams and stacking tangles and combined with compose(), and every
// sampler re-checks its draw with validate(), resampling anything rejected.

namespace testsupport {

using namespace tanglekit;

inline std::vector<int> random_noncrossing(int points, std::mt19937_64& rng) {
    std::vector<int> mate(points, -1);
    auto rec = [&](auto&& self, int lo, int hi) -> void { // half-open block
        if (lo >= hi) return;
        std::vector<int> odds;
        for (int j = lo + 1; j < hi; j += 2) odds.push_back(j);
        int j = odds[std::uniform_int_distribution<int>(0, static_cast<int>(odds.size()) - 1)(rng)];
        mate[lo] = j;
        mate[j] = lo;
        self(self, lo + 1, j);
        self(self, j + 1, hi);
    };
    rec(rec, 0, points);
    return mate;
}

inline std::vector<std::pair<int, int>> random_matching_pairs(int n, std::mt19937_64& rng) {
    std::vector<std::pair<int, int>> ps;
    auto m = random_noncrossing(2 * n, rng);
    for (int p = 0; p < 2 * n; ++p)
        if (m[p] > p) ps.push_back({p, m[p]});
    return ps;
}

// Random single-disc tangle: outer arity a, one internal disc of arity b,
// annular noncrossing strands, white base shading. Base points are searched
// so the distinguished-region markers come out consistent.
inline Tangle random_annular(int a, int b, std::mt19937_64& rng) {
    for (int attempt = 0; attempt < 400; ++attempt) {
        Tangle t;
        t.outer = {a, a > 0 ? 0 : -1};
        t.inner.push_back({b, b > 0 ? 0 : -1});
        t.shading = Color::white;
        int A = 2 * a, B = 2 * b;
        int tmax = 2 * std::min(a, b);
        int th = tmax > 0 ? 2 * std::uniform_int_distribution<int>(0, tmax / 2)(rng) : 0;
        auto pick_positions = [&](int total, int count) {
            std::vector<int> all(total);
            for (int i = 0; i < total; ++i) all[i] = i;
            std::shuffle(all.begin(), all.end(), rng);
            std::vector<int> sel(all.begin(), all.begin() + count);
            std::sort(sel.begin(), sel.end());
            return sel;
        };
        std::vector<int> op = pick_positions(A, th), ip = pick_positions(B, th);
        int shift = th > 0 ? std::uniform_int_distribution<int>(0, th - 1)(rng) : 0;
        std::vector<char> o_used(A, 0), i_used(B, 0);
        for (int x = 0; x < th; ++x) {
            t.strands.push_back(Strand(Endpoint{-1, op[x]}, Endpoint{0, ip[(x + shift) % th]}));
            o_used[op[x]] = 1;
            i_used[ip[(x + shift) % th]] = 1;
        }
        // Pair the leftover points inside their gaps; odd gaps reject the draw.
        auto fill = [&](int total, const std::vector<char>& used, int disc) -> bool {
            std::vector<int> run;
            auto flush = [&]() {
                if (run.size() % 2) return false;
                if (!run.empty()) {
                    auto m = random_noncrossing(static_cast<int>(run.size()), rng);
                    for (std::size_t x = 0; x < run.size(); ++x)
                        if (m[x] > static_cast<int>(x))
                            t.strands.push_back(
                                Strand(Endpoint{disc, run[x]}, Endpoint{disc, run[m[x]]}));
                    run.clear();
                }
                return true;
            };
            int start = 0;
            while (start < total && !used[start]) ++start;
            if (start == total) { // no through-strands at this boundary
                for (int i = 0; i < total; ++i) run.push_back(i);
                return flush();
            }
            for (int k = 1; k <= total; ++k) {
                int pos = (start + k) % total;
                if (used[pos]) {
                    if (!flush()) return false;
                } else {
                    run.push_back(pos);
                }
            }
            return flush();
        };
        if (!fill(A, o_used, -1) || !fill(B, i_used, 0)) continue;
        std::sort(t.strands.begin(), t.strands.end());

        if (th == 0) {
            // The internal disc floats: anchor it in a random region of the
            // outer part and open a random face outward.
            Tangle bare = t;
            bare.inner.clear();
            bare.strands.erase(
                std::remove_if(bare.strands.begin(), bare.strands.end(),
                               [](const Strand& s) { return s.a.disc == 0 || s.b.disc == 0; }),
                bare.strands.end());
            int nregions = static_cast<int>(regions(bare).size());
            t.nesting.push_back({0, std::uniform_int_distribution<int>(0, nregions - 1)(rng),
                                 std::uniform_int_distribution<int>(0, b)(rng)});
        }
        for (int ob = 0; ob < std::max(1, A); ++ob) {
            if (a > 0) t.outer.base = ob;
            for (int ib = 0; ib < std::max(1, B); ++ib) {
                if (b > 0) t.inner[0].base = ib;
                if (validate(t).empty()) return t;
            }
            if (a == 0) break;
        }
    }
    throw tk_error("random_annular: sampling failed");
}

// Random tangle with the requested number of internal discs, outer arity a,
// disc arities <= max_arity.
inline Tangle random_tangle(int a, int ndiscs, int max_arity, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> arity(0, max_arity);
    for (int attempt = 0; attempt < 200; ++attempt) {
        try {
            if (ndiscs == 0) {
                Tangle t = random_annular(a, arity(rng), rng);
                int b = t.inner[0].arity;
                return compose(t, 0, fixtures::matching_tangle(b, random_matching_pairs(b, rng)));
            }
            if (ndiscs == 1) {
                Tangle t = random_annular(a, arity(rng), rng);
                if (std::uniform_int_distribution<int>(0, 2)(rng) == 0)
                    t = compose(t, 0, random_annular(t.inner[0].arity, arity(rng), rng));
                return t;
            }
            int n = std::max(1, std::min(a, max_arity));
            Tangle t = fixtures::stacking_tangle(n);
            if (a != n) t = compose(random_annular(a, n, rng), 0, t);
            for (int d = 0; d < 2; ++d)
                if (std::uniform_int_distribution<int>(0, 1)(rng)) {
                    int idx = std::uniform_int_distribution<int>(
                        0, static_cast<int>(t.inner.size()) - 1)(rng);
                    t = compose(t, idx, random_annular(t.inner[idx].arity, arity(rng), rng));
                }
            return t;
        } catch (const composition_error&) {
            continue; // shading clash at an arity-0 hole; redraw
        }
    }
    throw tk_error("random_tangle: sampling failed");
}

struct ComposablePair {
    Tangle t, s;
    int j = 0;
};

// Composable pair with composite size within the stated bounds.
inline ComposablePair random_composable_pair(std::mt19937_64& rng, int max_discs = 3,
                                             int max_strands = 8) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        try {
            std::uniform_int_distribution<int> small(0, 2);
            int t_discs = 1 + std::uniform_int_distribution<int>(0, 1)(rng);
            Tangle t = random_tangle(small(rng), t_discs, 2, rng);
            if (t.inner.empty()) continue;
            int j =
                std::uniform_int_distribution<int>(0, static_cast<int>(t.inner.size()) - 1)(rng);
            int s_discs = std::uniform_int_distribution<int>(0, 1)(rng);
            Tangle s = random_tangle(t.inner[j].arity, s_discs, 2, rng);
            int total_discs =
                static_cast<int>(t.inner.size()) - 1 + static_cast<int>(s.inner.size());
            int total_strands = static_cast<int>(t.strands.size() + s.strands.size());
            if (total_discs > max_discs || total_strands > max_strands) continue;
            compose(t, j, s); // composability check; throws on shading clash
            return {t, s, j};
        } catch (const composition_error&) {
            continue;
        }
    }
    throw tk_error("random_composable_pair: sampling failed");
}

inline TLDiagram random_basis_diagram(int n, std::mt19937_64& rng) {
    auto basis = tl_basis(n);
    return basis[std::uniform_int_distribution<int>(0, static_cast<int>(basis.size()) - 1)(rng)];
}

} // namespace testsupport
