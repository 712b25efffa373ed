#pragma once

#include <numeric>
#include <set>

#include "tanglekit/tangle_ops.hpp"
#include "tanglekit/tl.hpp"

// Weighted tangles: non-negative integer weights on strands and boundary
// segments, positive weights on closed loops. A weighted tangle of total
// weight d labels a connected component of the genus-zero moduli space of
// degree-d real maps; enumerate_genus0 lists all of them at a given degree.

namespace tanglekit {

struct WeightedTangle {
    Tangle tangle;
    std::vector<int> strand_weights;               // by strand index
    std::vector<std::vector<int>> segment_weights; // [0] = outer, [1+i] = disc i
    std::vector<int> loop_weights;                 // flat preorder over the forest
    friend bool operator==(const WeightedTangle&, const WeightedTangle&) = default;
    friend bool operator<(const WeightedTangle& a, const WeightedTangle& b) {
        auto key = [](const WeightedTangle& w) {
            return std::tie(w.tangle, w.strand_weights, w.segment_weights, w.loop_weights);
        };
        return key(a) < key(b);
    }
};

inline int segment_count(const DiscBoundary& d) { return d.arity > 0 ? 2 * d.arity : 1; }

inline int flat_loop_count(const Tangle& t) {
    int n = 0;
    auto rec = [&](auto&& self, const OvalNode& node) -> void {
        ++n;
        for (const OvalNode& ch : node.children) self(self, ch);
    };
    for (const OvalRoot& r : t.loops) rec(rec, r.node);
    return n;
}

inline ValidationReport validate_weighted(const WeightedTangle& wt) {
    ValidationReport rep = validate(wt.tangle);
    if (!rep.empty()) return rep;
    auto fail = [&](const std::string& inv, const std::string& det) {
        rep.push_back({inv, det});
    };
    if (wt.strand_weights.size() != wt.tangle.strands.size())
        fail("weights", "one weight per strand required");
    if (wt.segment_weights.size() != wt.tangle.inner.size() + 1)
        fail("weights", "one weight vector per disc boundary required");
    else {
        if (static_cast<int>(wt.segment_weights[0].size()) != segment_count(wt.tangle.outer))
            fail("weights", "outer boundary segment weights have the wrong length");
        for (std::size_t i = 0; i < wt.tangle.inner.size(); ++i)
            if (static_cast<int>(wt.segment_weights[1 + i].size()) !=
                segment_count(wt.tangle.inner[i]))
                fail("weights", "disc " + std::to_string(i) +
                                    " segment weights have the wrong length");
    }
    if (static_cast<int>(wt.loop_weights.size()) != flat_loop_count(wt.tangle))
        fail("weights", "one weight per loop required");
    for (int w : wt.strand_weights)
        if (w < 0) fail("weights", "negative strand weight");
    for (const auto& v : wt.segment_weights)
        for (int w : v)
            if (w < 0) fail("weights", "negative segment weight");
    for (int w : wt.loop_weights)
        if (w < 1) fail("weights", "loop weight below 1");
    return rep;
}

// Sum of all strand, boundary-segment and loop weights.
inline int total_weight(const WeightedTangle& wt) {
    int s = std::accumulate(wt.strand_weights.begin(), wt.strand_weights.end(), 0);
    for (const auto& v : wt.segment_weights) s = std::accumulate(v.begin(), v.end(), s);
    return std::accumulate(wt.loop_weights.begin(), wt.loop_weights.end(), s);
}

namespace detail {

// Canonicalization without the weight-domain checks; extraction may carry
// out-of-domain weights that are surfaced as diagnostics instead.
inline std::pair<WeightedTangle, Relabeling> canonicalize_weighted_unchecked(
    const WeightedTangle& wt) {
    Scene s = analyze(wt.tangle);
    WeightContext ctx;
    ctx.strand_w = wt.strand_weights;
    ctx.segment_w = wt.segment_weights;
    ctx.loop_w = wt.loop_weights;
    auto [canon, rl] = emit_canonical(s, &ctx);
    WeightedTangle out;
    out.tangle = std::move(canon);
    out.strand_weights.resize(wt.strand_weights.size());
    for (std::size_t i = 0; i < wt.strand_weights.size(); ++i)
        out.strand_weights[rl.strand_new[i]] = wt.strand_weights[i];
    out.segment_weights.resize(wt.segment_weights.size());
    for (int sl = 0; sl < s.nslots; ++sl) {
        int n = segment_count(sl == 0 ? wt.tangle.outer : wt.tangle.inner[sl - 1]);
        std::vector<int>& dst = out.segment_weights[rl.disc_new[sl]];
        dst.resize(n);
        for (int a = 0; a < n; ++a) {
            int na = rl.point_new[sl].empty() ? a : rl.point_new[sl][a];
            dst[na] = wt.segment_weights[sl][a];
        }
    }
    out.loop_weights.resize(wt.loop_weights.size());
    for (std::size_t l = 0; l < wt.loop_weights.size(); ++l)
        out.loop_weights[rl.loop_new[l]] = wt.loop_weights[l];
    return {std::move(out), std::move(rl)};
}

} // namespace detail

inline WeightedTangle canonicalize_weighted(const WeightedTangle& wt) {
    ValidationReport rep = validate_weighted(wt);
    if (!rep.empty()) throw validation_error(rep[0].invariant + ": " + rep[0].detail);
    return detail::canonicalize_weighted_unchecked(wt).first;
}

inline bool equals_weighted(const WeightedTangle& a, const WeightedTangle& b) {
    return canonicalize_weighted(a) == canonicalize_weighted(b);
}

// Composition of weighted tangles. The segment weights along the glued
// boundary must agree arc by arc; a strand or loop formed by concatenation
// carries the minimum of its constituents' weights.
inline WeightedTangle compose_weighted(const WeightedTangle& wt, int j, const WeightedTangle& ws) {
    for (const auto* w : {&wt, &ws}) {
        ValidationReport rep = validate_weighted(*w);
        if (!rep.empty()) throw validation_error(rep[0].invariant + ": " + rep[0].detail);
    }
    detail::CompositeBuild cb = detail::compose_build(wt.tangle, j, ws.tangle);
    for (auto [ta, sa] : cb.glued_arcs) {
        int a = wt.segment_weights[1 + j][ta];
        int b = ws.segment_weights[0][sa];
        if (a != b)
            throw sewing_error("compose_weighted: boundary segment weights disagree (" +
                               std::to_string(a) + " vs " + std::to_string(b) + ")");
    }
    WeightedTangle out;
    out.tangle = cb.canonical;
    auto side_strand_w = [&](int side, int idx) {
        return side == 0 ? wt.strand_weights[idx] : ws.strand_weights[idx];
    };
    for (const auto& src : cb.strand_sources) {
        int w = INT32_MAX;
        for (auto [side, idx] : src) w = std::min(w, side_strand_w(side, idx));
        out.strand_weights.push_back(w);
    }
    for (const auto& lsrc : cb.loop_sources) {
        if (lsrc.side == 0)
            out.loop_weights.push_back(wt.loop_weights[lsrc.old_flat]);
        else if (lsrc.side == 1)
            out.loop_weights.push_back(ws.loop_weights[lsrc.old_flat]);
        else {
            int w = INT32_MAX;
            for (auto [side, idx] : lsrc.chain) w = std::min(w, side_strand_w(side, idx));
            out.loop_weights.push_back(w);
        }
    }
    out.segment_weights.resize(out.tangle.inner.size() + 1);
    auto carry = [&](int side, const std::vector<int>& slot_map,
                     const WeightedTangle& src_wt) {
        (void)side;
        for (std::size_t sl = 0; sl < slot_map.size(); ++sl) {
            if (slot_map[sl] == -1) continue;
            int asm_slot = slot_map[sl];
            int new_slot = cb.rl.disc_new[asm_slot];
            int n = static_cast<int>(src_wt.segment_weights[sl].size());
            std::vector<int>& dst = out.segment_weights[new_slot];
            dst.resize(n);
            for (int a = 0; a < n; ++a) {
                int na = cb.rl.point_new[asm_slot].empty() ? a : cb.rl.point_new[asm_slot][a];
                dst[na] = src_wt.segment_weights[sl][a];
            }
        }
    };
    carry(0, cb.t_slot_map, wt);
    carry(1, cb.s_slot_map, ws);
    return out;
}

// Total number of critical points of a generic real map of genus g and
// degree d, by Riemann-Hurwitz.
inline int euler_count_check(int g, int d) { return 2 * (d + g - 1); }

// Number of boundary components of the half of a maximal real curve of genus
// g (Harnack's bound), hence the internal-disc count of a genus-g tangle.
inline int harnack_disc_count(int g) { return g + 1; }

constexpr int enumerate_max_degree = 4;

// Every canonical weighted tangle of total weight d with no internal discs:
// 2k outer points with 0 <= 2k <= 2d-2, a noncrossing matching, a weighted
// oval forest, both base shadings. Deterministic, duplicate-free order.
inline std::vector<WeightedTangle> enumerate_genus0(int d) {
    if (d < 1 || d > enumerate_max_degree)
        throw capacity_error("enumerate_genus0 supports 1 <= d <= " +
                             std::to_string(enumerate_max_degree));
    std::set<WeightedTangle> out;

    // Weight compositions: all vectors of `parts` non-negative ints summing
    // to total.
    auto compositions = [](int total, int parts) {
        std::vector<std::vector<int>> res;
        std::vector<int> cur(parts, 0);
        auto rec = [&](auto&& self, int i, int left) -> void {
            if (i == parts - 1) {
                cur[i] = left;
                res.push_back(cur);
                return;
            }
            for (int v = 0; v <= left; ++v) {
                cur[i] = v;
                self(self, i + 1, left - v);
            }
        };
        if (parts == 0) {
            if (total == 0) res.push_back({});
            return res;
        }
        rec(rec, 0, total);
        return res;
    };

    for (Color shading : {Color::white, Color::black}) {
        for (int k = 0; 2 * k <= 2 * d - 2; ++k) {
            for (const TLDiagram& m : tl_basis(k)) {
                Tangle base;
                base.outer = {k, k > 0 ? 0 : -1};
                for (int p = 0; p < 2 * k; ++p)
                    if (m.mate[p] > p)
                        base.strands.push_back(Strand(Endpoint{-1, p}, Endpoint{-1, m.mate[p]}));
                base.shading = shading;
                int nregions = static_cast<int>(regions(base).size());
                int nsegs = segment_count(base.outer);

                // Ordered loop placements; duplicates are folded away by the
                // canonical set.
                struct Placement {
                    std::vector<OvalRoot> roots;
                    std::vector<int> weights; // preorder
                };
                std::vector<Placement> placements{{{}, {}}};
                for (int nloops = 1; nloops <= d; ++nloops) {
                    std::size_t prev_sz = placements.size();
                    for (std::size_t pi = 0; pi < prev_sz; ++pi) {
                        if (static_cast<int>(placements[pi].weights.size()) != nloops - 1)
                            continue;
                        // Insert one more loop: as a new root in any region or
                        // as a child of any existing loop.
                        Placement base_p = placements[pi];
                        for (int r = 0; r < nregions; ++r) {
                            Placement p = base_p;
                            p.roots.push_back({r, {}});
                            p.weights.push_back(1);
                            placements.push_back(std::move(p));
                        }
                        int total_nodes = nloops - 1;
                        for (int host = 0; host < total_nodes; ++host) {
                            Placement p = base_p;
                            int seen = 0;
                            bool inserted = false;
                            auto rec = [&](auto&& self, OvalNode& node) -> bool {
                                if (seen++ == host) {
                                    node.children.push_back({});
                                    return true;
                                }
                                for (OvalNode& ch : node.children)
                                    if (self(self, ch)) return true;
                                return false;
                            };
                            for (OvalRoot& root : p.roots)
                                if (rec(rec, root.node)) {
                                    inserted = true;
                                    break;
                                }
                            if (!inserted) continue;
                            // Preorder position of the inserted node is the
                            // host's subtree end; recompute weights by size.
                            p.weights.assign(nloops, 1);
                            placements.push_back(std::move(p));
                        }
                    }
                }

                for (const Placement& pl : placements) {
                    int nloops = static_cast<int>(pl.weights.size());
                    // Loop weights: each >= 1, total L <= d.
                    for (int L = nloops; L <= d; ++L) {
                        for (auto& lw : compositions(L - nloops, nloops)) {
                            int rest = d - L;
                            for (auto& sw : compositions(rest, k + nsegs)) {
                                WeightedTangle wt;
                                wt.tangle = base;
                                wt.tangle.loops = pl.roots;
                                wt.loop_weights.resize(nloops);
                                for (int i = 0; i < nloops; ++i)
                                    wt.loop_weights[i] = 1 + lw[i];
                                wt.strand_weights.assign(sw.begin(), sw.begin() + k);
                                wt.segment_weights.resize(1);
                                wt.segment_weights[0].assign(sw.begin() + k, sw.end());
                                out.insert(canonicalize_weighted(wt));
                            }
                        }
                    }
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

} // namespace tanglekit
