#pragma once

#include <array>
#include <cassert>
#include <map>
#include <set>
#include <string>

#include "tanglekit/tangle.hpp"

// Canonical forms, the operad composition, and the mirror involution.
//
// Canonicalization relabels internal discs by a breadth-first traversal that
// starts at the outer base point, rotates every internal disc so its base
// point is point 0, and orders floating components and loops inside each
// region by a recursive structural encoding. Two valid tangles are isotopic
// (fixing the outer boundary and decorations) exactly when their canonical
// forms are equal field by field.

namespace tanglekit {

namespace detail {

inline int mmod(int a, int n) { return n == 0 ? 0 : ((a % n) + n) % n; }

// Weights riding along with a tangle during canonicalization, indexed by the
// scene's own strand / (slot, arc) / flat-loop numbering.
struct WeightContext {
    std::vector<int> strand_w;
    std::vector<std::vector<int>> segment_w; // per slot
    std::vector<int> loop_w;
};

struct Relabeling {
    std::vector<int> disc_new;               // per slot
    std::vector<std::vector<int>> point_new; // per slot
    std::vector<int> strand_new;             // old strand index -> new index
    std::vector<int> loop_new;               // old flat loop index -> new preorder index
    std::vector<int> region_new;             // old region id -> new region id
};

struct CompLabels {
    std::vector<int> disc_order;          // slots in traversal order
    std::vector<std::vector<int>> pmap;   // per slot in disc_order: point -> new point
    std::vector<int> face_order;          // comp faces sorted under these labels
};

// Breadth-first labels of one component from a start disc: discs in
// discovery order, every disc rotated so its base point becomes point 0
// (the outer disc keeps its labels).
inline CompLabels comp_labels_from(const Scene& s, int comp, int start) {
    CompLabels L;
    std::vector<int> pos(s.nslots, -1);
    L.disc_order.push_back(start);
    pos[start] = 0;
    for (std::size_t qi = 0; qi < L.disc_order.size(); ++qi) {
        int sl = L.disc_order[qi];
        int n = s.points_of[sl];
        int b = n > 0 ? (sl == 0 ? s.t.outer.base : s.t.inner[sl - 1].base) : 0;
        for (int i = 0; i < n; ++i) {
            int p = mmod(b + i, n);
            int e = s.alpha[s.dart_of(sl, p)];
            int sl2 = s.slot_of_dart[e];
            if (pos[sl2] == -1) {
                pos[sl2] = static_cast<int>(L.disc_order.size());
                L.disc_order.push_back(sl2);
            }
        }
    }
    L.pmap.resize(L.disc_order.size());
    for (std::size_t i = 0; i < L.disc_order.size(); ++i) {
        int sl = L.disc_order[i];
        int n = s.points_of[sl];
        L.pmap[i].resize(n);
        int b = sl == 0 ? 0 : (n > 0 ? s.t.inner[sl - 1].base : 0);
        for (int p = 0; p < n; ++p) L.pmap[i][mmod(p, n)] = mmod(p - b, n);
    }
    // Face order: ascending smallest (disc position, relabeled arc).
    auto newarc = [&](int sl, int arc) {
        int n = s.points_of[sl];
        if (n == 0) return 0;
        int b = sl == 0 ? 0 : s.t.inner[sl - 1].base;
        return mmod(arc - b, n);
    };
    std::vector<std::pair<std::pair<int, int>, int>> keyed;
    for (int f : s.comp_faces[comp]) {
        std::pair<int, int> key{INT32_MAX, INT32_MAX};
        for (auto [sl, arc] : s.face_corners[f])
            key = std::min(key, {pos[sl], newarc(sl, arc)});
        keyed.push_back({key, f});
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [k, f] : keyed) L.face_order.push_back(f);
    return L;
}

// Structural encodings used to order siblings inside a region. A component's
// encoding is minimized over all start discs, so equal encodings mean the
// subtrees are interchangeable copies.
struct Encoder {
    const Scene& s;
    const WeightContext* w;
    std::vector<std::vector<int>> r_comps, r_loops; // items per rnode
    std::vector<std::string> rnode_memo, loop_memo, comp_memo;
    std::vector<CompLabels> best_labels;

    Encoder(const Scene& sc, const WeightContext* wc) : s(sc), w(wc) {
        r_comps.resize(s.rnodes.size());
        r_loops.resize(s.rnodes.size());
        for (int c = 1; c < static_cast<int>(s.comp_slots.size()); ++c)
            r_comps[s.comp_parent_rnode[c]].push_back(c);
        for (std::size_t l = 0; l < s.loops.size(); ++l)
            r_loops[s.loops[l].anchor_rnode].push_back(static_cast<int>(l));
        rnode_memo.assign(s.rnodes.size(), "");
        loop_memo.assign(s.loops.size(), "");
        comp_memo.assign(s.comp_slots.size(), "");
        best_labels.resize(s.comp_slots.size());
    }

    const std::string& rnode_enc(int r) {
        std::string& memo = rnode_memo[r];
        if (!memo.empty()) return memo;
        std::vector<std::string> cs, ls;
        for (int c : r_comps[r]) cs.push_back(comp_enc(c));
        for (int l : r_loops[r]) ls.push_back(loop_enc(l));
        std::sort(cs.begin(), cs.end());
        std::sort(ls.begin(), ls.end());
        memo = "{";
        for (auto& e : cs) memo += e;
        memo += "~";
        for (auto& e : ls) memo += e;
        memo += "}";
        return memo;
    }

    const std::string& loop_enc(int l) {
        std::string& memo = loop_memo[l];
        if (!memo.empty()) return memo;
        memo = "L";
        if (w) memo += std::to_string(w->loop_w[l]) + ":";
        memo += rnode_enc(s.loops[l].inside_rnode);
        return memo;
    }

    std::string comp_enc_from(int c, int start, CompLabels* out) {
        CompLabels L = comp_labels_from(s, c, start);
        std::vector<int> pos(s.nslots, -1);
        for (std::size_t i = 0; i < L.disc_order.size(); ++i) pos[L.disc_order[i]] = static_cast<int>(i);
        std::string e = "C";
        for (int sl : L.disc_order) {
            e += std::to_string(s.arity_of_slot(sl));
            if (w) {
                e += "w(";
                int n = s.corner_count(sl);
                int b = sl == 0 ? 0 : (s.points_of[sl] > 0 ? s.t.inner[sl - 1].base : 0);
                for (int a = 0; a < n; ++a)
                    e += std::to_string(w->segment_w[sl][mmod(a + b, n)]) + ",";
                e += ")";
            }
            e += ",";
        }
        e += "|S";
        std::vector<std::array<int, 5>> quads;
        for (std::size_t si = 0; si < s.t.strands.size(); ++si) {
            const Strand& st = s.t.strands[si];
            int sa = slot_of(st.a);
            if (s.comp_of_slot[sa] != c) continue;
            int sb = slot_of(st.b);
            std::array<int, 2> ea{pos[sa], L.pmap[pos[sa]][st.a.point]};
            std::array<int, 2> eb{pos[sb], L.pmap[pos[sb]][st.b.point]};
            if (eb < ea) std::swap(ea, eb);
            quads.push_back({ea[0], ea[1], eb[0], eb[1], w ? w->strand_w[si] : 0});
        }
        std::sort(quads.begin(), quads.end());
        for (auto& q : quads) {
            e += "(";
            for (int v : q) e += std::to_string(v) + ",";
            e += ")";
        }
        int outer_f = s.comp_outer_face[c];
        int ord = 0;
        for (std::size_t i = 0; i < L.face_order.size(); ++i)
            if (L.face_order[i] == outer_f) ord = static_cast<int>(i);
        e += "|o" + std::to_string(ord) + "|R";
        for (int f : L.face_order) {
            if (f == outer_f) continue;
            e += "[" + rnode_enc(s.rnode_of_face[f]) + "]";
        }
        if (out) *out = std::move(L);
        return e;
    }

    const std::string& comp_enc(int c) {
        std::string& memo = comp_memo[c];
        if (!memo.empty()) return memo;
        std::string best;
        CompLabels bestL;
        for (int start : s.comp_slots[c]) {
            CompLabels L;
            std::string e = comp_enc_from(c, start, &L);
            if (best.empty() || e < best) {
                best = std::move(e);
                bestL = std::move(L);
            }
        }
        memo = std::move(best);
        best_labels[c] = std::move(bestL);
        return memo;
    }
};

} // namespace detail

namespace detail {

// Canonical emission: renumbers discs, points, strands, regions and the loop
// forest; returns the relabeling so weight decorations can follow along.
inline std::pair<Tangle, Relabeling> emit_canonical(const Scene& s, const WeightContext* w = nullptr) {
    Encoder enc(s, w);
    for (int c = 1; c < static_cast<int>(s.comp_slots.size()); ++c) enc.comp_enc(c);

    Relabeling rl;
    rl.disc_new.assign(s.nslots, -1);
    rl.point_new.resize(s.nslots);

    Tangle out;
    out.outer = s.t.outer;
    out.shading = s.t.shading;

    CompLabels L0 = comp_labels_from(s, 0, 0);
    int next_slot = 0;
    auto place_comp = [&](const CompLabels& L) {
        for (std::size_t i = 0; i < L.disc_order.size(); ++i) {
            int sl = L.disc_order[i];
            rl.disc_new[sl] = next_slot++;
            rl.point_new[sl] = L.pmap[i];
            if (sl != 0) {
                int k = s.arity_of_slot(sl);
                out.inner.push_back({k, k > 0 ? 0 : -1});
            }
        }
    };
    place_comp(L0);

    // Region BFS: new ids in discovery order; siblings by structural encoding.
    std::vector<int> new_id(s.rnodes.size(), -1);
    std::vector<int> queue;
    auto push_node = [&](int r) {
        new_id[r] = static_cast<int>(queue.size());
        queue.push_back(r);
    };
    for (int f : L0.face_order) push_node(s.rnode_of_face[f]);

    struct EmittedLoop {
        int old_idx;
        std::vector<int> child_slots; // indices into emitted loop pool
    };
    std::vector<EmittedLoop> loop_pool;
    std::vector<std::pair<int, int>> root_loops; // (anchor new id, pool idx)

    std::vector<int> loop_pool_of(s.loops.size(), -1);

    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int r = queue[qi];
        auto comps = enc.r_comps[r];
        std::sort(comps.begin(), comps.end(), [&](int a, int b) {
            return std::pair<const std::string&, int>(enc.comp_enc(a), a) <
                   std::pair<const std::string&, int>(enc.comp_enc(b), b);
        });
        for (int c : comps) {
            const CompLabels& L = enc.best_labels[c];
            int min_new = next_slot; // discs are assigned consecutively
            place_comp(L);
            int outer_f = s.comp_outer_face[c];
            int ord = 0;
            for (std::size_t i = 0; i < L.face_order.size(); ++i)
                if (L.face_order[i] == outer_f) ord = static_cast<int>(i);
            out.nesting.push_back({min_new - 1, static_cast<int>(qi), ord});
            for (int f : L.face_order)
                if (f != outer_f) push_node(s.rnode_of_face[f]);
        }
        auto loops = enc.r_loops[r];
        std::sort(loops.begin(), loops.end(), [&](int a, int b) {
            return std::pair<const std::string&, int>(enc.loop_enc(a), a) <
                   std::pair<const std::string&, int>(enc.loop_enc(b), b);
        });
        for (int l : loops) {
            int pool = static_cast<int>(loop_pool.size());
            loop_pool.push_back({l, {}});
            loop_pool_of[l] = pool;
            if (s.loops[l].parent == -1)
                root_loops.push_back({static_cast<int>(qi), pool});
            else
                loop_pool[loop_pool_of[s.loops[l].parent]].child_slots.push_back(pool);
            push_node(s.loops[l].inside_rnode);
        }
    }

    // Strands under new labels, sorted, with the permutation recorded.
    std::vector<std::pair<Strand, int>> tagged;
    for (std::size_t si = 0; si < s.t.strands.size(); ++si) {
        const Strand& st = s.t.strands[si];
        auto remap = [&](Endpoint e) {
            int sl = slot_of(e);
            return Endpoint{rl.disc_new[sl] - 1, rl.point_new[sl][e.point]};
        };
        tagged.push_back({Strand(remap(st.a), remap(st.b)), static_cast<int>(si)});
    }
    std::sort(tagged.begin(), tagged.end());
    rl.strand_new.assign(tagged.size(), -1);
    for (std::size_t i = 0; i < tagged.size(); ++i) {
        out.strands.push_back(tagged[i].first);
        rl.strand_new[tagged[i].second] = static_cast<int>(i);
    }
    std::sort(out.nesting.begin(), out.nesting.end());

    // Loop forest in canonical order; preorder positions recorded.
    rl.loop_new.assign(s.loops.size(), -1);
    int preorder = 0;
    auto build = [&](auto&& self, int pool) -> OvalNode {
        OvalNode n;
        rl.loop_new[loop_pool[pool].old_idx] = preorder++;
        for (int ch : loop_pool[pool].child_slots) n.children.push_back(self(self, ch));
        return n;
    };
    std::sort(root_loops.begin(), root_loops.end());
    for (auto [anchor, pool] : root_loops) {
        OvalRoot r;
        r.region = anchor;
        r.node = build(build, pool);
        out.loops.push_back(std::move(r));
    }

    rl.region_new.assign(s.id_to_rnode.size(), -1);
    for (std::size_t i = 0; i < s.id_to_rnode.size(); ++i)
        rl.region_new[i] = new_id[s.id_to_rnode[i]];
    return {std::move(out), std::move(rl)};
}

} // namespace detail

inline Tangle canonicalize(const Tangle& t) {
    Scene s = analyze(t);
    return detail::emit_canonical(s).first;
}

inline bool equals(const Tangle& a, const Tangle& b) {
    return canonicalize(a) == canonicalize(b);
}

// Outer arity k, one internal disc of arity k, through-strands point i to
// point i, base points aligned, white base region.
inline Tangle identity_tangle(int k) {
    if (k < 0) throw capacity_error("identity_tangle: negative arity");
    Tangle t;
    t.outer = {k, k > 0 ? 0 : -1};
    t.inner.push_back({k, k > 0 ? 0 : -1});
    for (int p = 0; p < 2 * k; ++p)
        t.strands.push_back(Strand(Endpoint{-1, p}, Endpoint{0, p}));
    if (k == 0) t.nesting.push_back({0, 0, 0});
    t.shading = Color::white;
    return t;
}

namespace detail {

// Symbolic construction of a tangle: discs and strands plus anchors given as
// "the region containing this boundary arc" or "the interior of that loop".
// assemble() resolves the anchors, runs the region enumeration and returns a
// well-formed (not yet canonical) Tangle. Every structural operation that
// has to rebuild nesting data (involution, compose, the extractor) goes
// through this.
struct SymbolicAnchor {
    int corner_slot = -1;
    int corner_arc = -1;
    int inside_loop = -1; // assembly loop index
};

struct AssemblyComp {
    int any_slot = -1; // any disc slot of the floating component
    SymbolicAnchor parent;
    int of_slot = -1, of_arc = -1; // a corner on the component's outward face
};

struct AssemblyLoop {
    int parent = -1;       // assembly index of the enclosing loop, -1 = root
    SymbolicAnchor anchor; // roots only
};

struct Assembly {
    DiscBoundary outer;
    std::vector<DiscBoundary> inner;
    std::vector<Strand> strands;
    Color shading = Color::white;
    std::vector<AssemblyComp> comps;
    std::vector<AssemblyLoop> loops;
};

struct Assembled {
    Tangle t;
    std::vector<int> loop_map; // assembly loop index -> flat preorder index in t
};

inline Assembled assemble(const Assembly& a) {
    Tangle core{a.outer, a.inner, a.strands, {}, {}, a.shading};
    Scene s = analyze_core(core);
    int ncomp = static_cast<int>(s.comp_slots.size());

    std::vector<int> entry_of_comp(ncomp, -1);
    for (std::size_t i = 0; i < a.comps.size(); ++i) {
        int c = s.comp_of_slot[a.comps[i].any_slot];
        if (c == 0 || entry_of_comp[c] != -1) throw tk_error("assemble: bad component anchors");
        entry_of_comp[c] = static_cast<int>(i);
    }
    for (int c = 1; c < ncomp; ++c)
        if (entry_of_comp[c] == -1) throw tk_error("assemble: component without anchor");

    // Outward faces, then region nodes for everything else.
    s.comp_outer_face.assign(ncomp, -1);
    s.comp_parent_rnode.assign(ncomp, -1);
    for (int c = 1; c < ncomp; ++c) {
        const AssemblyComp& ac = a.comps[entry_of_comp[c]];
        int f = s.face_of_corner(ac.of_slot, ac.of_arc);
        if (s.face_comp[f] != c) throw tk_error("assemble: outward-face corner not on component");
        s.comp_outer_face[c] = f;
    }
    int nfaces = static_cast<int>(s.face_corners.size());
    s.rnode_of_face.assign(nfaces, -1);
    auto face_node = [&](int f) {
        if (s.rnode_of_face[f] == -1) {
            s.rnode_of_face[f] = static_cast<int>(s.rnodes.size());
            s.rnodes.push_back({Color::white, f, -1});
        }
        return s.rnode_of_face[f];
    };
    for (int c = 0; c < ncomp; ++c)
        for (int f : s.comp_faces[c])
            if (c == 0 || f != s.comp_outer_face[c]) face_node(f);
    s.loops.resize(a.loops.size());
    for (std::size_t l = 0; l < a.loops.size(); ++l) {
        s.loops[l].parent = a.loops[l].parent;
        if (a.loops[l].parent >= 0) s.loops[a.loops[l].parent].children.push_back(static_cast<int>(l));
        s.loops[l].inside_rnode = static_cast<int>(s.rnodes.size());
        s.rnodes.push_back({Color::white, -1, static_cast<int>(l)});
    }

    // Anchor resolution (with cycle detection through component parents).
    std::vector<int> state(ncomp, 0); // 0 fresh, 1 visiting, 2 done
    auto resolve = [&](auto&& self, const SymbolicAnchor& an) -> int {
        if (an.inside_loop >= 0) return s.loops[an.inside_loop].inside_rnode;
        int f = s.face_of_corner(an.corner_slot, an.corner_arc);
        int c = s.face_comp[f];
        if (c != 0 && f == s.comp_outer_face[c]) {
            if (state[c] == 1) throw validation_error("nesting: component containment cycle");
            if (state[c] == 0) {
                state[c] = 1;
                s.comp_parent_rnode[c] = self(self, a.comps[entry_of_comp[c]].parent);
                state[c] = 2;
            }
            return s.comp_parent_rnode[c];
        }
        return s.rnode_of_face[f];
    };
    for (int c = 1; c < ncomp; ++c)
        if (state[c] == 0) {
            state[c] = 1;
            s.comp_parent_rnode[c] = resolve(resolve, a.comps[entry_of_comp[c]].parent);
            state[c] = 2;
        }
    for (int c = 1; c < ncomp; ++c)
        s.rnode_of_face[s.comp_outer_face[c]] = s.comp_parent_rnode[c];
    for (std::size_t l = 0; l < a.loops.size(); ++l)
        s.loops[l].anchor_rnode = a.loops[l].parent == -1
                                      ? resolve(resolve, a.loops[l].anchor)
                                      : s.loops[a.loops[l].parent].inside_rnode;

    // Region enumeration: same discovery order the validator uses, so the
    // emitted ids round-trip.
    std::vector<std::pair<int, int>> comps_by_min; // (min disc slot, comp)
    for (int c = 1; c < ncomp; ++c) {
        int m = INT32_MAX;
        for (int sl : s.comp_slots[c]) m = std::min(m, sl);
        comps_by_min.push_back({m, c});
    }
    std::sort(comps_by_min.begin(), comps_by_min.end());
    auto& ids = s.id_to_rnode;
    for (int f : s.comp_faces[0]) ids.push_back(s.rnode_of_face[f]);
    for (std::size_t qi = 0; qi < ids.size(); ++qi) {
        int node = ids[qi];
        for (auto [m, c] : comps_by_min) {
            if (s.comp_parent_rnode[c] != node) continue;
            for (int f : s.comp_faces[c])
                if (f != s.comp_outer_face[c]) ids.push_back(s.rnode_of_face[f]);
        }
        for (std::size_t l = 0; l < s.loops.size(); ++l)
            if (s.loops[l].parent == -1 && s.loops[l].anchor_rnode == node)
                ids.push_back(s.loops[l].inside_rnode);
        int gl = s.rnodes[node].gen_loop;
        if (gl >= 0)
            for (int ch : s.loops[gl].children) ids.push_back(s.loops[ch].inside_rnode);
    }
    if (ids.size() != s.rnodes.size()) throw tk_error("assemble: unreachable region");
    s.rnode_id.assign(s.rnodes.size(), -1);
    for (std::size_t i = 0; i < ids.size(); ++i) s.rnode_id[ids[i]] = static_cast<int>(i);

    assign_scene_colors(s, nullptr);

    // Emit.
    Assembled out;
    out.t.outer = a.outer;
    out.t.inner = a.inner;
    out.t.strands = a.strands;
    out.t.shading = a.shading;
    for (auto [m, c] : comps_by_min) {
        int outer_f = s.comp_outer_face[c];
        int ord = 0;
        for (std::size_t i = 0; i < s.comp_faces[c].size(); ++i)
            if (s.comp_faces[c][i] == outer_f) ord = static_cast<int>(i);
        out.t.nesting.push_back({m - 1, s.rnode_id[s.comp_parent_rnode[c]], ord});
    }
    std::vector<std::pair<int, int>> roots; // (anchor id, assembly idx)
    for (std::size_t l = 0; l < a.loops.size(); ++l)
        if (a.loops[l].parent == -1)
            roots.push_back({s.rnode_id[s.loops[l].anchor_rnode], static_cast<int>(l)});
    std::sort(roots.begin(), roots.end());
    out.loop_map.assign(a.loops.size(), -1);
    int preorder = 0;
    auto build = [&](auto&& self, int l) -> OvalNode {
        OvalNode n;
        out.loop_map[l] = preorder++;
        for (int ch : s.loops[l].children) n.children.push_back(self(self, ch));
        return n;
    };
    for (auto [rid, l] : roots) out.t.loops.push_back({rid, build(build, l)});
    return out;
}

} // namespace detail

// Mirror image: reversed cyclic order on every boundary, base points kept,
// base shading flipped. An involution on canonical forms.
inline Tangle involution(const Tangle& t0) {
    Tangle t = canonicalize(t0);
    Scene s = analyze(t);
    detail::Assembly a;
    a.outer = t.outer;
    a.inner = t.inner;
    a.shading = flip(t.shading);
    auto mu_pt = [&](int sl, int p) {
        int n = s.points_of[sl];
        int c0 = sl == 0 ? 2 * t.outer.base : 0;
        return detail::mmod(c0 - p, n);
    };
    auto mu_corner = [&](int sl, int arc) -> std::pair<int, int> {
        int n = s.points_of[sl];
        if (n == 0) return {sl, 0};
        int c0 = sl == 0 ? 2 * t.outer.base : 0;
        return {sl, detail::mmod(c0 - arc - 1, n)};
    };
    for (const Strand& st : t.strands) {
        Endpoint ea{st.a.disc, mu_pt(detail::slot_of(st.a), st.a.point)};
        Endpoint eb{st.b.disc, mu_pt(detail::slot_of(st.b), st.b.point)};
        a.strands.push_back(Strand(ea, eb));
    }
    auto anchor_of = [&](int rnode) {
        detail::SymbolicAnchor an;
        const Scene::RNode& rn = s.rnodes[rnode];
        if (rn.gen_face >= 0) {
            auto corner = *std::min_element(s.face_corners[rn.gen_face].begin(),
                                            s.face_corners[rn.gen_face].end());
            auto [sl, arc] = mu_corner(corner.first, corner.second);
            an.corner_slot = sl;
            an.corner_arc = arc;
        } else {
            an.inside_loop = rn.gen_loop;
        }
        return an;
    };
    for (int c = 1; c < static_cast<int>(s.comp_slots.size()); ++c) {
        detail::AssemblyComp ac;
        ac.any_slot = s.comp_slots[c][0];
        ac.parent = anchor_of(s.comp_parent_rnode[c]);
        auto corner = *std::min_element(s.face_corners[s.comp_outer_face[c]].begin(),
                                        s.face_corners[s.comp_outer_face[c]].end());
        std::tie(ac.of_slot, ac.of_arc) = mu_corner(corner.first, corner.second);
        a.comps.push_back(ac);
    }
    for (const Scene::FLoop& l : s.loops) {
        detail::AssemblyLoop al;
        al.parent = l.parent;
        if (l.parent == -1) al.anchor = anchor_of(l.anchor_rnode);
        a.loops.push_back(al);
    }
    return canonicalize(detail::assemble(a).t);
}

namespace detail {

// Full composition result: the canonical composite plus enough provenance to
// push weight decorations through (constituents of every joined strand and
// loop, and the matched boundary arcs that were erased by the gluing).
struct CompositeBuild {
    Tangle canonical;
    std::vector<int> t_slot_map, s_slot_map; // scene slots -> assembly slots, -1 = glued away
    // Per canonical strand index: constituent strands as (side, index), side 0 = t, 1 = s.
    std::vector<std::vector<std::pair<int, int>>> strand_sources;
    // Per canonical flat loop index (preorder):
    struct LoopSource {
        int side = -1;    // 0 = t loop, 1 = s loop, 2 = closed chain
        int old_flat = -1;
        std::vector<std::pair<int, int>> chain; // constituent strands for side 2
    };
    std::vector<LoopSource> loop_sources;
    // Matched boundary arcs: (arc of t's glued disc, arc of s's outer disc).
    std::vector<std::pair<int, int>> glued_arcs;
    Relabeling rl; // assembly tangle -> canonical
};

inline CompositeBuild compose_build(const Tangle& T, int j, const Tangle& S) {
    if (j < 0 || j >= static_cast<int>(T.inner.size()))
        throw composition_error("compose: internal disc index " + std::to_string(j) +
                                " out of range");
    Scene st = analyze(T);
    Scene ss = analyze(S);
    int k = T.inner[j].arity;
    if (k != S.outer.arity)
        throw composition_error("compose: arity mismatch (disc has " + std::to_string(k) +
                                ", argument has " + std::to_string(S.outer.arity) + ")");
    {
        auto [hs, ha] = st.base_corner(1 + j);
        Color hole = st.face_color[st.face_of_corner(hs, ha)];
        if (hole != S.shading)
            throw composition_error("compose: shading mismatch at the glued boundary");
    }

    int n2 = 2 * k;
    int bt = k > 0 ? T.inner[j].base : 0;
    int bs = k > 0 ? S.outer.base : 0;
    int nT = static_cast<int>(T.inner.size()), nS = static_cast<int>(S.inner.size());

    CompositeBuild out;
    out.t_slot_map.assign(st.nslots, -1);
    out.s_slot_map.assign(ss.nslots, -1);
    out.t_slot_map[0] = 0;
    for (int i = 0; i < nT; ++i)
        if (i != j) out.t_slot_map[1 + i] = 1 + (i < j ? i : i - 1);
    for (int d = 0; d < nS; ++d) out.s_slot_map[1 + d] = nT + d;

    Assembly a;
    a.outer = T.outer;
    a.shading = T.shading;
    a.inner.resize(nT - 1 + nS);
    for (int i = 0; i < nT; ++i)
        if (i != j) a.inner[out.t_slot_map[1 + i] - 1] = T.inner[i];
    for (int d = 0; d < nS; ++d) a.inner[out.s_slot_map[1 + d] - 1] = S.inner[d];

    auto s_pt = [&](int p) { return mmod(bs + (p - bt), n2); }; // glue index -> s outer point
    auto glue_of = [&](int q) { return mmod(bt + (q - bs), n2); };
    for (int p = 0; p < n2; ++p) out.glued_arcs.push_back({p, s_pt(p)});
    if (k == 0) out.glued_arcs.push_back({0, 0}); // the two whole-circle segments

    auto remap = [&](int side, Endpoint e) {
        int sl = side == 0 ? out.t_slot_map[slot_of(e)] : out.s_slot_map[slot_of(e)];
        return Endpoint{sl - 1, e.point};
    };

    std::vector<std::vector<std::pair<int, int>>> asm_src;
    for (std::size_t i = 0; i < T.strands.size(); ++i) {
        const Strand& stx = T.strands[i];
        if (stx.a.disc == j || stx.b.disc == j) continue;
        a.strands.push_back(Strand(remap(0, stx.a), remap(0, stx.b)));
        asm_src.push_back({{0, static_cast<int>(i)}});
    }
    for (std::size_t i = 0; i < S.strands.size(); ++i) {
        const Strand& stx = S.strands[i];
        if (stx.a.disc == -1 || stx.b.disc == -1) continue;
        a.strands.push_back(Strand(remap(1, stx.a), remap(1, stx.b)));
        asm_src.push_back({{1, static_cast<int>(i)}});
    }

    // Chains through the glued circle. Each glue index p carries two ports, a
    // t-side and an s-side; the curve runs straight through the vertex.
    struct ChainLoop {
        std::vector<std::pair<int, int>> constituents;
        int rep_glue = -1;
    };
    std::vector<ChainLoop> chains;
    std::vector<int> t_at(n2, -1), s_at(n2, -1);
    for (std::size_t i = 0; i < T.strands.size(); ++i)
        for (Endpoint e : {T.strands[i].a, T.strands[i].b})
            if (e.disc == j) t_at[e.point] = static_cast<int>(i);
    for (std::size_t i = 0; i < S.strands.size(); ++i)
        for (Endpoint e : {S.strands[i].a, S.strands[i].b})
            if (e.disc == -1) s_at[glue_of(e.point)] = static_cast<int>(i);

    // Traverse the strand attached at port (p, side) away from the glue circle;
    // returns the far endpoint, or the next glue port it lands on.
    struct Hop {
        bool glue;
        int p;          // glue index when glue
        Endpoint far;   // endpoint otherwise
        int strand;     // constituent strand
        int side;
    };
    auto hop = [&](int p, int side) -> Hop {
        if (side == 0) {
            int i = t_at[p];
            const Strand& stx = T.strands[i];
            Endpoint here{j, p};
            Endpoint other = stx.a == here ? stx.b : stx.a;
            if (other.disc == j) return {true, other.point, {}, i, 0};
            return {false, -1, other, i, 0};
        }
        int i = s_at[p];
        const Strand& stx = S.strands[i];
        Endpoint here{-1, s_pt(p)};
        Endpoint other = stx.a == here ? stx.b : stx.a;
        if (other.disc == -1) return {true, glue_of(other.point), {}, i, 1};
        return {false, -1, other, i, 1};
    };
    std::vector<std::array<bool, 2>> port_done(n2, {false, false});
    for (int p0 = 0; p0 < n2; ++p0) {
        if (port_done[p0][0]) continue;
        // Walk both directions from glue vertex p0.
        std::vector<std::pair<int, int>> constituents;
        std::optional<Endpoint> end_a, end_b;
        int end_a_side = 0, end_b_side = 0;
        bool cycle = false;
        for (int dir = 0; dir < 2 && !cycle; ++dir) {
            int p = p0, side = dir;
            while (true) {
                if (port_done[p][side]) { cycle = true; break; } // closed up
                port_done[p][side] = true;
                Hop h = hop(p, side);
                constituents.push_back({h.side, h.strand});
                if (!h.glue) {
                    (dir == 0 ? end_a : end_b) = h.far;
                    (dir == 0 ? end_a_side : end_b_side) = h.side;
                    break;
                }
                port_done[h.p][side] = true; // arriving port, same side
                p = h.p;
                side = 1 - side; // continue through the vertex
            }
        }
        if (cycle) {
            // Re-walk to mark every port and collect constituents once.
            std::vector<std::pair<int, int>> cs;
            int p = p0, side = 0;
            int rep = p0;
            do {
                port_done[p][0] = port_done[p][1] = true;
                Hop h = hop(p, side);
                cs.push_back({h.side, h.strand});
                rep = std::min(rep, p);
                p = h.p;
                side = 1 - side;
            } while (p != p0 || side != 0);
            chains.push_back({std::move(cs), rep});
        } else {
            a.strands.push_back(
                Strand(remap(end_a_side, *end_a), remap(end_b_side, *end_b)));
            // Dedup constituents (a strand can be walked from both directions).
            std::sort(constituents.begin(), constituents.end());
            constituents.erase(std::unique(constituents.begin(), constituents.end()),
                               constituents.end());
            asm_src.push_back(std::move(constituents));
        }
    }

    // ---- Placement of floating parts: the augmented map M+ -------------
    // Vertices: live discs (assembly slots) plus one degree-2 vertex per glue
    // index. Faces of this map are the composite regions with every loop,
    // old and newly closed, still acting as a wall.
    int nslots_asm = 1 + nT - 1 + nS;
    auto asm_slot_t = [&](int sl) { return out.t_slot_map[sl]; };
    auto asm_slot_s = [&](int sl) { return out.s_slot_map[sl]; };

    // M darts: images of live t darts, live s darts, then glue darts.
    std::vector<int> t_dart_img(st.ndarts, -1), s_dart_img(ss.ndarts, -1);
    int nmd = 0;
    std::vector<int> md_vertex;          // vertex id: asm slot, or nslots_asm + glue index
    std::vector<int> md_outer;           // 1 if at the outer disc
    std::vector<int> md_point;           // point at its disc (live discs)
    std::vector<int> md_glue_side;       // -1, or 0/1 at glue vertices
    auto add_dart = [&](int vertex, bool outer, int point, int glue_side) {
        md_vertex.push_back(vertex);
        md_outer.push_back(outer ? 1 : 0);
        md_point.push_back(point);
        md_glue_side.push_back(glue_side);
        return nmd++;
    };
    for (int sl = 0; sl < st.nslots; ++sl) {
        if (sl == 1 + j) continue;
        for (int p = 0; p < st.points_of[sl]; ++p)
            t_dart_img[st.dart_of(sl, p)] = add_dart(asm_slot_t(sl), sl == 0, p, -1);
    }
    for (int sl = 1; sl < ss.nslots; ++sl)
        for (int p = 0; p < ss.points_of[sl]; ++p)
            s_dart_img[ss.dart_of(sl, p)] = add_dart(asm_slot_s(sl), false, p, -1);
    std::vector<int> gT(n2), gS(n2);
    for (int p = 0; p < n2; ++p) {
        gT[p] = add_dart(nslots_asm + p, false, -1, 0);
        gS[p] = add_dart(nslots_asm + p, false, -1, 1);
    }
    for (int p = 0; p < n2; ++p) {
        t_dart_img[st.dart_of(1 + j, p)] = gT[p];
        s_dart_img[ss.dart_of(0, s_pt(p))] = gS[p];
    }

    std::vector<int> malpha(nmd, -1);
    auto link = [&](int a1, int a2) {
        malpha[a1] = a2;
        malpha[a2] = a1;
    };
    for (const Strand& stx : T.strands)
        link(t_dart_img[st.dart_of(slot_of(stx.a), stx.a.point)],
             t_dart_img[st.dart_of(slot_of(stx.b), stx.b.point)]);
    for (const Strand& stx : S.strands)
        link(s_dart_img[ss.dart_of(slot_of(stx.a), stx.a.point)],
             s_dart_img[ss.dart_of(slot_of(stx.b), stx.b.point)]);

    std::vector<int> asm_points(nslots_asm, 0);
    for (int sl = 0; sl < nslots_asm; ++sl)
        asm_points[sl] = 2 * (sl == 0 ? a.outer.arity : a.inner[sl - 1].arity);
    std::vector<int> asm_dart_of(nslots_asm, -1); // first dart id per live slot
    for (int d = 0; d < nmd; ++d)
        if (md_glue_side[d] == -1 && md_point[d] == 0 && asm_dart_of[md_vertex[d]] == -1)
            asm_dart_of[md_vertex[d]] = d;

    auto mnext = [&](int d) {
        int e = malpha[d];
        if (md_glue_side[e] >= 0) {
            int p = md_vertex[e] - nslots_asm;
            return md_glue_side[e] == 0 ? gS[p] : gT[p];
        }
        int v = md_vertex[e];
        int n = asm_points[v];
        int p2 = md_outer[e] ? (md_point[e] + 1) % n : (md_point[e] - 1 + n) % n;
        return asm_dart_of[v] + p2;
    };

    // Face orbits with live corners.
    std::vector<int> mface(nmd, -1);
    std::vector<std::vector<std::pair<int, int>>> mface_corners; // (assembly slot, arc)
    for (int d0 = 0; d0 < nmd; ++d0) {
        if (mface[d0] != -1) continue;
        int f = static_cast<int>(mface_corners.size());
        mface_corners.emplace_back();
        int d = d0;
        do {
            mface[d] = f;
            int e = malpha[d];
            if (md_glue_side[e] == -1) {
                int v = md_vertex[e];
                int n = asm_points[v];
                int arc = md_outer[e] ? md_point[e] : (md_point[e] - 1 + n) % n;
                mface_corners[f].push_back({v, arc});
            }
            d = mnext(d);
        } while (d != d0);
    }
    std::vector<int> mpseudo(nslots_asm, -1);
    for (int sl = 0; sl < nslots_asm; ++sl)
        if (asm_points[sl] == 0) {
            mpseudo[sl] = static_cast<int>(mface_corners.size());
            mface_corners.push_back({{sl, 0}});
        }
    int nmfaces = static_cast<int>(mface_corners.size());

    // M components over vertices (live discs + glue vertices).
    int nverts = nslots_asm + n2;
    std::vector<int> vcomp(nverts, -1);
    {
        std::vector<std::vector<int>> adj(nverts);
        for (int d = 0; d < nmd; ++d) {
            int e = malpha[d];
            adj[md_vertex[d]].push_back(md_vertex[e]);
        }
        for (int v0 = 0; v0 < nverts; ++v0) {
            if (vcomp[v0] != -1) continue;
            int c = v0;
            std::deque<int> q{v0};
            vcomp[v0] = c;
            while (!q.empty()) {
                int v = q.front();
                q.pop_front();
                for (int w : adj[v])
                    if (vcomp[w] == -1) {
                        vcomp[w] = c;
                        q.push_back(w);
                    }
            }
        }
    }
    auto mface_vertex = [&](int f) {
        if (!mface_corners[f].empty() && mface_corners[f][0].second == 0 &&
            asm_points[mface_corners[f][0].first] == 0)
            return mface_corners[f][0].first;
        for (int d = 0; d < nmd; ++d)
            if (mface[d] == f) return md_vertex[d];
        return -1;
    };

    // ---- Region classes: union of t regions, s regions and M faces ------
    int NT = static_cast<int>(st.rnodes.size());
    int NS = static_cast<int>(ss.rnodes.size());
    std::vector<int> uf(NT + NS + nmfaces);
    for (std::size_t i = 0; i < uf.size(); ++i) uf[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    auto unite = [&](int x, int y) { uf[find(x)] = find(y); };
    auto t_node = [&](int r) { return r; };
    auto s_node = [&](int r) { return NT + r; };
    auto m_node = [&](int f) { return NT + NS + f; };

    for (int d = 0; d < st.ndarts; ++d)
        unite(t_node(st.rnode_of_face[st.face_of_dart[d]]), m_node(mface[t_dart_img[d]]));
    for (int d = 0; d < ss.ndarts; ++d)
        unite(s_node(ss.rnode_of_face[ss.face_of_dart[d]]), m_node(mface[s_dart_img[d]]));
    for (int sl = 0; sl < st.nslots; ++sl)
        if (sl != 1 + j && st.points_of[sl] == 0)
            unite(t_node(st.rnode_of_face[st.pseudo_face_of_slot[sl]]),
                  m_node(mpseudo[asm_slot_t(sl)]));
    for (int sl = 1; sl < ss.nslots; ++sl)
        if (ss.points_of[sl] == 0)
            unite(s_node(ss.rnode_of_face[ss.pseudo_face_of_slot[sl]]),
                  m_node(mpseudo[asm_slot_s(sl)]));
    if (k == 0) {
        int cj = st.comp_of_slot[1 + j];
        unite(t_node(st.comp_parent_rnode[cj]),
              s_node(ss.rnode_of_face[ss.pseudo_face_of_slot[0]]));
    }

    // ---- Walls and the containment tree --------------------------------
    // Walls: floating disc-bearing M components, every old loop, every
    // closed chain. Orienting the wall tree away from the outer component
    // identifies each wall's outward region.
    struct Wall {
        int kind;            // 0 = M component, 1 = t loop, 2 = s loop, 3 = chain
        int idx;             // component root vertex / flat loop idx / chain idx
        std::vector<int> cls; // adjacent classes
    };
    std::vector<Wall> walls;
    std::vector<std::vector<int>> mcomp_faces; // faces per M component id (= root vertex)
    mcomp_faces.resize(nverts);
    for (int f = 0; f < nmfaces; ++f) mcomp_faces[vcomp[mface_vertex(f)]].push_back(f);
    int root_comp = vcomp[0];
    std::vector<int> comp_wall_of_vertex(nverts, -1);
    for (int v = 0; v < nverts; ++v) {
        if (vcomp[v] != v || v == root_comp) continue;
        bool has_disc = false;
        for (int w = 0; w < nslots_asm; ++w)
            if (vcomp[w] == v) has_disc = true;
        if (!has_disc) continue; // pure chain cycle; handled as a loop wall
        Wall wl{0, v, {}};
        std::set<int> seen;
        for (int f : mcomp_faces[v]) {
            int c = find(m_node(f));
            if (seen.insert(c).second) wl.cls.push_back(c);
        }
        if (wl.cls.size() != mcomp_faces[v].size())
            throw tk_error("compose: component wall with coinciding side regions");
        comp_wall_of_vertex[v] = static_cast<int>(walls.size());
        walls.push_back(std::move(wl));
    }
    int n_t_loops = static_cast<int>(st.loops.size());
    int n_s_loops = static_cast<int>(ss.loops.size());
    int n_chains = static_cast<int>(chains.size());
    std::vector<int> loop_wall(n_t_loops + n_s_loops + n_chains);
    for (int l = 0; l < n_t_loops; ++l) {
        loop_wall[l] = static_cast<int>(walls.size());
        walls.push_back({1, l,
                         {find(t_node(st.loops[l].anchor_rnode)),
                          find(t_node(st.loops[l].inside_rnode))}});
    }
    for (int l = 0; l < n_s_loops; ++l) {
        loop_wall[n_t_loops + l] = static_cast<int>(walls.size());
        walls.push_back({2, l,
                         {find(s_node(ss.loops[l].anchor_rnode)),
                          find(s_node(ss.loops[l].inside_rnode))}});
    }
    for (int ci = 0; ci < n_chains; ++ci) {
        int f1 = mface[gT[chains[ci].rep_glue]];
        int f2 = mface[gS[chains[ci].rep_glue]];
        loop_wall[n_t_loops + n_s_loops + ci] = static_cast<int>(walls.size());
        walls.push_back({3, ci, {find(m_node(f1)), find(m_node(f2))}});
    }
    for (const Wall& wl : walls)
        if (wl.kind != 0 && wl.cls[0] == wl.cls[1])
            throw tk_error("compose: loop with coinciding side regions");

    std::map<int, std::vector<int>> walls_at_class;
    for (std::size_t w = 0; w < walls.size(); ++w)
        for (int c : walls[w].cls) walls_at_class[c].push_back(static_cast<int>(w));

    std::map<int, int> gen_wall_of_class; // class -> wall it is an interior of
    std::vector<int> wall_parent_class(walls.size(), -1);
    {
        std::deque<int> q;
        std::set<int> cls_seen;
        std::vector<char> wall_seen(walls.size(), 0);
        for (int f : mcomp_faces[root_comp]) {
            int c = find(m_node(f));
            if (cls_seen.insert(c).second) q.push_back(c);
        }
        while (!q.empty()) {
            int c = q.front();
            q.pop_front();
            auto it = walls_at_class.find(c);
            if (it == walls_at_class.end()) continue;
            for (int w : it->second) {
                if (wall_seen[w]) continue;
                wall_seen[w] = 1;
                wall_parent_class[w] = c;
                for (int c2 : walls[w].cls) {
                    if (c2 == c) continue;
                    gen_wall_of_class[c2] = w;
                    if (cls_seen.insert(c2).second) q.push_back(c2);
                }
            }
        }
        for (std::size_t w = 0; w < walls.size(); ++w)
            if (!wall_seen[w]) throw tk_error("compose: disconnected containment tree");
    }

    // Assembly loops: t loops, s loops, chains, in that order.
    auto composite_loop_index = [&](int side, int idx) {
        return side == 0 ? idx : side == 1 ? n_t_loops + idx : n_t_loops + n_s_loops + idx;
    };
    auto anchor_for_class = [&](int c) -> SymbolicAnchor {
        SymbolicAnchor an;
        auto it = gen_wall_of_class.find(c);
        if (it != gen_wall_of_class.end() && walls[it->second].kind != 0) {
            const Wall& wl = walls[it->second];
            an.inside_loop = composite_loop_index(wl.kind - 1, wl.idx);
            return an;
        }
        // The corner must sit on the region's host face (a face of the
        // component that generated it), never on some other floating
        // component's outward face, or anchor resolution would cycle.
        int host = it == gen_wall_of_class.end() ? root_comp : walls[it->second].idx;
        for (int f : mcomp_faces[host]) {
            if (find(m_node(f)) != c || mface_corners[f].empty()) continue;
            auto corner = *std::min_element(mface_corners[f].begin(), mface_corners[f].end());
            an.corner_slot = corner.first;
            an.corner_arc = corner.second;
            return an;
        }
        throw tk_error("compose: region without a representative corner");
    };

    a.loops.resize(n_t_loops + n_s_loops + n_chains);
    for (std::size_t w = 0; w < walls.size(); ++w) {
        const Wall& wl = walls[w];
        if (wl.kind == 0) continue;
        int li = composite_loop_index(wl.kind - 1, wl.idx);
        int pc = wall_parent_class[w];
        auto it = gen_wall_of_class.find(pc);
        if (it != gen_wall_of_class.end() && walls[it->second].kind != 0) {
            const Wall& pw = walls[it->second];
            a.loops[li].parent = composite_loop_index(pw.kind - 1, pw.idx);
        } else {
            a.loops[li].parent = -1;
            a.loops[li].anchor = anchor_for_class(pc);
        }
    }
    for (std::size_t w = 0; w < walls.size(); ++w) {
        const Wall& wl = walls[w];
        if (wl.kind != 0) continue;
        AssemblyComp ac;
        int mind = INT32_MAX;
        for (int sl = 0; sl < nslots_asm; ++sl)
            if (vcomp[sl] == wl.idx) mind = std::min(mind, sl);
        ac.any_slot = mind;
        int pc = wall_parent_class[w];
        ac.parent = anchor_for_class(pc);
        int outer_face = -1;
        for (int f : mcomp_faces[wl.idx])
            if (find(m_node(f)) == pc) outer_face = f;
        if (outer_face == -1) throw tk_error("compose: component without outward face");
        auto corner = *std::min_element(mface_corners[outer_face].begin(),
                                        mface_corners[outer_face].end());
        ac.of_slot = corner.first;
        ac.of_arc = corner.second;
        a.comps.push_back(ac);
    }

    Assembled asm_out = assemble(a);
    Scene sc = analyze(asm_out.t);
    auto [canon, rl] = emit_canonical(sc);

    out.strand_sources.resize(canon.strands.size());
    for (std::size_t i = 0; i < asm_src.size(); ++i)
        out.strand_sources[rl.strand_new[i]] = std::move(asm_src[i]);
    out.loop_sources.resize(a.loops.size());
    for (int l = 0; l < static_cast<int>(a.loops.size()); ++l) {
        CompositeBuild::LoopSource lsrc;
        if (l < n_t_loops) {
            lsrc.side = 0;
            lsrc.old_flat = l;
        } else if (l < n_t_loops + n_s_loops) {
            lsrc.side = 1;
            lsrc.old_flat = l - n_t_loops;
        } else {
            lsrc.side = 2;
            lsrc.chain = chains[l - n_t_loops - n_s_loops].constituents;
            std::sort(lsrc.chain.begin(), lsrc.chain.end());
            lsrc.chain.erase(std::unique(lsrc.chain.begin(), lsrc.chain.end()),
                             lsrc.chain.end());
        }
        out.loop_sources[rl.loop_new[asm_out.loop_map[l]]] = std::move(lsrc);
    }
    out.rl = std::move(rl);
    out.canonical = std::move(canon);
    return out;
}

} // namespace detail

// Planar-operad composition: glue a copy of s into internal disc j of t,
// aligning base points and shading. Returns the canonical composite.
inline Tangle compose(const Tangle& t, int j, const Tangle& s) {
    return detail::compose_build(t, j, s).canonical;
}

} // namespace tanglekit
