#pragma once

#include <algorithm>
#include <compare>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tanglekit/common.hpp"

// Shaded planar tangles as combinatorial data.
//
// A tangle is stored as a combinatorial map: every disc (the outer one and
// each internal one) is a vertex whose rotation is the counterclockwise order
// of its marked points, and strands are edges. Faces of that map are the
// complementary regions, traced per connected component; the outer disc's
// rotation is reversed so the whole picture lives on the sphere. Components
// not reachable from the outer disc by strands, and closed loops, carry no
// position in the map itself, so their placement is explicit data: a nesting
// entry per floating component (which region it sits in and which of its own
// faces opens outward) and a rooted oval forest for loops.
//
// Region ids used by nesting entries and loop anchors refer to a fixed
// enumeration: faces of the outer-anchored component first, ordered by their
// smallest corner, then breadth-first through the contents of each region
// (component faces, then loop interiors). The same enumeration backs the
// `regions` operation, so ids are reproducible from the data alone.

namespace tanglekit {

struct DiscBoundary {
    int arity = 0; // boundary carries 2*arity marked points
    int base = -1; // marked point ccw of the distinguished region; -1 iff arity == 0
    friend auto operator<=>(const DiscBoundary&, const DiscBoundary&) = default;
};

struct Endpoint {
    int disc = -1; // -1 = outer boundary, otherwise internal disc index
    int point = 0;
    friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct Strand {
    Endpoint a, b;
    Strand() = default;
    Strand(Endpoint x, Endpoint y) {
        if (y < x) std::swap(x, y);
        a = x;
        b = y;
    }
    friend auto operator<=>(const Strand&, const Strand&) = default;
};

struct OvalNode {
    std::vector<OvalNode> children;
    friend bool operator==(const OvalNode& a, const OvalNode& b) { return a.children == b.children; }
    friend bool operator<(const OvalNode& a, const OvalNode& b) {
        return std::lexicographical_compare(a.children.begin(), a.children.end(),
                                            b.children.begin(), b.children.end());
    }
};

struct OvalRoot {
    int region = 0; // region id the loop is anchored in
    OvalNode node;
    friend bool operator==(const OvalRoot&, const OvalRoot&) = default;
    friend bool operator<(const OvalRoot& a, const OvalRoot& b) {
        if (a.region != b.region) return a.region < b.region;
        return a.node < b.node;
    }
};

struct NestingEntry {
    int component = 0;    // smallest internal-disc index in the component
    int parent_region = 0;
    int outer_face = 0;   // ordinal of the component face that opens into parent_region
    friend auto operator<=>(const NestingEntry&, const NestingEntry&) = default;
};

struct Tangle {
    DiscBoundary outer;
    std::vector<DiscBoundary> inner;
    std::vector<Strand> strands;
    std::vector<NestingEntry> nesting;
    std::vector<OvalRoot> loops;
    Color shading = Color::white; // color of the region clockwise of the outer base point
    friend bool operator==(const Tangle&, const Tangle&) = default;
    friend bool operator<(const Tangle& a, const Tangle& b) {
        auto key = [](const Tangle& t) {
            return std::tie(t.outer, t.inner, t.strands, t.nesting, t.loops, t.shading);
        };
        return key(a) < key(b);
    }
};

struct Violation {
    std::string invariant;
    std::string detail;
};
using ValidationReport = std::vector<Violation>;

namespace detail {

// Internal disc slots: 0 = outer, 1 + i = internal disc i.
inline int slot_of(Endpoint e) noexcept { return e.disc + 1; }
inline Endpoint endpoint_of(int slot, int point) noexcept { return Endpoint{slot - 1, point}; }

} // namespace detail

// Fully analyzed tangle: map structure, faces, coloring, region graph.
struct Scene {
    Tangle t;

    int nslots = 0;                        // 1 + number of internal discs
    std::vector<int> points_of;            // per slot: 2 * arity
    std::vector<int> dart_off;             // per slot
    int ndarts = 0;
    std::vector<int> alpha;                // dart -> opposite dart
    std::vector<int> strand_of_dart;
    std::vector<int> slot_of_dart;

    std::vector<int> comp_of_slot;
    std::vector<std::vector<int>> comp_slots; // component 0 contains the outer disc

    // Faces: orbits first, then one pseudo-face per arity-0 disc.
    std::vector<int> face_of_dart;
    std::vector<std::vector<std::pair<int, int>>> face_corners; // (slot, arc)
    std::vector<int> face_comp;
    std::vector<int> pseudo_face_of_slot;  // -1 when arity > 0
    std::vector<std::vector<int>> comp_faces; // per comp, in face-key order
    std::vector<int> euler_defect;         // per comp: 2 - (V - E + F); 0 = planar

    std::vector<int> face_parity; // per face: parity within its component
    std::vector<Color> face_color;

    // Region nodes. Every face maps to a node; a floating component's outer
    // face maps to its parent node. Loop interiors get their own nodes.
    struct RNode {
        Color color = Color::white;
        int gen_face = -1; // face that generated this node, when any
        int gen_loop = -1; // loop whose interior this is, when any
    };
    std::vector<RNode> rnodes;
    std::vector<int> rnode_of_face;

    // Flattened loop forest in preorder of the input.
    struct FLoop {
        int parent = -1;
        int anchor_rnode = -1; // region outside the loop
        int inside_rnode = -1;
        std::vector<int> children;
    };
    std::vector<FLoop> loops;

    std::vector<int> comp_parent_rnode; // -1 for component 0
    std::vector<int> comp_outer_face;   // face index; -1 for component 0

    // Ids under the tangle's own enumeration.
    std::vector<int> rnode_id;
    std::vector<int> id_to_rnode;

    int arity_of_slot(int s) const { return s == 0 ? t.outer.arity : t.inner[s - 1].arity; }
    int base_of_slot(int s) const { return s == 0 ? t.outer.base : t.inner[s - 1].base; }
    int corner_count(int s) const {
        int k = arity_of_slot(s);
        return k > 0 ? 2 * k : 1;
    }
    int dart_of(int slot, int point) const { return dart_off[slot] + point; }

    // Face owning corner (slot, arc).
    int face_of_corner(int slot, int arc) const {
        if (arity_of_slot(slot) == 0) return pseudo_face_of_slot[slot];
        return corner_face_[corner_off_[slot] + arc];
    }

    // The base corner of a disc: the arc clockwise of its base point.
    std::pair<int, int> base_corner(int slot) const {
        int k = arity_of_slot(slot);
        if (k == 0) return {slot, 0};
        int b = base_of_slot(slot);
        return {slot, (b - 1 + 2 * k) % (2 * k)};
    }

    int region_node_of_face(int f) const { return rnode_of_face[f]; }
    Color rnode_color(int r) const { return rnodes[r].color; }

    std::vector<int> corner_off_;
    std::vector<int> corner_face_;
};

namespace detail {

// Propagates the checkerboard coloring through an enumerated scene: seed the
// outer base corner with the stored base shading, give each floating
// component's outer face its parent region's color, alternate loop interiors.
// Checks that every internal disc's base point marks a region of the base
// color. Requires face_parity and the region enumeration to be filled in.
inline bool assign_scene_colors(Scene& s, ValidationReport* rep) {
    auto fail = [&](const std::string& inv, const std::string& det) {
        if (rep)
            rep->push_back({inv, det});
        else
            throw validation_error(inv + ": " + det);
    };
    s.face_color.assign(s.face_corners.size(), Color::white);
    int ncomp = static_cast<int>(s.comp_slots.size());
    auto color_component = [&](int c, int anchor_face, Color col) {
        int p0 = s.face_parity[anchor_face];
        for (int f : s.comp_faces[c])
            s.face_color[f] = (s.face_parity[f] == p0) ? col : flip(col);
    };
    auto [bs, ba] = s.base_corner(0);
    color_component(0, s.face_of_corner(bs, ba), s.t.shading);

    for (int idx : s.id_to_rnode) {
        Scene::RNode& rn = s.rnodes[idx];
        if (rn.gen_face >= 0) {
            rn.color = s.face_color[rn.gen_face];
        } else {
            int l = rn.gen_loop;
            rn.color = flip(s.rnodes[s.loops[l].anchor_rnode].color);
        }
        for (int c = 1; c < ncomp; ++c)
            if (s.comp_parent_rnode[c] == idx)
                color_component(c, s.comp_outer_face[c], rn.color);
    }

    bool ok = true;
    for (int sl = 1; sl < s.nslots; ++sl) {
        if (s.arity_of_slot(sl) == 0) continue;
        auto [cs, ca] = s.base_corner(sl);
        Color col = s.face_color[s.face_of_corner(cs, ca)];
        if (col != s.t.shading) {
            fail("shading", "internal disc " + std::to_string(sl - 1) +
                                " base point does not mark a region of the base color");
            ok = false;
        }
    }
    return ok;
}

struct SceneBuilder {
    const Tangle& t;
    Scene s;
    ValidationReport* rep;
    bool failed = false;

    SceneBuilder(const Tangle& tg, ValidationReport* r) : t(tg), rep(r) { s.t = tg; }

    void fail(const std::string& invariant, const std::string& detail) {
        failed = true;
        if (rep)
            rep->push_back({invariant, detail});
        else
            throw validation_error(invariant + ": " + detail);
    }

    bool structure() {
        bool ok = true;
        auto check_disc = [&](const DiscBoundary& d, const std::string& name) {
            if (d.arity < 0) {
                fail("structure", name + " has negative arity");
                ok = false;
            } else if (d.arity == 0 && d.base != -1) {
                fail("structure", name + " has arity 0 but a base point");
                ok = false;
            } else if (d.arity > 0 && (d.base < 0 || d.base >= 2 * d.arity)) {
                fail("structure", name + " base index out of range");
                ok = false;
            }
        };
        check_disc(t.outer, "outer disc");
        for (std::size_t i = 0; i < t.inner.size(); ++i)
            check_disc(t.inner[i], "internal disc " + std::to_string(i));
        if (!ok) return false;

        s.nslots = 1 + static_cast<int>(t.inner.size());
        s.points_of.resize(s.nslots);
        s.dart_off.resize(s.nslots);
        for (int sl = 0; sl < s.nslots; ++sl) {
            s.points_of[sl] = 2 * s.arity_of_slot(sl);
            s.dart_off[sl] = s.ndarts;
            s.ndarts += s.points_of[sl];
        }
        s.corner_off_.resize(s.nslots);
        int corner_total = 0;
        for (int sl = 0; sl < s.nslots; ++sl) {
            s.corner_off_[sl] = corner_total;
            corner_total += s.corner_count(sl);
        }
        s.corner_face_.assign(corner_total, -1);
        s.slot_of_dart.resize(s.ndarts);
        for (int sl = 0; sl < s.nslots; ++sl)
            for (int p = 0; p < s.points_of[sl]; ++p) s.slot_of_dart[s.dart_off[sl] + p] = sl;

        s.alpha.assign(s.ndarts, -1);
        s.strand_of_dart.assign(s.ndarts, -1);
        for (std::size_t si = 0; si < t.strands.size(); ++si) {
            const Strand& st = t.strands[si];
            for (Endpoint e : {st.a, st.b}) {
                int sl = slot_of(e);
                if (sl < 0 || sl >= s.nslots || e.point < 0 || e.point >= s.points_of[sl]) {
                    fail("structure", "strand " + std::to_string(si) + " endpoint out of range");
                    return false;
                }
            }
            if (st.a == st.b) {
                fail("matching", "strand " + std::to_string(si) + " joins a point to itself");
                return false;
            }
            int da = s.dart_of(slot_of(st.a), st.a.point);
            int db = s.dart_of(slot_of(st.b), st.b.point);
            if (s.alpha[da] != -1 || s.alpha[db] != -1) {
                fail("matching", "marked point used by more than one strand (strand " +
                                     std::to_string(si) + ")");
                return false;
            }
            s.alpha[da] = db;
            s.alpha[db] = da;
            s.strand_of_dart[da] = s.strand_of_dart[db] = static_cast<int>(si);
        }
        for (int d = 0; d < s.ndarts; ++d)
            if (s.alpha[d] == -1) {
                fail("matching", "marked point not covered by any strand");
                return false;
            }
        return true;
    }

    void components() {
        s.comp_of_slot.assign(s.nslots, -1);
        // Component 0 always contains the outer disc.
        std::vector<int> order;
        for (int seed = 0; seed < s.nslots; ++seed) {
            if (s.comp_of_slot[seed] != -1) continue;
            int c = static_cast<int>(s.comp_slots.size());
            s.comp_slots.emplace_back();
            std::deque<int> q{seed};
            s.comp_of_slot[seed] = c;
            while (!q.empty()) {
                int sl = q.front();
                q.pop_front();
                s.comp_slots[c].push_back(sl);
                for (int p = 0; p < s.points_of[sl]; ++p) {
                    int d2 = s.alpha[s.dart_of(sl, p)];
                    int sl2 = dart_slot(d2);
                    if (s.comp_of_slot[sl2] == -1) {
                        s.comp_of_slot[sl2] = c;
                        q.push_back(sl2);
                    }
                }
            }
        }
    }

    int dart_slot(int d) const { return s.slot_of_dart[d]; }

    // Face on the left of each dart: next = rotation-predecessor of the
    // opposite dart. The outer disc's rotation is reversed.
    int next_dart(int d) const {
        int e = s.alpha[d];
        int sl = dart_slot(e);
        int p = e - s.dart_off[sl];
        int n = s.points_of[sl];
        int p2 = sl == 0 ? (p + 1) % n : (p - 1 + n) % n;
        return s.dart_off[sl] + p2;
    }

    void faces() {
        s.face_of_dart.assign(s.ndarts, -1);
        for (int d0 = 0; d0 < s.ndarts; ++d0) {
            if (s.face_of_dart[d0] != -1) continue;
            int f = static_cast<int>(s.face_corners.size());
            s.face_corners.emplace_back();
            int d = d0;
            do {
                s.face_of_dart[d] = f;
                int e = s.alpha[d];
                int sl = dart_slot(e);
                int p = e - s.dart_off[sl];
                int n = s.points_of[sl];
                int arc = sl == 0 ? p : (p - 1 + n) % n;
                s.face_corners[f].push_back({sl, arc});
                s.corner_face_[s.corner_off_[sl] + arc] = f;
                d = next_dart(d);
            } while (d != d0);
            int sl0 = dart_slot(d0);
            s.face_comp.push_back(s.comp_of_slot[sl0]);
        }
        s.pseudo_face_of_slot.assign(s.nslots, -1);
        for (int sl = 0; sl < s.nslots; ++sl) {
            if (s.points_of[sl] > 0) continue;
            int f = static_cast<int>(s.face_corners.size());
            s.face_corners.push_back({{sl, 0}});
            s.face_comp.push_back(s.comp_of_slot[sl]);
            s.pseudo_face_of_slot[sl] = f;
            s.corner_face_[s.corner_off_[sl]] = f;
        }
        // Deterministic face order per component: ascending smallest corner.
        int nfaces = static_cast<int>(s.face_corners.size());
        std::vector<int> face_key(nfaces);
        for (int f = 0; f < nfaces; ++f) {
            int key = INT32_MAX;
            for (auto [sl, arc] : s.face_corners[f])
                key = std::min(key, s.corner_off_[sl] + arc);
            face_key[f] = key;
        }
        s.comp_faces.assign(s.comp_slots.size(), {});
        for (int f = 0; f < nfaces; ++f) s.comp_faces[s.face_comp[f]].push_back(f);
        for (auto& fs : s.comp_faces)
            std::sort(fs.begin(), fs.end(), [&](int a, int b) { return face_key[a] < face_key[b]; });
    }

    bool planarity() {
        int ncomp = static_cast<int>(s.comp_slots.size());
        std::vector<int> V(ncomp, 0), E(ncomp, 0), F(ncomp, 0);
        for (int sl = 0; sl < s.nslots; ++sl) ++V[s.comp_of_slot[sl]];
        for (const Strand& st : t.strands) ++E[s.comp_of_slot[slot_of(st.a)]];
        for (std::size_t f = 0; f < s.face_comp.size(); ++f) ++F[s.face_comp[f]];
        s.euler_defect.resize(ncomp);
        bool ok = true;
        for (int c = 0; c < ncomp; ++c) {
            s.euler_defect[c] = 2 - (V[c] - E[c] + F[c]);
            if (s.euler_defect[c] != 0) {
                fail("planarity", "component " + std::to_string(c) + " has genus " +
                                      std::to_string(s.euler_defect[c] / 2));
                ok = false;
            }
        }
        return ok;
    }

    // Relative 2-coloring per component: parity of each face against the
    // component's reference face, flipping across every strand.
    bool parity_coloring() {
        int nfaces = static_cast<int>(s.face_corners.size());
        std::vector<std::vector<int>> darts_of_face(nfaces);
        for (int d = 0; d < s.ndarts; ++d) darts_of_face[s.face_of_dart[d]].push_back(d);
        s.face_parity.assign(nfaces, -1);
        auto& face_parity = s.face_parity;
        bool ok = true;
        for (int c = 0; c < static_cast<int>(s.comp_slots.size()); ++c) {
            if (s.comp_faces[c].empty()) continue;
            int root = s.comp_faces[c].front();
            if (face_parity[root] != -1) continue;
            face_parity[root] = 0;
            std::deque<int> q{root};
            while (!q.empty()) {
                int f = q.front();
                q.pop_front();
                for (int d : darts_of_face[f]) {
                    int g = s.face_of_dart[s.alpha[d]];
                    if (face_parity[g] == -1) {
                        face_parity[g] = face_parity[f] ^ 1;
                        q.push_back(g);
                    } else if (face_parity[g] == face_parity[f]) {
                        fail("shading", "regions on the two sides of a strand cannot alternate");
                        ok = false;
                    }
                }
            }
        }
        return ok;
    }

    // Flatten the loop forest (preorder).
    std::vector<int> loop_anchor_id; // per flat loop: root anchor id, -1 for children
    void flatten_loops() {
        auto rec = [&](auto&& self, const OvalNode& n, int parent) -> void {
            int idx = static_cast<int>(s.loops.size());
            s.loops.push_back({parent, -1, -1, {}});
            loop_anchor_id.push_back(-1);
            if (parent >= 0) s.loops[parent].children.push_back(idx);
            for (const OvalNode& ch : n.children) self(self, ch, idx);
        };
        for (const OvalRoot& r : t.loops) {
            int idx = static_cast<int>(s.loops.size());
            rec(rec, r.node, -1);
            loop_anchor_id[idx] = r.region;
        }
    }

    // Region enumeration in the input's own ordering: components keyed by
    // smallest disc index, loop roots in list order.
    bool enumerate_regions() {
        int ncomp = static_cast<int>(s.comp_slots.size());
        s.comp_parent_rnode.assign(ncomp, -1);
        s.comp_outer_face.assign(ncomp, -1);

        // Validate nesting entries against actual floating components.
        std::map<int, int> comp_by_min_disc; // min internal disc index -> comp
        for (int c = 1; c < ncomp; ++c) {
            int mind = INT32_MAX;
            for (int sl : s.comp_slots[c]) mind = std::min(mind, sl - 1);
            comp_by_min_disc[mind] = c;
        }
        std::vector<int> entry_of_comp(ncomp, -1);
        bool ok = true;
        for (std::size_t i = 0; i < t.nesting.size(); ++i) {
            const NestingEntry& e = t.nesting[i];
            auto it = comp_by_min_disc.find(e.component);
            if (it == comp_by_min_disc.end()) {
                fail("nesting", "entry " + std::to_string(i) +
                                    " does not name a floating component by its smallest disc");
                ok = false;
                continue;
            }
            int c = it->second;
            if (entry_of_comp[c] != -1) {
                fail("nesting", "component " + std::to_string(e.component) + " anchored twice");
                ok = false;
                continue;
            }
            if (e.outer_face < 0 || e.outer_face >= static_cast<int>(s.comp_faces[c].size())) {
                fail("nesting", "component " + std::to_string(e.component) +
                                    " outer_face ordinal out of range");
                ok = false;
                continue;
            }
            entry_of_comp[c] = static_cast<int>(i);
        }
        for (int c = 1; c < ncomp; ++c)
            if (entry_of_comp[c] == -1) {
                fail("nesting", "floating component containing disc " +
                                    std::to_string(s.comp_slots[c][0] - 1) + " has no nesting entry");
                ok = false;
            }
        if (!ok) return false;

        int nfaces = static_cast<int>(s.face_corners.size());
        s.rnode_of_face.assign(nfaces, -1);

        auto new_face_node = [&](int f) {
            int r = static_cast<int>(s.rnodes.size());
            s.rnodes.push_back({Color::white, f, -1});
            s.rnode_of_face[f] = r;
            return r;
        };
        auto new_loop_node = [&](int l) {
            int r = static_cast<int>(s.rnodes.size());
            s.rnodes.push_back({Color::white, -1, l});
            s.loops[l].inside_rnode = r;
            return r;
        };

        // id order = discovery order.
        std::vector<int>& ids = s.id_to_rnode;
        for (int f : s.comp_faces[0]) ids.push_back(new_face_node(f));

        // Items waiting for their parent region id.
        std::vector<char> comp_done(ncomp, 0);
        std::vector<char> loop_done(s.loops.size(), 0);
        comp_done[0] = 1;

        std::vector<NestingEntry> entries = t.nesting;
        std::sort(entries.begin(), entries.end());

        for (std::size_t qi = 0; qi < ids.size(); ++qi) {
            int rid = static_cast<int>(qi);
            // Components anchored here, by smallest disc index.
            for (const NestingEntry& e : entries) {
                if (e.parent_region != rid) continue;
                int c = comp_by_min_disc[e.component];
                comp_done[c] = 1;
                s.comp_parent_rnode[c] = ids[qi];
                s.comp_outer_face[c] = s.comp_faces[c][e.outer_face];
                for (int f : s.comp_faces[c]) {
                    if (f == s.comp_outer_face[c])
                        s.rnode_of_face[f] = ids[qi];
                    else
                        ids.push_back(new_face_node(f));
                }
            }
            // Loop roots anchored here, in list order; children follow their
            // parent's interior immediately via the queue.
            for (std::size_t l = 0; l < s.loops.size(); ++l) {
                if (loop_anchor_id[l] != rid || s.loops[l].parent != -1) continue;
                loop_done[l] = 1;
                s.loops[l].anchor_rnode = ids[qi];
                ids.push_back(new_loop_node(static_cast<int>(l)));
            }
            // Children of the loop whose interior this region is.
            int gl = s.rnodes[ids[qi]].gen_loop;
            if (gl >= 0) {
                for (int ch : s.loops[gl].children) {
                    loop_done[ch] = 1;
                    s.loops[ch].anchor_rnode = ids[qi];
                    ids.push_back(new_loop_node(ch));
                }
            }
        }

        for (int c = 1; c < ncomp; ++c)
            if (!comp_done[c]) {
                fail("nesting", "component " + std::to_string(s.comp_slots[c][0] - 1) +
                                    " anchored to a region id that is never enumerated");
                ok = false;
            }
        for (std::size_t l = 0; l < s.loops.size(); ++l)
            if (!loop_done[l] && s.loops[l].parent == -1) {
                fail("loops", "loop root anchored to a region id that is never enumerated");
                ok = false;
            }
        if (!ok) return false;

        s.rnode_id.assign(s.rnodes.size(), -1);
        for (std::size_t i = 0; i < ids.size(); ++i) s.rnode_id[ids[i]] = static_cast<int>(i);
        return true;
    }

    bool run_core() {
        if (!structure()) return false;
        components();
        faces();
        if (!planarity()) return false;
        return parity_coloring();
    }

    bool run() {
        if (!run_core()) return false;
        flatten_loops();
        if (!enumerate_regions()) return false;
        return assign_scene_colors(s, rep);
    }
};

} // namespace detail

// Builds the full scene; throws validation_error on the first violation.
inline Scene analyze(const Tangle& t) {
    detail::SceneBuilder b(t, nullptr);
    b.run();
    return std::move(b.s);
}

namespace detail {

// Map structure, faces and parities only; nesting and loops are ignored.
inline Scene analyze_core(const Tangle& t) {
    Tangle bare = t;
    bare.nesting.clear();
    bare.loops.clear();
    SceneBuilder b(bare, nullptr);
    b.run_core();
    b.s.t = t;
    return std::move(b.s);
}

} // namespace detail

// Collects violations instead of throwing; empty report means valid.
inline ValidationReport validate(const Tangle& t) {
    ValidationReport rep;
    detail::SceneBuilder b(t, &rep);
    b.run();
    return rep;
}

inline bool is_valid(const Tangle& t) { return validate(t).empty(); }

struct RegionInfo {
    int id = 0;
    Color color = Color::white;
    std::vector<std::pair<int, int>> corners; // (disc, arc), disc -1 = outer
    std::vector<int> adjacent;                // region ids across strands and loops
};

// Deterministic enumeration of the complementary regions.
inline std::vector<RegionInfo> regions(const Tangle& t) {
    Scene s = analyze(t);
    std::vector<RegionInfo> out(s.id_to_rnode.size());
    for (std::size_t i = 0; i < s.id_to_rnode.size(); ++i) {
        const Scene::RNode& rn = s.rnodes[s.id_to_rnode[i]];
        RegionInfo& ri = out[i];
        ri.id = static_cast<int>(i);
        ri.color = rn.color;
    }
    // Corners: every face contributes to the region it belongs to.
    for (std::size_t f = 0; f < s.face_corners.size(); ++f) {
        int id = s.rnode_id[s.rnode_of_face[f]];
        for (auto [sl, arc] : s.face_corners[f]) out[id].corners.push_back({sl - 1, arc});
    }
    for (auto& ri : out) std::sort(ri.corners.begin(), ri.corners.end());
    // Adjacency across strands and loops.
    auto link = [&](int ra, int rb) {
        out[ra].adjacent.push_back(rb);
        out[rb].adjacent.push_back(ra);
    };
    for (const Strand& st : t.strands) {
        int da = s.dart_of(detail::slot_of(st.a), st.a.point);
        int db = s.dart_of(detail::slot_of(st.b), st.b.point);
        link(s.rnode_id[s.rnode_of_face[s.face_of_dart[da]]],
             s.rnode_id[s.rnode_of_face[s.face_of_dart[db]]]);
    }
    for (const Scene::FLoop& l : s.loops)
        link(s.rnode_id[l.anchor_rnode], s.rnode_id[l.inside_rnode]);
    for (auto& ri : out) {
        std::sort(ri.adjacent.begin(), ri.adjacent.end());
        ri.adjacent.erase(std::unique(ri.adjacent.begin(), ri.adjacent.end()), ri.adjacent.end());
    }
    return out;
}

} // namespace tanglekit
