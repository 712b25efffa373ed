#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "tanglekit/common.hpp"
#include "tanglekit/poly.hpp"

// Temperley-Lieb algebras TL_n as shaded diagram algebras over Z[d1, d2].
//
// Diagrams are noncrossing perfect matchings of 2n points on a disc,
// presented as a rectangle: bottom_i = position i-1, top_i = position 2n-i
// (counterclockwise), base point at position 0, white base region at the
// left edge. Products stack the right factor on top of the left one; every
// loop closed by the stacking is removed against d1 (inside region black) or
// d2 (inside region white), with the color read off the shaded picture.

namespace tanglekit {

struct TLDiagram {
    int n = 0;
    std::vector<int> mate; // position -> matched position, noncrossing
    friend auto operator<=>(const TLDiagram&, const TLDiagram&) = default;
};

struct TLElement {
    int n = 0;
    std::map<TLDiagram, TwoParamPoly> terms;
    friend bool operator==(const TLElement&, const TLElement&) = default;

    void add_term(const TLDiagram& d, const TwoParamPoly& c) {
        if (c.is_zero()) return;
        auto it = terms.find(d);
        if (it == terms.end()) {
            terms.emplace(d, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
    bool is_zero() const { return terms.empty(); }
};

inline TLElement tl_element(const TLDiagram& d, TwoParamPoly c = TwoParamPoly(1)) {
    TLElement e;
    e.n = d.n;
    e.add_term(d, c);
    return e;
}

inline TLElement operator+(const TLElement& a, const TLElement& b) {
    if (a.n != b.n) throw tk_error("TL element addition: strand counts differ");
    TLElement r = a;
    for (const auto& [d, c] : b.terms) r.add_term(d, c);
    return r;
}

inline TLElement operator*(const TwoParamPoly& c, const TLElement& a) {
    TLElement r;
    r.n = a.n;
    for (const auto& [d, p] : a.terms) r.add_term(d, c * p);
    return r;
}

constexpr int tl_max_n = 12;

// All noncrossing perfect matchings of 2n points, deterministic backtracking
// order; Catalan(n) diagrams.
inline std::vector<TLDiagram> tl_basis(int n) {
    if (n < 0 || n > tl_max_n)
        throw capacity_error("tl_basis supports 0 <= n <= " + std::to_string(tl_max_n));
    std::vector<TLDiagram> out;
    std::vector<int> mate(2 * n, -1);
    auto rec = [&](auto&& self, int from) -> void {
        while (from < 2 * n && mate[from] != -1) ++from;
        if (from == 2 * n) {
            out.push_back({n, mate});
            return;
        }
        for (int j = from + 1; j < 2 * n; j += 2) {
            if (mate[j] != -1) continue;
            // Every matched position between from and j must pair inside.
            bool free_between = true;
            for (int x = from + 1; x < j; ++x)
                if (mate[x] != -1 && (mate[x] <= from || mate[x] >= j)) free_between = false;
            if (!free_between) continue;
            mate[from] = j;
            mate[j] = from;
            self(self, from + 1);
            mate[from] = mate[j] = -1;
        }
    };
    rec(rec, 0);
    return out;
}

// The generator e_i: bottom points i, i+1 and top points i, i+1 joined,
// everything else a through-strand. 1 <= i <= n-1.
inline TLDiagram tl_generator(int n, int i) {
    if (i < 1 || i > n - 1) throw capacity_error("tl_generator index out of range");
    TLDiagram d{n, std::vector<int>(2 * n, -1)};
    auto join = [&](int a, int b) {
        d.mate[a] = b;
        d.mate[b] = a;
    };
    join(i - 1, i);                 // bottom i, i+1
    join(2 * n - i, 2 * n - i - 1); // top i, i+1
    for (int j = 1; j <= n; ++j)
        if (j != i && j != i + 1) join(j - 1, 2 * n - j);
    return d;
}

inline TLDiagram tl_identity_diagram(int n) {
    TLDiagram d{n, std::vector<int>(2 * n)};
    for (int p = 0; p < 2 * n; ++p) d.mate[p] = 2 * n - 1 - p;
    return d;
}

inline TLElement tl_one(int n) { return tl_element(tl_identity_diagram(n)); }

namespace detail {

// Stack b on top of a, resolve connectivity through the n glue columns, and
// collect one parameter factor per closed loop. The color just right of glue
// column c on the glue line is white flipped c+1 times (each column is one
// transversal crossing), which is the loop's inside color at its leftmost
// column.
inline std::pair<TLDiagram, TwoParamPoly> tl_stack(const TLDiagram& a, const TLDiagram& b) {
    int n = a.n;
    int N = 2 * n;
    TLDiagram prod{n, std::vector<int>(N, -1)};
    TwoParamPoly factor(1);
    // a-top position q <-> glue column 2n-1-q <-> b-bottom position c.
    std::vector<char> col_seen(n, 0);
    auto chase = [&](int side0, int p0) {
        // Returns the terminal product position reached from (side, pos).
        int side = side0, p = p0;
        while (true) {
            int q = (side == 0 ? a.mate[p] : b.mate[p]);
            if (side == 0) {
                if (q < n) return q; // product bottom
                int c = N - 1 - q;
                col_seen[c] = 1;
                side = 1;
                p = c;
            } else {
                if (q >= n) return q; // product top
                col_seen[q] = 1;
                side = 0;
                p = N - 1 - q;
            }
        }
    };
    for (int i = 0; i < n; ++i) {
        if (prod.mate[i] == -1) {
            int far = chase(0, i);
            prod.mate[i] = far;
            prod.mate[far] = i;
        }
        int top = N - 1 - i;
        if (prod.mate[top] == -1) {
            int far = chase(1, top);
            prod.mate[top] = far;
            prod.mate[far] = top;
        }
    }
    for (int c0 = 0; c0 < n; ++c0) {
        if (col_seen[c0]) continue;
        // A closed loop; walk it and find its leftmost column.
        int m = c0;
        int side = 0, p = N - 1 - c0;
        while (true) {
            int q = (side == 0 ? a.mate[p] : b.mate[p]);
            int c = (side == 0 ? N - 1 - q : q);
            col_seen[c] = 1;
            m = std::min(m, c);
            if (c == c0 && side == 1) break;
            side = 1 - side;
            p = (side == 0 ? N - 1 - c : c);
        }
        factor = factor * (m % 2 == 0 ? TwoParamPoly::d1() : TwoParamPoly::d2());
    }
    return {std::move(prod), std::move(factor)};
}

// Markov-style closure of one diagram: top point i joins bottom point i
// around the right side. Every curve is then closed, so loops correspond
// one-to-one to the regions other than the ambient one, and the trace factor
// is the product of one parameter per region color.
inline TwoParamPoly tl_close(const TLDiagram& d) {
    int n = d.n;
    if (n == 0) return TwoParamPoly(1);
    int N = 2 * n;
    // Map with 4 darts per boundary position: 0 = arc forward (ccw), 1 =
    // chord inward, 2 = arc backward, 3 = closure chord outward.
    auto dart = [&](int v, int kind) { return 4 * v + kind; };
    std::vector<int> alpha(4 * N);
    for (int v = 0; v < N; ++v) {
        alpha[dart(v, 0)] = dart((v + 1) % N, 2);
        alpha[dart(v, 2)] = dart((v - 1 + N) % N, 0);
        alpha[dart(v, 1)] = dart(d.mate[v], 1);
        alpha[dart(v, 3)] = dart(N - 1 - v, 3);
    }
    auto rot_prev = [&](int dd) { return 4 * (dd / 4) + (dd % 4 + 3) % 4; };
    std::vector<int> face(4 * N, -1);
    int nfaces = 0;
    for (int d0 = 0; d0 < 4 * N; ++d0) {
        if (face[d0] != -1) continue;
        int f = nfaces++;
        int x = d0;
        do {
            face[x] = f;
            x = rot_prev(alpha[x]);
        } while (x != d0);
    }
    // Merge faces across the phantom circle arcs.
    std::vector<int> uf(nfaces);
    for (int i = 0; i < nfaces; ++i) uf[i] = i;
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (int v = 0; v < N; ++v)
        uf[find(face[dart(v, 0)])] = find(face[alpha[dart(v, 0)]]);
    // 2-color merged regions across chords, seeded white at the base region
    // (the sector counterclockwise of the inward chord at position 0).
    std::map<int, Color> color;
    std::vector<int> stack{find(face[dart(0, 1)])};
    color[stack[0]] = Color::white;
    while (!stack.empty()) {
        int r = stack.back();
        stack.pop_back();
        for (int v = 0; v < N; ++v)
            for (int kind : {1, 3}) {
                int r1 = find(face[dart(v, kind)]);
                int r2 = find(face[alpha[dart(v, kind)]]);
                for (auto [x, y] : {std::pair{r1, r2}, std::pair{r2, r1}}) {
                    if (x == r && !color.count(y)) {
                        color[y] = flip(color[r]);
                        stack.push_back(y);
                    }
                }
            }
    }
    std::set<int> merged;
    for (int f = 0; f < nfaces; ++f) merged.insert(find(f));
    if (merged.size() != color.size()) throw tk_error("tl_trace: unreachable closure region");
    int ambient = find(face[dart(0, 2)]);
    TwoParamPoly out(1);
    for (auto [r, c] : color) {
        if (r == ambient) continue;
        out = out * (c == Color::black ? TwoParamPoly::d1() : TwoParamPoly::d2());
    }
    return out;
}

} // namespace detail

// Stacking product, bilinear over Z[d1, d2].
inline TLElement tl_multiply(const TLElement& a, const TLElement& b) {
    if (a.n != b.n) throw capacity_error("tl_multiply: strand counts differ");
    TLElement r;
    r.n = a.n;
    for (const auto& [da, ca] : a.terms)
        for (const auto& [db, cb] : b.terms) {
            auto [d, f] = detail::tl_stack(da, db);
            r.add_term(d, ca * cb * f);
        }
    return r;
}

// Unnormalized Markov-style trace.
inline TwoParamPoly tl_trace(const TLElement& a) {
    TwoParamPoly out;
    for (const auto& [d, c] : a.terms) out = out + c * detail::tl_close(d);
    return out;
}

} // namespace tanglekit
