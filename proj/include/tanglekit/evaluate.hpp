#pragma once

#include "tanglekit/tangle_ops.hpp"
#include "tanglekit/tl.hpp"

// The morphism Z from planar tangles to multilinear maps, instantiated on
// the Temperley-Lieb algebras. evaluate() substitutes one TL element per
// internal disc, resolves strand connectivity through every glued boundary,
// removes the closed loops against d1/d2 by their inside color, and collects
// the resulting outer-boundary diagram. Empty discs evaluate to 1 and a
// single loop to d1 or d2, so Z is normalized in the partition-function
// sense; the composition property Z(T o_j S) = Z(T) o_j Z(S) is what
// check_composition verifies.

namespace tanglekit {

// d1^m d2^n for a forest of nested ovals: colors alternate inward from the
// ambient region, m counts loops with black interior, n white.
inline TwoParamPoly oval_factor(const std::vector<OvalNode>& roots, Color ambient) {
    TwoParamPoly out(1);
    auto rec = [&](auto&& self, const OvalNode& node, Color outside) -> void {
        Color inside = flip(outside);
        out = out * (inside == Color::black ? TwoParamPoly::d1() : TwoParamPoly::d2());
        for (const OvalNode& ch : node.children) self(self, ch, inside);
    };
    for (const OvalNode& r : roots) rec(rec, r, ambient);
    return out;
}

inline TwoParamPoly oval_factor(const OvalNode& root, Color ambient) {
    return oval_factor(std::vector<OvalNode>{root}, ambient);
}

// Disc presentation of a TL diagram: strands between the matched boundary
// positions, white base region, base point 0.
inline Tangle tl_tangle(const TLDiagram& d, Color shading = Color::white) {
    Tangle t;
    t.outer = {d.n, d.n > 0 ? 0 : -1};
    for (int p = 0; p < 2 * d.n; ++p)
        if (d.mate[p] > p)
            t.strands.push_back(Strand(Endpoint{-1, p}, Endpoint{-1, d.mate[p]}));
    t.shading = shading;
    return t;
}

namespace detail {

// One fully substituted configuration: every internal disc filled with a
// single diagram. Returns the resulting outer diagram and the loop factor.
inline std::pair<TLDiagram, TwoParamPoly> evaluate_selection(
    const Tangle& t, const std::vector<TLDiagram>& picks) {
    Tangle current = t;
    // Original disc index -> current disc index.
    std::vector<int> where(picks.size());
    for (std::size_t i = 0; i < picks.size(); ++i) where[i] = static_cast<int>(i);
    for (std::size_t i = 0; i < picks.size(); ++i) {
        int at = where[i];
        Color hole = Color::white;
        if (picks[i].n == 0) {
            Scene sc = analyze(current);
            auto [cs, ca] = sc.base_corner(1 + at);
            hole = sc.face_color[sc.face_of_corner(cs, ca)];
        }
        CompositeBuild cb = compose_build(current, at, tl_tangle(picks[i], hole));
        for (std::size_t i2 = i + 1; i2 < picks.size(); ++i2)
            where[i2] = cb.rl.disc_new[cb.t_slot_map[1 + where[i2]]] - 1;
        current = std::move(cb.canonical);
    }
    Scene sc = analyze(current);
    TwoParamPoly factor(1);
    for (const Scene::FLoop& l : sc.loops) {
        Color inside = sc.rnodes[l.inside_rnode].color;
        factor = factor * (inside == Color::black ? TwoParamPoly::d1() : TwoParamPoly::d2());
    }
    int k = current.outer.arity;
    int b = k > 0 ? current.outer.base : 0;
    TLDiagram diagram{k, std::vector<int>(2 * k, -1)};
    for (const Strand& st : current.strands) {
        int p = mmod(st.a.point - b, 2 * k), q = mmod(st.b.point - b, 2 * k);
        diagram.mate[p] = q;
        diagram.mate[q] = p;
    }
    return {std::move(diagram), std::move(factor)};
}

} // namespace detail

// Z(t) applied to one TL element per internal disc; multilinear.
inline TLElement evaluate(const Tangle& t, const std::vector<TLElement>& inputs) {
    Scene sc = analyze(t);
    if (inputs.size() != t.inner.size())
        throw evaluation_error("evaluate: expected one input per internal disc");
    bool needs_white = t.outer.arity > 0;
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (inputs[i].n != t.inner[i].arity)
            throw evaluation_error("evaluate: input " + std::to_string(i) +
                                   " has wrong strand count");
        if (t.inner[i].arity > 0) needs_white = true;
    }
    if (needs_white && t.shading != Color::white)
        throw evaluation_error("evaluate: TL inputs require a white base region");

    TLElement out;
    out.n = t.outer.arity;
    // Expand the multilinear combination term by term.
    std::vector<TLDiagram> picks(inputs.size());
    auto rec = [&](auto&& self, std::size_t i, TwoParamPoly coeff) -> void {
        if (i == inputs.size()) {
            auto [d, f] = detail::evaluate_selection(t, picks);
            out.add_term(d, coeff * f);
            return;
        }
        for (const auto& [d, c] : inputs[i].terms) {
            picks[i] = d;
            self(self, i + 1, coeff * c);
        }
    };
    rec(rec, 0, TwoParamPoly(1));
    return out;
}

// Exact check of Z(t o_j s) = Z(t) o_j Z(s) on the given inputs, which are
// indexed by the composite's internal discs.
inline bool check_composition(const Tangle& t, int j, const Tangle& s,
                              const std::vector<TLElement>& inputs) {
    detail::CompositeBuild cb = detail::compose_build(t, j, s);
    const Tangle& composite = cb.canonical;
    if (inputs.size() != composite.inner.size())
        throw evaluation_error("check_composition: expected one input per composite disc");
    TLElement direct = evaluate(composite, inputs);

    auto composite_index_t = [&](int i) {
        return cb.rl.disc_new[cb.t_slot_map[1 + i]] - 1;
    };
    auto composite_index_s = [&](int d) {
        return cb.rl.disc_new[cb.s_slot_map[1 + d]] - 1;
    };
    std::vector<TLElement> s_inputs;
    for (std::size_t d = 0; d < s.inner.size(); ++d)
        s_inputs.push_back(inputs[composite_index_s(static_cast<int>(d))]);
    TLElement inner_value = evaluate(s, s_inputs);

    std::vector<TLElement> t_inputs;
    for (std::size_t i = 0; i < t.inner.size(); ++i) {
        if (static_cast<int>(i) == j)
            t_inputs.push_back(inner_value);
        else
            t_inputs.push_back(inputs[composite_index_t(static_cast<int>(i))]);
    }
    TLElement staged = evaluate(t, t_inputs);
    return direct == staged;
}

} // namespace tanglekit
