#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "tanglekit/tangle_ops.hpp"

using namespace tanglekit;
using fixtures::cupcap;
using fixtures::matching_tangle;
using fixtures::stacking_tangle;

TEST_CASE("canonicalize is idempotent") {
    for (const Tangle& t : {cupcap(), stacking_tangle(2), identity_tangle(3), identity_tangle(0)}) {
        Tangle c = canonicalize(t);
        CHECK(canonicalize(c) == c);
        CHECK(validate(c).empty());
    }
}

TEST_CASE("identity tangle is fixed by canonicalize") {
    for (int k : {0, 1, 2, 4}) CHECK(canonicalize(identity_tangle(k)) == identity_tangle(k));
}

TEST_CASE("disc order and point rotation do not affect the canonical form") {
    // The same two-disc diagram encoded with the internal discs swapped and
    // one disc's points rotated.
    Tangle a = stacking_tangle(2);

    Tangle b;
    b.outer = {2, 0};
    b.inner = {{2, 0}, {2, 0}};
    // disc 0 <-> disc 1 swapped relative to a
    for (int i = 1; i <= 2; ++i) {
        b.strands.push_back(Strand(Endpoint{-1, i - 1}, Endpoint{1, i - 1}));
        b.strands.push_back(Strand(Endpoint{1, 4 - i}, Endpoint{0, i - 1}));
        b.strands.push_back(Strand(Endpoint{0, 4 - i}, Endpoint{-1, 4 - i}));
    }
    b.shading = Color::white;
    CHECK(canonicalize(a) == canonicalize(b));

    // Rotate disc 0's labels by 2 and move its base accordingly.
    Tangle c = a;
    c.inner[0].base = 2;
    for (Strand& st : c.strands) {
        auto rot = [](Endpoint e) {
            if (e.disc == 0) e.point = (e.point + 2) % 4;
            return e;
        };
        st = Strand(rot(st.a), rot(st.b));
    }
    std::sort(c.strands.begin(), c.strands.end());
    CHECK(canonicalize(a) == canonicalize(c));
}

TEST_CASE("equals distinguishes the two TL2 basis diagrams") {
    Tangle left = cupcap();
    Tangle right = matching_tangle(2, {{0, 3}, {1, 2}});
    CHECK(equals(left, left));
    CHECK_FALSE(equals(left, right));
    Tangle shuffled = left;
    std::swap(shuffled.strands[0], shuffled.strands[1]);
    CHECK(equals(left, shuffled));
}

TEST_CASE("operad unit laws") {
    Tangle m = stacking_tangle(2);
    CHECK(compose(m, 0, identity_tangle(2)) == canonicalize(m));
    CHECK(compose(m, 1, identity_tangle(2)) == canonicalize(m));
    CHECK(compose(identity_tangle(2), 0, cupcap()) == canonicalize(cupcap()));
    // arity-0 unit
    Tangle holes;
    holes.inner.push_back({0, -1});
    holes.nesting.push_back({0, 0, 0});
    CHECK(compose(holes, 0, identity_tangle(0)) == canonicalize(holes));
}

TEST_CASE("composition arity and shading mismatches are rejected") {
    CHECK_THROWS_AS(compose(stacking_tangle(2), 0, identity_tangle(1)), composition_error);
    CHECK_THROWS_AS(compose(stacking_tangle(2), 5, cupcap()), composition_error);
    Tangle black_cup = matching_tangle(2, {{0, 1}, {2, 3}}, Color::black);
    CHECK_THROWS_AS(compose(stacking_tangle(2), 0, black_cup), composition_error);
}

TEST_CASE("stacking two cup-caps closes one loop") {
    Tangle m = stacking_tangle(2);
    Tangle once = compose(m, 0, cupcap());
    Tangle twice = compose(once, 0, cupcap());
    REQUIRE(twice.loops.size() == 1);
    CHECK(twice.loops[0].node.children.empty());
    Tangle expect = canonicalize(cupcap());
    Tangle bare = twice;
    bare.loops.clear();
    CHECK(bare == expect);
    // The loop lives in the middle region, between cup and cap.
    auto rs = regions(canonicalize(cupcap()));
    CHECK(rs[twice.loops[0].region].color == Color::white);
}

TEST_CASE("composition is associative on a hand fixture") {
    // (m .0 cup) then cap vs m .0 (two-layer) — both reduce to the same tangle.
    Tangle m = stacking_tangle(2);
    Tangle a = cupcap();
    Tangle b = matching_tangle(2, {{0, 3}, {1, 2}});
    Tangle lhs = compose(compose(m, 0, a), 0, b);
    Tangle inner_first = compose(stacking_tangle(2), 1, b);
    Tangle rhs = compose(inner_first, 0, a);
    CHECK(lhs == rhs);
}

TEST_CASE("involution is an involution on canonical forms") {
    for (const Tangle& t : {cupcap(), stacking_tangle(2), identity_tangle(2), identity_tangle(0)}) {
        Tangle i2 = involution(involution(t));
        CHECK(i2 == canonicalize(t));
    }
}

TEST_CASE("involution mirrors cups and flips shading") {
    Tangle left = cupcap();
    Tangle mirrored = involution(left);
    CHECK(mirrored.shading == Color::black);
    Tangle right = matching_tangle(2, {{0, 3}, {1, 2}}, Color::black);
    CHECK(mirrored == canonicalize(right));

    Tangle idk = involution(identity_tangle(2));
    Tangle expect = identity_tangle(2);
    expect.shading = Color::black;
    CHECK(idk == canonicalize(expect));
}

TEST_CASE("involution commutes with composition") {
    Tangle m = stacking_tangle(2);
    Tangle a = cupcap();
    Tangle lhs = involution(compose(m, 0, a));
    Tangle rhs = compose(involution(m), 0, involution(a));
    CHECK(lhs == rhs);
}

TEST_CASE("floating components keep their outward face") {
    // A floating disc with two self-cups has three faces {arc0}, {arc1,arc3},
    // {arc2}. Opening the co-bulge face outward or one bulge face outward are
    // different embeddings; the two bulge choices are related by rotating the
    // disc's labels.
    auto blob = [](int base, int outer_face) {
        Tangle t;
        t.outer = {0, -1};
        t.inner.push_back({2, base});
        t.strands.push_back(Strand(Endpoint{0, 0}, Endpoint{0, 1}));
        t.strands.push_back(Strand(Endpoint{0, 2}, Endpoint{0, 3}));
        t.nesting.push_back({0, 0, outer_face});
        return t;
    };
    Tangle mid_out = blob(2, 1);   // {arc1,arc3} outward, marker at arc1
    Tangle cup_out = blob(1, 0);   // {arc0} outward, marker at arc0
    Tangle cup_out2 = blob(3, 2);  // {arc2} outward: same up to rotation
    REQUIRE(validate(mid_out).empty());
    REQUIRE(validate(cup_out).empty());
    REQUIRE(validate(cup_out2).empty());
    CHECK_FALSE(equals(mid_out, cup_out));
    CHECK(equals(cup_out, cup_out2));
}
