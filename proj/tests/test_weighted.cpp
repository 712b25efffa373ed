#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "tanglekit/weighted.hpp"

using namespace tanglekit;
using fixtures::cupcap;
using fixtures::matching_tangle;

namespace {

WeightedTangle zero_weighted(const Tangle& t) {
    WeightedTangle wt;
    wt.tangle = t;
    wt.strand_weights.assign(t.strands.size(), 0);
    wt.segment_weights.resize(t.inner.size() + 1);
    wt.segment_weights[0].assign(segment_count(t.outer), 0);
    for (std::size_t i = 0; i < t.inner.size(); ++i)
        wt.segment_weights[1 + i].assign(segment_count(t.inner[i]), 0);
    wt.loop_weights.assign(flat_loop_count(t), 1);
    return wt;
}

// Independent brute-force enumeration: all (shape, weight-assignment) pairs
// with every weight bounded by d, filtered by total weight, deduplicated by
// canonical form. Loop forests come from parent-choice vectors.
std::set<WeightedTangle> enumerate_oracle(int d) {
    std::set<WeightedTangle> out;
    for (Color shading : {Color::white, Color::black}) {
        for (int k = 0; 2 * k <= 2 * d - 2; ++k) {
            for (const TLDiagram& m : tl_basis(k)) {
                Tangle base;
                base.outer = {k, k > 0 ? 0 : -1};
                for (int p = 0; p < 2 * k; ++p)
                    if (m.mate[p] > p)
                        base.strands.push_back(
                            Strand(Endpoint{-1, p}, Endpoint{-1, m.mate[p]}));
                base.shading = shading;
                int nregions = static_cast<int>(regions(base).size());
                for (int nloops = 0; nloops <= d; ++nloops) {
                    // parent[i] in [0, nregions + i): region or earlier loop.
                    std::vector<int> parent(nloops, 0);
                    auto forests = [&](auto&& self, int i) -> std::vector<std::vector<int>> {
                        if (i == nloops) return {parent};
                        std::vector<std::vector<int>> acc;
                        for (int p = 0; p < nregions + i; ++p) {
                            parent[i] = p;
                            for (auto& v : self(self, i + 1)) acc.push_back(v);
                        }
                        return acc;
                    };
                    for (const auto& pv : forests(forests, 0)) {
                        // Build the forest: loop i hangs under region pv[i] or
                        // loop pv[i] - nregions.
                        std::vector<OvalNode> nodes(nloops);
                        std::vector<OvalRoot> roots;
                        // Children attach back to front so indices stay valid.
                        for (int i = nloops - 1; i >= 0; --i) {
                            if (pv[i] >= nregions)
                                nodes[pv[i] - nregions].children.push_back(nodes[i]);
                        }
                        for (int i = 0; i < nloops; ++i)
                            if (pv[i] < nregions) roots.push_back({pv[i], nodes[i]});
                        // Weight assignments, filtered by the total.
                        int nsegs = segment_count(base.outer);
                        int slots = k + nsegs + nloops;
                        std::vector<int> w(slots, 0);
                        auto rec = [&](auto&& self, int i, int sum) -> void {
                            if (sum > d) return;
                            if (i == slots) {
                                if (sum != d) return;
                                for (int l = 0; l < nloops; ++l)
                                    if (w[k + nsegs + l] < 1) return;
                                WeightedTangle wt;
                                wt.tangle = base;
                                wt.tangle.loops = roots;
                                wt.strand_weights.assign(w.begin(), w.begin() + k);
                                wt.segment_weights.resize(1);
                                wt.segment_weights[0].assign(w.begin() + k,
                                                             w.begin() + k + nsegs);
                                wt.loop_weights.assign(w.begin() + k + nsegs, w.end());
                                if (validate_weighted(wt).empty())
                                    out.insert(canonicalize_weighted(wt));
                                return;
                            }
                            for (int v = 0; v <= d; ++v) {
                                w[i] = v;
                                self(self, i + 1, sum + v);
                            }
                        };
                        rec(rec, 0, 0);
                    }
                }
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("total weight sums strands, segments and loops") {
    WeightedTangle z = zero_weighted(cupcap());
    CHECK(total_weight(z) == 0);

    Tangle t;
    t.loops.push_back({0, {}});
    WeightedTangle single = zero_weighted(t);
    single.loop_weights = {2};
    CHECK(total_weight(single) == 2);

    // A degree-3 configuration: strand weight 1, loop weight 1, one boundary
    // segment carrying the rest.
    WeightedTangle d3 = zero_weighted(matching_tangle(1, {{0, 1}}));
    d3.strand_weights = {1};
    d3.tangle.loops.push_back({0, {}});
    d3.loop_weights = {1};
    d3.segment_weights[0] = {1, 0};
    REQUIRE(validate_weighted(d3).empty());
    CHECK(total_weight(d3) == 3);
}

TEST_CASE("weighted validation catches bad weights") {
    WeightedTangle wt = zero_weighted(cupcap());
    wt.strand_weights[0] = -1;
    CHECK_FALSE(validate_weighted(wt).empty());
    WeightedTangle wl = zero_weighted(Tangle{});
    wl.tangle.loops.push_back({0, {}});
    wl.loop_weights = {0};
    CHECK_FALSE(validate_weighted(wl).empty());
}

TEST_CASE("compose_weighted requires matching glued segment weights") {
    WeightedTangle t = zero_weighted(fixtures::stacking_tangle(2));
    WeightedTangle s = zero_weighted(cupcap());
    s.segment_weights[0][1] = 3;
    CHECK_THROWS_AS(compose_weighted(t, 0, s), sewing_error);
}

TEST_CASE("all-zero weights compose to all-zero weights") {
    WeightedTangle t = zero_weighted(fixtures::stacking_tangle(2));
    WeightedTangle s = zero_weighted(cupcap());
    WeightedTangle r = compose_weighted(t, 0, s);
    CHECK(validate(r.tangle).empty());
    CHECK(total_weight(r) == 0);
    for (int w : r.strand_weights) CHECK(w == 0);
}

TEST_CASE("degree adds when sewing along an unmarked boundary circle") {
    // t: empty internal disc inside a weight-d1 diagram; s: weight-d2 with
    // matching circle weight 0.
    Tangle host;
    host.inner.push_back({0, -1});
    host.nesting.push_back({0, 0, 0});
    host.loops.push_back({0, {}});
    WeightedTangle t = zero_weighted(host);
    t.loop_weights = {2}; // d1 = 2

    Tangle arg;
    arg.loops.push_back({0, {}});
    WeightedTangle s = zero_weighted(arg);
    s.loop_weights = {3}; // d2 = 3

    WeightedTangle r = compose_weighted(t, 0, s);
    CHECK(total_weight(r) == total_weight(t) + total_weight(s));
}

TEST_CASE("glued boundary weights are erased with the circle") {
    // Arity-0 discs compose by pure region merge: the matched circle weights
    // disappear from both sides of the total.
    Tangle host;
    host.inner.push_back({0, -1});
    host.nesting.push_back({0, 0, 0});
    WeightedTangle t = zero_weighted(host);
    t.segment_weights[1] = {2};
    t.segment_weights[0] = {1};

    Tangle arg;
    WeightedTangle s = zero_weighted(arg);
    s.segment_weights[0] = {2};
    s.tangle.loops.push_back({0, {}});
    s.loop_weights = {1};

    WeightedTangle r = compose_weighted(t, 0, s);
    CHECK(total_weight(r) == total_weight(t) + total_weight(s) - 2 * 2);
    CHECK(r.tangle.loops.size() == 1);
}

TEST_CASE("concatenated strands take the minimum constituent weight") {
    WeightedTangle t = zero_weighted(identity_tangle(1));
    t.strand_weights = {1, 2};
    WeightedTangle s = zero_weighted(matching_tangle(1, {{0, 1}}));
    s.strand_weights = {4};
    WeightedTangle r = compose_weighted(t, 0, s);
    REQUIRE(r.strand_weights.size() == 1);
    CHECK(r.strand_weights[0] == 1);
    CHECK(r.tangle.outer.arity == 1);
}

TEST_CASE("a loop closed by weighted composition takes the minimum weight") {
    Tangle m = fixtures::stacking_tangle(2);
    WeightedTangle wm = zero_weighted(m);
    for (auto& w : wm.strand_weights) w = 5;
    // Keep the glued boundaries at weight 0 but put weights on strands.
    WeightedTangle cup = zero_weighted(cupcap());
    cup.strand_weights = {3, 4};
    WeightedTangle once = compose_weighted(wm, 0, cup);
    WeightedTangle cup2 = zero_weighted(cupcap());
    cup2.strand_weights = {2, 6};
    WeightedTangle twice = compose_weighted(once, 0, cup2);
    REQUIRE(twice.loop_weights.size() == 1);
    // The loop concatenates one strand of each cup with two middle strands.
    CHECK(twice.loop_weights[0] == 2);
}

TEST_CASE("riemann-hurwitz count and harnack bound") {
    CHECK(euler_count_check(0, 2) == 2);
    CHECK(euler_count_check(0, 4) == 6);
    CHECK(euler_count_check(1, 1) == 2);
    CHECK(harnack_disc_count(0) == 1);
    CHECK(harnack_disc_count(3) == 4);
}

TEST_CASE("enumerate_genus0 basics at degree 1") {
    auto all = enumerate_genus0(1);
    CHECK(all.size() == 4u);
    for (const auto& wt : all) {
        CHECK(validate_weighted(wt).empty());
        CHECK(total_weight(wt) == 1);
        CHECK(wt.tangle.inner.empty());
    }
}

TEST_CASE("enumerate_genus0 matches the brute-force oracle") {
    for (int d = 1; d <= 3; ++d) {
        auto impl = enumerate_genus0(d);
        std::set<WeightedTangle> impl_set(impl.begin(), impl.end());
        CHECK(impl_set.size() == impl.size()); // duplicate-free
        auto oracle = enumerate_oracle(d);
        CHECK(impl_set == oracle);
    }
}

TEST_CASE("enumerate_genus0 degree bounds and point counts") {
    CHECK_THROWS_AS(enumerate_genus0(0), capacity_error);
    CHECK_THROWS_AS(enumerate_genus0(99), capacity_error);
    for (const auto& wt : enumerate_genus0(3)) {
        CHECK(2 * wt.tangle.outer.arity <= 4);
        CHECK(total_weight(wt) == 3);
    }
}

TEST_CASE("weighted canonical form resolves symmetric siblings by weight") {
    Tangle two_discs;
    two_discs.inner = {{0, -1}, {0, -1}};
    two_discs.nesting = {{0, 0, 0}, {1, 0, 0}};
    WeightedTangle a = zero_weighted(two_discs);
    a.segment_weights[1] = {1};
    a.segment_weights[2] = {2};
    WeightedTangle b = zero_weighted(two_discs);
    b.segment_weights[1] = {2};
    b.segment_weights[2] = {1};
    CHECK(equals_weighted(a, b));
    CHECK(canonicalize_weighted(a) == canonicalize_weighted(b));
}
