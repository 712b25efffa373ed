#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "tanglekit/tl.hpp"

using namespace tanglekit;

namespace {

// Independent oracle: enumerate all perfect matchings, keep the noncrossing
// ones by the quadratic chord test.
int noncrossing_count_oracle(int n) {
    std::vector<int> mate(2 * n, -1);
    int count = 0;
    auto crossing = [&](int a, int b, int c, int d) {
        if (a > b) std::swap(a, b);
        if (c > d) std::swap(c, d);
        return (a < c && c < b && b < d) || (c < a && a < d && d < b);
    };
    auto rec = [&](auto&& self, int from) -> void {
        while (from < 2 * n && mate[from] != -1) ++from;
        if (from == 2 * n) {
            ++count;
            return;
        }
        for (int j = from + 1; j < 2 * n; ++j) {
            if (mate[j] != -1) continue;
            bool ok = true;
            for (int x = 0; x < from && ok; ++x)
                if (mate[x] > x && crossing(from, j, x, mate[x])) ok = false;
            if (!ok) continue;
            mate[from] = j;
            mate[j] = from;
            self(self, from + 1);
            mate[from] = mate[j] = -1;
        }
    };
    rec(rec, 0);
    return count;
}

TLElement random_element(int n, std::mt19937_64& rng) {
    auto basis = tl_basis(n);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(basis.size()) - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    TLElement e;
    e.n = n;
    for (int t = 0; t < 3; ++t) e.add_term(basis[pick(rng)], TwoParamPoly(coeff(rng)));
    return e;
}

} // namespace

TEST_CASE("tl_basis sizes are the Catalan numbers") {
    const int expect[] = {1, 1, 2, 5, 14, 42, 132};
    for (int n = 0; n <= 6; ++n) {
        CHECK(static_cast<int>(tl_basis(n).size()) == expect[n]);
        CHECK(noncrossing_count_oracle(n) == expect[n]);
    }
    CHECK(tl_basis(8).size() == 1430u);
    CHECK_THROWS_AS(tl_basis(40), capacity_error);
}

TEST_CASE("basis diagrams are distinct noncrossing matchings") {
    auto basis = tl_basis(5);
    std::set<TLDiagram> seen(basis.begin(), basis.end());
    CHECK(seen.size() == basis.size());
    for (const auto& d : basis)
        for (int p = 0; p < 10; ++p) {
            CHECK(d.mate[p] != p);
            CHECK(d.mate[d.mate[p]] == p);
        }
}

TEST_CASE("generators are basis diagrams and distinct") {
    auto basis = tl_basis(3);
    TLDiagram e1 = tl_generator(3, 1), e2 = tl_generator(3, 2);
    CHECK(e1 != e2);
    CHECK(std::count(basis.begin(), basis.end(), e1) == 1);
    CHECK(std::count(basis.begin(), basis.end(), e2) == 1);
    CHECK_THROWS_AS(tl_generator(3, 3), capacity_error);
    // (n=2, i=1) is the cup-cap diagram.
    TLDiagram cup = tl_generator(2, 1);
    CHECK(cup.mate == std::vector<int>{1, 0, 3, 2});
}

TEST_CASE("identity diagram is a two-sided unit") {
    std::mt19937_64 rng(7);
    for (int n : {1, 2, 3, 4}) {
        TLElement one = tl_one(n);
        for (int rep = 0; rep < 5; ++rep) {
            TLElement x = random_element(n, rng);
            CHECK(tl_multiply(one, x) == x);
            CHECK(tl_multiply(x, one) == x);
        }
    }
}

TEST_CASE("e_i squared picks up one loop parameter") {
    // Loop color is read from the shaded picture; with the white base region
    // the parameter alternates with i.
    for (int n = 2; n <= 6; ++n)
        for (int i = 1; i < n; ++i) {
            TLElement e = tl_element(tl_generator(n, i));
            TLElement sq = tl_multiply(e, e);
            TwoParamPoly c = i % 2 == 1 ? TwoParamPoly::d1() : TwoParamPoly::d2();
            CHECK(sq == c * e);
        }
}

TEST_CASE("e_i e_{i+-1} e_i = e_i") {
    for (int n = 2; n <= 6; ++n)
        for (int i = 1; i < n; ++i)
            for (int j : {i - 1, i + 1}) {
                if (j < 1 || j > n - 1) continue;
                TLElement ei = tl_element(tl_generator(n, i));
                TLElement ej = tl_element(tl_generator(n, j));
                CHECK(tl_multiply(tl_multiply(ei, ej), ei) == ei);
            }
}

TEST_CASE("far generators commute") {
    for (int n = 4; n <= 6; ++n)
        for (int i = 1; i < n; ++i)
            for (int j = i + 2; j < n; ++j) {
                TLElement ei = tl_element(tl_generator(n, i));
                TLElement ej = tl_element(tl_generator(n, j));
                CHECK(tl_multiply(ei, ej) == tl_multiply(ej, ei));
            }
}

TEST_CASE("product is associative on random triples") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3, 4}) {
        for (int rep = 0; rep < 10; ++rep) {
            TLElement a = random_element(n, rng), b = random_element(n, rng),
                      c = random_element(n, rng);
            CHECK(tl_multiply(tl_multiply(a, b), c) == tl_multiply(a, tl_multiply(b, c)));
        }
    }
}

TEST_CASE("trace of the identity alternates parameters from the outside in") {
    for (int n = 1; n <= 6; ++n) {
        TwoParamPoly expect = TwoParamPoly::monomial((n + 1) / 2, n / 2);
        CHECK(tl_trace(tl_one(n)) == expect);
    }
}

TEST_CASE("trace of e_1 in TL_2 closes into a single black loop") {
    TwoParamPoly tr = tl_trace(tl_element(tl_generator(2, 1)));
    CHECK(tr == TwoParamPoly::d1());
}

TEST_CASE("trace is symmetric") {
    std::mt19937_64 rng(13);
    for (int n : {2, 3, 4, 5, 6}) {
        for (int rep = 0; rep < 8; ++rep) {
            TLElement a = random_element(n, rng), b = random_element(n, rng);
            CHECK(tl_trace(tl_multiply(a, b)) == tl_trace(tl_multiply(b, a)));
        }
    }
}

TEST_CASE("trace is linear") {
    std::mt19937_64 rng(17);
    TLElement a = random_element(3, rng), b = random_element(3, rng);
    CHECK(tl_trace(a + b) == tl_trace(a) + tl_trace(b));
}
