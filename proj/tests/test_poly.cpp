#include <catch2/catch_amalgamated.hpp>

#include "tanglekit/poly.hpp"

using namespace tanglekit;

TEST_CASE("rational arithmetic normalizes") {
    Rational a(2, 4);
    CHECK(a.num() == 1);
    CHECK(a.den() == 2);
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(2, -4).num() == -1);
}

TEST_CASE("two-parameter polynomial arithmetic is exact") {
    TwoParamPoly d1 = TwoParamPoly::d1();
    TwoParamPoly d2 = TwoParamPoly::d2();
    TwoParamPoly p = d1 * d1 * d2 * TwoParamPoly(2) - TwoParamPoly(1);
    CHECK(p.str() == "2*d1^2*d2 - 1");
    CHECK((p - p).is_zero());
    CHECK((d1 + d2) * (d1 - d2) == d1 * d1 - d2 * d2);
    CHECK(TwoParamPoly(0).str() == "0");
}

TEST_CASE("specialize evaluates exactly") {
    CHECK(TwoParamPoly::d1().specialize(Rational(2), Rational(3)) == Rational(2));
    CHECK(TwoParamPoly().specialize(Rational(7, 3), Rational(-2)) == Rational(0));
    // Oval-forest factor d1^2 d2 at (delta, delta) collapses to delta^3.
    TwoParamPoly f = TwoParamPoly::monomial(2, 1);
    Rational delta(5, 2);
    CHECK(f.specialize(delta, delta) == delta.pow(3));
}

TEST_CASE("no zero coefficients are stored") {
    TwoParamPoly p = TwoParamPoly::d1() - TwoParamPoly::d1();
    CHECK(p.terms().empty());
    p.add_term({3, 1}, 5);
    p.add_term({3, 1}, -5);
    CHECK(p.terms().empty());
}
