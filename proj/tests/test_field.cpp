#include <random>

#include "doctest.h"
#include "field_oracle.hpp"
#include "stpl/field.hpp"

using namespace stpl;

TEST_CASE("rational parsing and printing") {
    CHECK(Rational::parse("6/4").str() == "3/2");
    CHECK(Rational::parse("-7").str() == "-7");
    CHECK(Rational::parse("0/5").str() == "0");
    CHECK_THROWS_AS(Rational::parse("1/0"), InvalidInput);
    CHECK_THROWS_AS(Rational::parse("1.5"), InvalidInput);
    CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidInput);
}

TEST_CASE("arithmetic examples") {
    const InfScalar e = InfScalar::eps();
    CHECK(e + InfScalar(1) == InfScalar(Poly{Rational(1), Rational(1)}, Poly{Rational(1)}));
    CHECK(e * (InfScalar(1) / e) == InfScalar(1));
    InfScalar q = (InfScalar(1) + e) / (InfScalar(2) - e);
    // normalized: den's lowest coefficient is 1
    CHECK(q.den() == Poly{Rational(1), Rational(-1, 2)});
    CHECK(q.num() == Poly{Rational(1, 2), Rational(1, 2)});
    CHECK_THROWS_AS(e / InfScalar(0), InvalidInput);
    // common factors cancel
    InfScalar r = (e * e + e) / (e * InfScalar(3));
    CHECK(r == (e + InfScalar(1)) / InfScalar(3));
}

TEST_CASE("comparison examples") {
    const InfScalar e = InfScalar::eps();
    CHECK(compare(e, InfScalar(Rational(1, 1000000))) == Ordering::LT);
    CHECK(compare(InfScalar(1) + e, InfScalar(1)) == Ordering::GT);
    InfScalar a = (InfScalar(1) + e) * (InfScalar(1) + e);
    CHECK(compare(a, InfScalar(1) + InfScalar(2) * e + e * e) == Ordering::EQ);
    CHECK(compare(-e, InfScalar(0)) == Ordering::LT);
}

TEST_CASE("standard part and classification") {
    const InfScalar e = InfScalar::eps();
    CHECK(((InfScalar(1) + e) / (InfScalar(2) - e)).standard_part() == Rational(1, 2));
    CHECK((e * e / (InfScalar(1) + e)).standard_part() == Rational(0));
    CHECK_THROWS_AS((InfScalar(1) / e).standard_part(), NotFinite);
    CHECK((e * e * e).classify() == Magnitude::infinitesimal);
    CHECK(InfScalar(Rational(7, 3)).classify() == Magnitude::finite);
    CHECK(((InfScalar(1) + e) / e).classify() == Magnitude::infinite);
    CHECK(InfScalar(0).classify() == Magnitude::zero);
}

TEST_CASE("eps is below every sampled positive rational") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> n(1, 1000), d(1, 1000000);
    for (int i = 0; i < 200; ++i)
        CHECK(compare(InfScalar::eps(), InfScalar(Rational(n(rng), d(rng)))) == Ordering::LT);
}

TEST_CASE("standard part brackets rationals") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> n(-20, 20), d(1, 7);
    for (int i = 0; i < 200; ++i) {
        InfScalar a = oracle::random_element(rng, true);
        Rational q(n(rng), d(rng));
        Rational s = a.standard_part();
        if (InfScalar(q) < a) CHECK(q <= s);
        if (a < InfScalar(q)) CHECK(s <= q);
    }
}

TEST_CASE("random triples satisfy the ordered field laws") {
    std::mt19937 rng(2024);
    CHECK(oracle::field_property_failures(rng, 1000) == 0);
}
