#include "towerdyn/dyadic_set.hpp"

#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace towerdyn;

namespace {
DyadicSet iv(long long a, long long b, long long den) {
    return DyadicSet::interval(Rational(a, den), Rational(b, den));
}
}  // namespace

TEST_CASE("combine on the spec cases") {
    // adjacent halves merge back into the unit interval
    CHECK(set_union(iv(0, 1, 2), iv(1, 2, 2)) == DyadicSet::unit());
    CHECK(set_intersect(iv(0, 3, 4), iv(2, 4, 4)) == iv(2, 3, 4));
    DyadicSet diff = set_difference(DyadicSet::unit(), iv(1, 2, 4));
    DyadicSet expected({{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(1)}});
    CHECK(diff == expected);
}

TEST_CASE("lebesgue measure") {
    CHECK(lebesgue(DyadicSet::empty()) == Rational(0));
    CHECK(lebesgue(DyadicSet::unit()) == Rational(1));
    DyadicSet s({{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(5, 8)}});
    CHECK(lebesgue(s) == Rational(3, 8));
}

TEST_CASE("validation rejects malformed intervals") {
    CHECK_THROWS_AS(DyadicSet::interval(Rational(1, 3), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(DyadicSet::interval(Rational(1, 2), Rational(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(DyadicSet::interval(Rational(3, 4), Rational(9, 8)), std::invalid_argument);
}

TEST_CASE("normalization merges overlaps and is idempotent") {
    DyadicSet s({{Rational(0), Rational(1, 2)},
                 {Rational(1, 4), Rational(5, 8)},
                 {Rational(5, 8), Rational(3, 4)}});
    CHECK(s.intervals().size() == 1);
    CHECK(s == iv(0, 3, 4));
    CHECK(DyadicSet(s.intervals()) == s);
}

TEST_CASE("set algebra laws on random sets") {
    testgen::Rng rng(20240811);
    for (int i = 0; i < 1000; ++i) {
        DyadicSet a = testgen::random_set(rng, 10);
        DyadicSet b = testgen::random_set(rng, 10);
        DyadicSet c = testgen::random_set(rng, 10);

        CHECK(set_union(a, b) == set_union(b, a));
        CHECK(set_intersect(a, b) == set_intersect(b, a));
        CHECK(set_union(set_union(a, b), c) == set_union(a, set_union(b, c)));
        CHECK(set_difference(a, a).is_empty());

        // De Morgan inside the unit fiber
        CHECK(set_union(a, b).complement() == set_intersect(a.complement(), b.complement()));
        CHECK(set_intersect(a, b).complement() == set_union(a.complement(), b.complement()));

        // inclusion-exclusion
        CHECK(lebesgue(set_union(a, b)) + lebesgue(set_intersect(a, b)) ==
              lebesgue(a) + lebesgue(b));
    }
}

TEST_CASE("containment") {
    CHECK(DyadicSet::unit().contains(iv(1, 3, 8)));
    CHECK_FALSE(iv(0, 1, 2).contains(iv(1, 3, 4)));
    CHECK(iv(0, 1, 2).contains(Rational(0)));
    CHECK_FALSE(iv(0, 1, 2).contains(Rational(1, 2)));
}

TEST_CASE("text codec") {
    DyadicSet s({{Rational(0), Rational(1, 4)}, {Rational(1, 2), Rational(5, 8)}});
    CHECK(s.to_text() == "0:1/2^2,1/2^1:5/2^3");
    CHECK(DyadicSet::parse_text("0:1/2^2,1/2^1:5/2^3") == s);
    CHECK(DyadicSet::parse_text("0:1/2") == iv(0, 1, 2));  // plain fractions accepted
    CHECK(DyadicSet::parse_text("").is_empty());
    CHECK(DyadicSet::empty().to_text().empty());
    CHECK_THROWS_AS(DyadicSet::parse_text("0;1/2"), std::invalid_argument);
    CHECK_THROWS_AS(DyadicSet::parse_text("0:1/3"), std::invalid_argument);

    testgen::Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        DyadicSet s2 = testgen::random_set(rng, 8);
        CHECK(DyadicSet::parse_text(s2.to_text()) == s2);
    }
}
