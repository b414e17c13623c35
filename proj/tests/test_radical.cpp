#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "polychain/radical.hpp"
#include "polychain/rational.hpp"

using namespace polychain;

TEST_CASE("rational parsing round trips") {
    CHECK(rat_from_string("3/10") == Rat(3, 10));
    CHECK(rat_from_string("0.3") == Rat(3, 10));
    CHECK(rat_from_string("-1.25") == Rat(-5, 4));
    CHECK(rat_from_string("7") == Rat(7));
    CHECK(rat_to_string(Rat(-5, 4)) == "-5/4");
    CHECK(rat_to_string(Rat(8, 4)) == "2");
    CHECK_THROWS(rat_from_string("a/b"));
    CHECK_THROWS(rat_from_string(""));
}

TEST_CASE("matrix helpers") {
    RatMat a{{1, 2}, {3, 4}};
    CHECK(mat_det(a) == Rat(-2));
    CHECK(mat_rank(a) == 2);
    RatMat sing{{1, 2}, {2, 4}};
    CHECK(mat_rank(sing) == 1);
    CHECK(mat_det(sing) == 0);
    auto sol = solve_square(RatMat{{2, 0}, {0, 4}}, RatVec{1, 2});
    REQUIRE(sol.has_value());
    CHECK((*sol)[0] == Rat(1, 2));
    CHECK((*sol)[1] == Rat(1, 2));
    CHECK_FALSE(solve_square(sing, RatVec{1, 0}).has_value());
    auto any = solve_any(RatMat{{1, 1, 0}}, RatVec{3});
    REQUIRE(any.has_value());
    CHECK((*any)[0] + (*any)[1] == Rat(3));
}

TEST_CASE("radical canonicalization") {
    auto r8 = CertifiedReal::sqrt_of(Rat(8));
    auto r2 = CertifiedReal::sqrt_of(Rat(2));
    CHECK(r8 == r2 + r2); // sqrt(8) = 2 sqrt(2)
    CHECK((r2 * r2).is_rational());
    CHECK((r2 * r2).rational_part() == Rat(2));
    auto half = CertifiedReal::sqrt_of(Rat(1, 4));
    CHECK(half.is_rational());
    CHECK(half.rational_part() == Rat(1, 2));
    auto r12 = CertifiedReal::sqrt_of(Rat(12));
    auto r3 = CertifiedReal::sqrt_of(Rat(3));
    CHECK(r12 - r3 - r3 == CertifiedReal(Rat(0)));
}

TEST_CASE("radical sign and comparisons") {
    auto r2 = CertifiedReal::sqrt_of(Rat(2));
    CHECK(r2.sign() == 1);
    CHECK((r2 - CertifiedReal(Rat(3, 2))).sign() < 0);   // sqrt2 < 1.5
    CHECK((r2 - CertifiedReal(Rat(7, 5))).sign() > 0);   // sqrt2 > 1.4
    // sqrt(2) + sqrt(3) vs sqrt(5 + 2 sqrt(6)) are equal; compare squares
    auto lhs = (r2 + CertifiedReal::sqrt_of(Rat(3))) * (r2 + CertifiedReal::sqrt_of(Rat(3)));
    auto rhs = CertifiedReal(Rat(5)) + CertifiedReal::sqrt_of(Rat(24));
    CHECK(lhs == rhs);
    auto [lo, hi] = r2.interval();
    CHECK(lo <= 1.41421356237309515);
    CHECK(hi >= 1.41421356237309503);
    CHECK(hi - lo < 1e-12);
}

TEST_CASE("radical mixed sums behave linearly") {
    auto v = CertifiedReal(Rat(1, 3)) + CertifiedReal::sqrt_of(Rat(2)) * CertifiedReal(Rat(2));
    CHECK(v.to_string() == "1/3+2*sqrt(2)");
    CHECK(v.sign() == 1);
    CHECK((v - v).is_zero());
    auto w = v * CertifiedReal::sqrt_of(Rat(2));
    // (1/3 + 2 sqrt2) sqrt2 = 4 + (1/3) sqrt2
    CHECK(w == CertifiedReal(Rat(4)) + CertifiedReal::sqrt_of(Rat(2)) * CertifiedReal(Rat(1, 3)));
}
