#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <polychain/chain.hpp>
#include <polychain/errors.hpp>
#include <polychain/slicing.hpp>

using namespace polychain;

namespace {

const Group kZ = Group::Z();

Simplex seg2(Rat ax, Rat ay, Rat bx, Rat by) {
    return Simplex(2, {{ax, ay}, {bx, by}});
}

Simplex tri2(Rat ax, Rat ay, Rat bx, Rat by, Rat cx, Rat cy) {
    return Simplex(2, {{ax, ay}, {bx, by}, {cx, cy}});
}

Chain unit_square() {
    return Chain::singleton(kZ, tri2(0, 0, 1, 0, 1, 1)) +
           Chain::singleton(kZ, tri2(0, 0, 1, 1, 0, 1));
}

// product square spanned by axes a < b in R^n at base point 0
Chain axis_square(int n, int a, int b) {
    Point p0(n, Rat(0));
    Point p1 = p0, p2 = p0, p3 = p0;
    p1[a] = 1;
    p2[a] = 1;
    p2[b] = 1;
    p3[b] = 1;
    return Chain::singleton(kZ, Simplex(n, {p0, p1, p2})) +
           Chain::singleton(kZ, Simplex(n, {p0, p2, p3}));
}

} // namespace

TEST_CASE("slice of the diagonal is a projected point") {
    Chain diag = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    Chain s = slice(diag, {{0}, {Rat(1, 2)}});
    Chain expect = Chain::singleton(kZ, Simplex(2, {{Rat(0), Rat(1, 2)}}));
    CHECK(s == expect);

    // orientation flips with the segment
    CHECK(slice(-diag, {{0}, {Rat(1, 2)}}) == -expect);

    // horizontal segment along axis 0: slicing on axis 1 misses a.e.
    Chain horiz = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    CHECK(slice(horiz, {{1}, {Rat(1, 2)}}).is_empty());

    CHECK_THROWS_AS(slice(diag, {{0}, {Rat(1)}}), NonGenericPoint);
    CHECK_THROWS_AS(slice(diag, {{0, 1}, {Rat(1, 2), Rat(1, 3)}}), DimensionMismatch);
    CHECK_THROWS_AS(slice(diag, {{1, 0}, {Rat(1, 2), Rat(1, 3)}}), UsageError);
}

TEST_CASE("slice of a triangle along one axis") {
    Chain t = Chain::singleton(kZ, tri2(0, 0, 2, 0, 0, 2));
    Chain s = slice(t, {{0}, {Rat(1)}});
    REQUIRE(s.terms().size() == 1);
    CHECK(s.dim() == 1);
    // segment from (0,0) to (0,1) after projection
    CHECK(s.mass().value.rational_part() == 1);
    for (const auto& v : s.terms()[0].cell.verts)
        CHECK(v[0] == 0);
    // the slice of the boundary equals the boundary of the slice
    CHECK(slice(t.boundary(), {{0}, {Rat(1)}}) == s.boundary());
}

TEST_CASE("boundary commutes with slicing at generic points") {
    Chain c = unit_square() + Chain::singleton(kZ, tri2(1, 0, 2, 0, 1, 1), 3) -
              Chain::singleton(kZ, tri2(0, 0, 2, 1, 1, 2), 2);
    for (Rat s : {Rat(1, 3), Rat(2, 5), Rat(9, 11), Rat(13, 8)}) {
        for (int axis : {0, 1}) {
            Chain a = slice(c, {{axis}, {s}}).boundary();
            Chain b = slice(c.boundary(), {{axis}, {s}});
            CHECK(a == b);
        }
    }
}

TEST_CASE("iterated slicing agrees with the direct zero-dimensional route") {
    Chain c = unit_square() + Chain::singleton(kZ, tri2(1, 0, 2, 0, 1, 1), 3) -
              Chain::singleton(kZ, tri2(0, 0, 2, 1, 1, 2), 2);
    std::vector<RatVec> pts = {{Rat(1, 3), Rat(1, 5)}, {Rat(3, 7), Rat(8, 9)},
                               {Rat(11, 10), Rat(1, 2)}, {Rat(13, 9), Rat(5, 7)}};
    for (const auto& at : pts) {
        auto direct = zero_dim_slice(c, {0, 1}, at);
        REQUIRE(direct.has_value());
        Chain iter = slice(c, {{0, 1}, at});
        CHECK(iter == *direct);
    }
    // non-generic sample (vertex preimage) is reported
    CHECK(!zero_dim_slice(c, {0, 1}, {Rat(1), Rat(1)}).has_value());
}

TEST_CASE("zero-dimensional slices sum coefficients with det signs") {
    // two opposing diagonals: slice multiplicities cancel at the crossing
    Chain x = Chain::singleton(kZ, seg2(0, 0, 1, 1)) +
              Chain::singleton(kZ, seg2(1, 0, 0, 1));
    auto s = zero_dim_slice(x, {0}, {Rat(1, 4)});
    REQUIRE(s.has_value());
    // both segments cross x=1/4 with opposite e_1-orientations: +1 and -1
    CHECK(s->terms().size() == 2);
    CertifiedReal total;
    Rat signed_sum = 0;
    for (const auto& t : s->terms())
        signed_sum += t.coeff.value();
    CHECK(signed_sum == 0);
}

TEST_CASE("coarea bounds") {
    Chain diag = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    CHECK(coarea_bound(diag, {0}) == CertifiedReal(1));
    CHECK(coarea_bound(diag, {1}) == CertifiedReal(1));

    Chain horiz = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    CHECK(coarea_bound(horiz, {1}).is_zero());
    CHECK(coarea_bound(horiz, {0}) == CertifiedReal(1));

    // triangle (0,0),(2,0),(0,2): integral of vertical slice lengths = area 2
    Chain t = Chain::singleton(kZ, tri2(0, 0, 2, 0, 0, 2));
    CHECK(coarea_bound(t, {0, 1}) == CertifiedReal(2));
    // slicing a 2-cell along one axis: bound sqrt(sum of squared minors)
    CHECK(coarea_bound(t, {0}) == CertifiedReal(2));

    // coefficient norms scale the bound
    CHECK(coarea_bound(diag.scaled(-3), {0}) == CertifiedReal(3));
}

TEST_CASE("vanishing decisions in one dimension") {
    // same segment under two triangulations with opposite signs
    Chain c = Chain::singleton(kZ, seg2(0, 0, 1, 1)) -
              (Chain::singleton(kZ, seg2(0, 0, Rat(1, 2), Rat(1, 2))) +
               Chain::singleton(kZ, seg2(Rat(1, 2), Rat(1, 2), 1, 1)));
    CHECK(slices_vanish_ae(c, {0}).verdict == VanishVerdict::Vanishes);
    CHECK(slices_vanish_ae(c, {1}).verdict == VanishVerdict::Vanishes);

    Chain diag = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    auto r = slices_vanish_ae(diag, {0});
    CHECK(r.verdict == VanishVerdict::NonzeroAt);
    REQUIRE(r.witness.has_value());
    CHECK((*r.witness)[0] == Rat(1, 2)); // midpoint of the only interval

    // different lines with equal and opposite coefficients do NOT cancel
    Chain two = Chain::singleton(kZ, seg2(0, 0, 1, 1)) -
                Chain::singleton(kZ, seg2(0, 1, 1, 2));
    CHECK(slices_vanish_ae(two, {0}).verdict == VanishVerdict::NonzeroAt);

    // but shifted pieces of the same line cancel where they overlap only
    Chain partial = Chain::singleton(kZ, seg2(0, 0, 1, 1)) -
                    Chain::singleton(kZ, seg2(Rat(1, 2), Rat(1, 2), Rat(3, 2), Rat(3, 2)));
    auto pr = slices_vanish_ae(partial, {0});
    CHECK(pr.verdict == VanishVerdict::NonzeroAt);
    REQUIRE(pr.witness.has_value());
    CHECK((*pr.witness)[0] == Rat(1, 4));
}

TEST_CASE("vanishing decisions in two dimensions") {
    // two triangulations of the unit square cancel
    Chain a = unit_square();
    Chain b = Chain::singleton(kZ, tri2(0, 0, 1, 0, 0, 1)) +
              Chain::singleton(kZ, tri2(1, 0, 1, 1, 0, 1));
    CHECK(slices_vanish_ae(a - b, {0, 1}).verdict == VanishVerdict::Vanishes);
    auto r = slices_vanish_ae(a, {0, 1});
    CHECK(r.verdict == VanishVerdict::NonzeroAt);
    REQUIRE(r.witness.has_value());
    auto z = zero_dim_slice(a, {0, 1}, *r.witness);
    REQUIRE(z.has_value());
    CHECK(!z->is_empty());
}

TEST_CASE("coarea zero forces vanishing") {
    Chain horiz = Chain::singleton(kZ, seg2(0, 0, 1, 0)) +
                  Chain::singleton(kZ, seg2(Rat(1, 3), 2, Rat(7, 2), 2), -4);
    CHECK(coarea_bound(horiz, {1}).is_zero());
    CHECK(slices_vanish_ae(horiz, {1}).verdict == VanishVerdict::Vanishes);
}

TEST_CASE("splitting test") {
    // product of segments across the split n1 = 1: type (1,1)
    Chain sq = unit_square();
    CHECK(splitting_test(sq, 1, 1, 1).verdict == SplitVerdict::Split);
    CHECK(splitting_test(sq, 2, 0, 2).verdict == SplitVerdict::Split);

    // the diagonal in R^2 with n1 = 1 is not of type (1,0): witness axis 2
    Chain diag = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    auto r = splitting_test(diag, 1, 0, 1);
    CHECK(r.verdict == SplitVerdict::NotSplit);
    REQUIRE(r.witness_gamma.has_value());
    CHECK(*r.witness_gamma == std::vector<int>{1});
    auto r2 = splitting_test(diag, 0, 1, 1);
    CHECK(r2.verdict == SplitVerdict::NotSplit);
    REQUIRE(r2.witness_gamma.has_value());
    CHECK(*r2.witness_gamma == std::vector<int>{0});

    // horizontal segments are type (1,0) for n1 = 1
    Chain horiz = Chain::singleton(kZ, seg2(0, 0, 1, 0)) +
                  Chain::singleton(kZ, seg2(0, 2, 3, 2), 5);
    CHECK(splitting_test(horiz, 1, 0, 1).verdict == SplitVerdict::Split);

    // overlapping representations are refused
    Chain dup = Chain::singleton(kZ, seg2(0, 0, 1, 0)) +
                (Chain::singleton(kZ, seg2(0, 0, Rat(1, 2), 0)) +
                 Chain::singleton(kZ, seg2(Rat(1, 2), 0, 1, 0)));
    CHECK(splitting_test(dup, 1, 0, 1).verdict == SplitVerdict::NeedsCertifiedRep);

    CHECK_THROWS_AS(splitting_test(diag, 1, 1, 1), DimensionMismatch);
}

TEST_CASE("j-vanishing tests by type") {
    // diagonal, type (1,0), n1 = 1: gamma = {1} (first factor) is nonzero
    Chain diag = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    auto r = j_vanishing_test(diag, 1, 0, 1);
    CHECK(r.verdict == VanishVerdict::NonzeroAt);
    REQUIRE(r.witness_gamma.has_value());
    CHECK(*r.witness_gamma == std::vector<int>{0});
    CHECK(j_vanishing_test(diag, 0, 1, 1).verdict == VanishVerdict::NonzeroAt);

    // square on axes {0,2} in R^4 with n1 = 2: pure type (1,1)
    Chain sq = axis_square(4, 0, 2);
    CHECK(j_vanishing_test(sq, 2, 0, 2).verdict == VanishVerdict::Vanishes);
    CHECK(j_vanishing_test(sq, 0, 2, 2).verdict == VanishVerdict::Vanishes);
    CHECK(j_vanishing_test(sq, 1, 1, 2).verdict == VanishVerdict::NonzeroAt);

    // split <=> all off-type slices vanish
    CHECK(splitting_test(sq, 1, 1, 2).verdict == SplitVerdict::Split);
}

TEST_CASE("sampled fallback for high-dimensional cells") {
    // a 3-cell in R^4: exact decisions are out of scope, sampling answers
    Simplex cell(4, {{Rat(0), Rat(0), Rat(0), Rat(0)},
                     {Rat(1), Rat(0), Rat(0), Rat(0)},
                     {Rat(0), Rat(1), Rat(0), Rat(0)},
                     {Rat(0), Rat(0), Rat(1), Rat(0)}});
    Chain c = Chain::singleton(kZ, cell);
    auto r = slices_vanish_ae(c, {0, 1, 2});
    CHECK(r.verdict == VanishVerdict::NonzeroAt);
    CHECK((c - c).is_empty());
    auto u = slices_vanish_ae(c - Chain::singleton(kZ, cell), {0, 1, 2});
    CHECK(u.verdict == VanishVerdict::Vanishes); // canonically empty chain
}
