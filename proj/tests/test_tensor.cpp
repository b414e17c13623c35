#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polychain/tensor.hpp"
#include "polychain/errors.hpp"

using namespace polychain;

namespace {

const Group kZ = Group::Z();

Simplex pt1(const Rat& a) { return Simplex(1, {{a}}); }
Simplex seg1(const Rat& a, const Rat& b) { return Simplex(1, {{a}, {b}}); }
Simplex pt2(const Rat& a, const Rat& b) { return Simplex(2, {{a, b}}); }
Simplex seg2(Rat ax, Rat ay, Rat bx, Rat by) {
    return Simplex(2, {{ax, ay}, {bx, by}});
}
Simplex tri2(Rat ax, Rat ay, Rat bx, Rat by, Rat cx, Rat cy) {
    return Simplex(2, {{ax, ay}, {bx, by}, {cx, cy}});
}

// The unit box [0,1] x [0,1] as a type (1,1) tensor chain over Z with the
// obvious 1-dimensional factors.
TensorChain unit_box() {
    return TensorChain::make(1, 1, 1, 1, kZ,
                             {{seg1(0, 1), seg1(0, 1), GVal::one(kZ)}});
}

Chain unit_square() {
    return Chain::make(2, 2, kZ,
                       {{tri2(0, 0, 1, 0, 1, 1), GVal::one(kZ)},
                        {tri2(0, 0, 1, 1, 0, 1), GVal::one(kZ)}});
}

} // namespace

TEST_CASE("tensor canonicalization") {
    // Swapping vertices in either slot negates the coefficient.
    TensorChain a = TensorChain::make(1, 1, 1, 1, kZ,
                                      {{seg1(1, 0), seg1(0, 1), GVal::one(kZ)}});
    CHECK(a == -unit_box());
    TensorChain b = TensorChain::make(1, 1, 1, 1, kZ,
                                      {{seg1(1, 0), seg1(1, 0), GVal::one(kZ)}});
    CHECK(b == unit_box());
    // Equal pairs merge; zero coefficients and degenerate cells are dropped.
    TensorChain m = TensorChain::make(
        1, 1, 1, 1, kZ,
        {{seg1(0, 1), seg1(0, 1), GVal::one(kZ)},
         {seg1(1, 0), seg1(1, 0), GVal(kZ, 2)},
         {seg1(0, 1), seg1(2, 3), GVal::zero(kZ)},
         {seg1(0, 0), seg1(0, 1), GVal::one(kZ)}});
    CHECK(m == unit_box().scaled(3));
    CHECK(m.terms().size() == 1);
    CHECK((unit_box() - unit_box()).is_empty());
    // Empty chains of equal split compare equal regardless of trivial type.
    CHECK(TensorChain::zero(1, 1, -1, 1, kZ) == TensorChain::zero(1, 1, 0, 0, kZ));
}

TEST_CASE("partial boundaries of a box") {
    TensorChain t = unit_box();
    TensorChain b1 = d1(t);
    CHECK(b1.type() == TypeIndex{0, 1});
    CHECK(b1 == TensorChain::make(1, 1, 0, 1, kZ,
                                  {{pt1(1), seg1(0, 1), GVal::one(kZ)},
                                   {pt1(0), seg1(0, 1), -GVal::one(kZ)}}));
    // d2 carries the (-1)^{k1} twist: here k1 = 1.
    TensorChain b2 = d2(t);
    CHECK(b2 == TensorChain::make(1, 1, 1, 0, kZ,
                                  {{seg1(0, 1), pt1(1), -GVal::one(kZ)},
                                   {seg1(0, 1), pt1(0), GVal::one(kZ)}}));
    CHECK(d1(b1).is_empty());
    CHECK(d2(b2).is_empty());
    CHECK(d1(d2(t)) == -d2(d1(t)));
    // A boundary in an exhausted slot is zero, not an error.
    TensorChain pSeg = TensorChain::make(1, 1, 0, 1, kZ,
                                         {{pt1(0), seg1(0, 1), GVal::one(kZ)}});
    CHECK(d1(pSeg).is_empty());
}

TEST_CASE("embedding and its boundary splitting") {
    TensorChain t = unit_box();
    Chain e = embed(t);
    CHECK(e.ambient() == 2);
    CHECK(e.dim() == 2);
    CHECK(chain_is_null(e - unit_square()));
    CHECK(e.mass().value.rational_part() == 1);
    CHECK(e.mass().certified);
    CHECK(e.boundary() == embed(d1(t)) + embed(d2(t)));

    // Mixed shapes and degrees, exact canonical equality each time.
    std::vector<TensorChain> samples = {
        TensorChain::make(2, 1, 2, 1, kZ,
                          {{tri2(0, 0, 2, 0, 0, 2), seg1(-1, 1), GVal(kZ, 2)}}),
        TensorChain::make(1, 2, 1, 2, kZ,
                          {{seg1(0, 3), tri2(0, 0, 1, 0, 0, 1), GVal::one(kZ)}}),
        TensorChain::make(2, 2, 0, 2, kZ,
                          {{pt2(5, 7), tri2(0, 0, 1, 2, -1, 1), GVal(kZ, -3)}}),
        TensorChain::make(2, 2, 2, 0, kZ,
                          {{tri2(0, 0, 1, 0, 0, 1), pt2(1, 4), GVal::one(kZ)}}),
        TensorChain::make(1, 1, 1, 1, kZ,
                          {{seg1(0, 1), seg1(0, 1), GVal::one(kZ)},
                           {seg1(1, 2), seg1(0, 2), GVal(kZ, -2)}}),
    };
    for (const auto& s : samples)
        CHECK(embed(s).boundary() == embed(d1(s)) + embed(d2(s)));

    // Coefficients ride on the second factor of the product.
    TensorChain w = TensorChain::make(1, 1, 1, 1, kZ,
                                      {{seg1(0, 1), seg1(0, 2), GVal(kZ, 3)}});
    Chain prod = cartesian_product(Chain::singleton(kZ, seg1(0, 1)),
                                   Chain::singleton(kZ, seg1(0, 2), 3));
    CHECK(embed(w) == prod);
}

TEST_CASE("i-view round trip") {
    TensorChain t = TensorChain::make(
        1, 2, 1, 1, kZ,
        {{seg1(0, 1), seg2(0, 0, 1, 0), GVal(kZ, 2)},
         {seg1(0, 1), seg2(0, 0, 0, 1), GVal(kZ, -1)},
         {seg1(1, 2), seg2(0, 0, 1, 0), GVal::one(kZ)}});
    IChainView v = i_map(t);
    CHECK(v.groups.size() == 2);
    CHECK(v.groups[0].first == seg1(0, 1));
    CHECK(v.groups[0].second.terms().size() == 2);
    CHECK(v.groups[1].second == Chain::singleton(kZ, seg2(0, 0, 1, 0)));
    CHECK(i_inverse(v) == t);

    // Z/2Z: a doubled first-factor cell has coefficient chain 0 and vanishes.
    const Group z2 = Group::Zmod(2);
    TensorChain dbl = TensorChain::make(1, 1, 1, 1, z2,
                                        {{seg1(0, 1), seg1(0, 1), GVal(z2, 2)}});
    CHECK(dbl.is_empty());
    CHECK(i_map(dbl).groups.empty());
    TensorChain pair = TensorChain::make(1, 1, 1, 1, z2,
                                         {{seg1(0, 1), seg1(0, 1), GVal(z2, 1)},
                                          {seg1(0, 1), seg1(1, 0), GVal(z2, 1)}});
    CHECK(i_map(pair).groups.empty()); // the two terms annihilate termwise
    CHECK(i_inverse(i_map(pair)) == pair);
}

TEST_CASE("augmentation chi") {
    Chain c = Chain::make(2, 0, kZ,
                          {{pt2(0, 0), GVal(kZ, 3)}, {pt2(1, 5), GVal(kZ, 2)}});
    CHECK(chi(c) == GVal(kZ, 5));
    Chain diff = Chain::make(1, 0, kZ,
                             {{pt1(0), GVal::one(kZ)}, {pt1(1), -GVal::one(kZ)}});
    CHECK(chi(diff).is_zero());
    // chi of any boundary vanishes.
    Chain b = Chain::singleton(kZ, seg2(Rat(1, 3), 2, 7, Rat(-5, 2))).boundary();
    CHECK(chi(b).is_zero());
    CHECK(chi(Chain::zero(2, 0, kZ)).is_zero());
    CHECK_THROWS_AS(chi(unit_square()), DimensionMismatch);
}

TEST_CASE("chi wedge") {
    // Four-corner configuration: ++ at (0,0), (l,l); -- at (l,0), (0,l).
    Rat l(3, 2);
    TensorChain fc = TensorChain::make(
        1, 1, 0, 0, kZ,
        {{pt1(0), pt1(0), GVal::one(kZ)},
         {pt1(l), pt1(l), GVal::one(kZ)},
         {pt1(l), pt1(0), -GVal::one(kZ)},
         {pt1(0), pt1(l), -GVal::one(kZ)}});
    CHECK(chi_wedge(fc).is_zero());
    // chi_wedge(j_{0,0} c) == chi(c) for a 0-chain of product points.
    Chain c = Chain::make(2, 0, kZ,
                          {{pt2(0, 1), GVal(kZ, 4)}, {pt2(Rat(1, 2), 3), GVal(kZ, -1)}});
    auto comps = j_decompose(c, 1);
    REQUIRE(comps.size() == 1);
    CHECK(chi_wedge(comps.at(TypeIndex{0, 0})) == chi(c));
    CHECK_THROWS_AS(chi_wedge(unit_box()), TypeMismatch);
}

TEST_CASE("dyadic collapse") {
    TensorChain t = TensorChain::make(
        2, 1, 0, 1, kZ,
        {{pt2(Rat(3, 10), Rat(7, 10)), seg1(0, 1), GVal::one(kZ)}});
    TensorChain c1 = dyadic_collapse(t, 1);
    CHECK(c1 == TensorChain::make(2, 1, 0, 1, kZ,
                                  {{pt2(0, Rat(1, 2)), seg1(0, 1), GVal::one(kZ)}}));
    // Points already on the mesh are fixed.
    TensorChain grid = TensorChain::make(
        2, 1, 0, 1, kZ,
        {{pt2(Rat(3, 4), Rat(-1, 2)), seg1(0, 1), GVal::one(kZ)}});
    CHECK(dyadic_collapse(grid, 2) == grid);
    // Negative coordinates round toward -infinity.
    TensorChain neg = TensorChain::make(
        1, 1, 0, 1, kZ, {{pt1(Rat(-3, 10)), seg1(0, 1), GVal::one(kZ)}});
    CHECK(dyadic_collapse(neg, 1) ==
          TensorChain::make(1, 1, 0, 1, kZ,
                            {{pt1(Rat(-1, 2)), seg1(0, 1), GVal::one(kZ)}}));
    // Terms snapped into one cube merge; opposite ones cancel.
    TensorChain two = TensorChain::make(
        1, 1, 0, 1, kZ,
        {{pt1(Rat(1, 10)), seg1(0, 1), GVal::one(kZ)},
         {pt1(Rat(2, 5)), seg1(0, 1), -GVal::one(kZ)}});
    CHECK(dyadic_collapse(two, 1).is_empty());
    CHECK(dyadic_collapse(two, 0).is_empty());
    TensorChain add = TensorChain::make(
        1, 1, 0, 1, kZ,
        {{pt1(Rat(1, 10)), seg1(0, 1), GVal::one(kZ)},
         {pt1(Rat(2, 5)), seg1(0, 1), GVal(kZ, 2)}});
    CHECK(dyadic_collapse(add, 1) ==
          TensorChain::make(1, 1, 0, 1, kZ,
                            {{pt1(0), seg1(0, 1), GVal(kZ, 3)}}));
    CHECK_THROWS_AS(dyadic_collapse(unit_box(), 1), TypeMismatch);
    CHECK_THROWS_AS(dyadic_collapse(t, -1), UsageError);
}

TEST_CASE("j decomposition of axis cells") {
    // Horizontal + vertical segment split into the two pure types.
    Chain c = Chain::make(2, 1, kZ,
                          {{seg2(0, 0, 1, 0), GVal::one(kZ)},
                           {seg2(0, 0, 0, 1), GVal(kZ, 2)}});
    auto comps = j_decompose(c, 1);
    REQUIRE(comps.size() == 2);
    const TensorChain& h = comps.at(TypeIndex{1, 0});
    const TensorChain& v = comps.at(TypeIndex{0, 1});
    CHECK(h == TensorChain::make(1, 1, 1, 0, kZ,
                                 {{seg1(0, 1), pt1(0), GVal::one(kZ)}}));
    CHECK(v == TensorChain::make(1, 1, 0, 1, kZ,
                                 {{pt1(0), seg1(0, 1), GVal(kZ, 2)}}));
    CHECK(embed(h).mass().value.rational_part() == 1);
    CHECK(embed(v).mass().value.rational_part() == 2);
    // A diagonal segment has no product structure.
    CHECK_THROWS_AS(j_decompose(Chain::singleton(kZ, seg2(0, 0, 1, 1)), 1),
                    NotTensorRepresentable);
}

TEST_CASE("j decomposition reassembles boxes") {
    // Both triangulations of the unit square give the same canonical box.
    auto comps = j_decompose(unit_square(), 1);
    REQUIRE(comps.size() == 1);
    CHECK(comps.at(TypeIndex{1, 1}) == unit_box());
    Chain other = Chain::make(2, 2, kZ,
                              {{tri2(0, 0, 1, 0, 0, 1), GVal::one(kZ)},
                               {tri2(1, 0, 1, 1, 0, 1), GVal::one(kZ)}});
    auto comps2 = j_decompose(other, 1);
    CHECK(comps2.at(TypeIndex{1, 1}) == unit_box());
    // Reversed orientation flips the tensor coefficient.
    auto comps3 = j_decompose(-unit_square(), 1);
    CHECK(comps3.at(TypeIndex{1, 1}) == -unit_box());
    // A lone triangle is not a sum of boxes.
    CHECK_THROWS_AS(j_decompose(Chain::singleton(kZ, tri2(0, 0, 1, 0, 1, 1)), 1),
                    NotTensorRepresentable);
    // Two stacked boxes living in a common vertical strip.
    TensorChain stack = TensorChain::make(
        1, 1, 1, 1, kZ,
        {{seg1(0, 1), seg1(0, 1), GVal::one(kZ)},
         {seg1(0, 1), seg1(1, 2), GVal(kZ, -3)}});
    auto comps4 = j_decompose(embed(stack), 1);
    REQUIRE(comps4.size() == 1);
    CHECK(comps4.at(TypeIndex{1, 1}) == stack);
    // Overlapping translates reassemble to a refined but equivalent grid.
    TensorChain overlap = TensorChain::make(
        1, 1, 1, 1, kZ,
        {{seg1(0, 1), seg1(0, 1), GVal::one(kZ)},
         {seg1(Rat(1, 2), Rat(3, 2)), seg1(0, 1), GVal::one(kZ)}});
    auto comps5 = j_decompose(embed(overlap), 1);
    REQUIRE(comps5.size() == 1);
    CHECK(chain_is_null(embed(comps5.at(TypeIndex{1, 1})) - embed(overlap)));
    CHECK(comps5.at(TypeIndex{1, 1}).terms().size() == 3);
    // A product plane sitting obliquely in R^4 with 2d factors.
    TensorChain oblique = TensorChain::make(
        2, 2, 1, 1, kZ,
        {{Simplex(2, {{0, 0}, {1, 2}}), Simplex(2, {{3, 0}, {3, 5}}), GVal(kZ, 2)}});
    auto comps6 = j_decompose(embed(oblique), 2);
    REQUIRE(comps6.size() == 1);
    CHECK(comps6.at(TypeIndex{1, 1}) == oblique);
}

TEST_CASE("j decomposition splits mixed chains with additive mass") {
    TensorChain box = unit_box();
    TensorChain triPt = TensorChain::make(
        2, 2, 2, 0, kZ,
        {{tri2(0, 0, 1, 0, 0, 1), pt2(2, 2), GVal(kZ, 2)}});
    TensorChain ptTri = TensorChain::make(
        2, 2, 0, 2, kZ,
        {{pt2(3, 3), tri2(0, 0, 2, 0, 0, 2), GVal::one(kZ)}});
    TensorChain box4 = TensorChain::make(
        2, 2, 1, 1, kZ,
        {{Simplex(2, {{0, 0}, {1, 0}}), Simplex(2, {{0, 0}, {1, 0}}), GVal::one(kZ)}});
    Chain c = embed(triPt) + embed(ptTri) + embed(box4);
    auto comps = j_decompose(c, 2);
    REQUIRE(comps.size() == 3);
    CHECK(comps.at(TypeIndex{2, 0}) == triPt);
    CHECK(comps.at(TypeIndex{0, 2}) == ptTri);
    CHECK(comps.at(TypeIndex{1, 1}) == box4);
    CertifiedReal total = embed(triPt).mass().value + embed(ptTri).mass().value +
                          embed(box4).mass().value;
    CHECK(c.mass().value == total);
    (void)box;
}

TEST_CASE("tensor slice") {
    TensorChain t = unit_box();
    SliceSpec first{{0}, {Rat(1, 2)}};
    SliceSpec second{{1}, {Rat(1, 2)}};
    TensorChain sf = tensor_slice(t, first);
    CHECK(sf == TensorChain::make(1, 1, 0, 1, kZ,
                                  {{pt1(0), seg1(0, 1), GVal::one(kZ)}}));
    TensorChain ss = tensor_slice(t, second);
    CHECK(ss == TensorChain::make(1, 1, 1, 0, kZ,
                                  {{seg1(0, 1), pt1(0), GVal::one(kZ)}}));
    // Both axes at once: a (0,0) point with coefficient +1.
    TensorChain sb = tensor_slice(t, SliceSpec{{0, 1}, {Rat(1, 2), Rat(1, 3)}});
    CHECK(sb == TensorChain::make(1, 1, 0, 0, kZ,
                                  {{pt1(0), pt1(0), GVal::one(kZ)}}));
    CHECK_THROWS_AS(tensor_slice(t, SliceSpec{{0}, {Rat(0)}}), NonGenericPoint);
    CHECK_THROWS_AS(tensor_slice(sf, SliceSpec{{0}, {Rat(1, 2)}}), DimensionMismatch);
    CHECK_THROWS_AS(tensor_slice(t, SliceSpec{{1, 0}, {Rat(1, 2), Rat(1, 2)}}),
                    UsageError);
    CHECK_THROWS_AS(tensor_slice(t, SliceSpec{{0, 5}, {Rat(1, 2), Rat(1, 2)}}),
                    UsageError);
}

TEST_CASE("tensor slice commutes with the partial boundaries") {
    // d1 Sl = Sl d1 and d2 Sl = (-1)^{|gamma1|} Sl d2 whenever degrees admit.
    TensorChain t11 = TensorChain::make(
        1, 1, 1, 1, kZ,
        {{seg1(0, 2), seg1(0, 1), GVal::one(kZ)},
         {seg1(1, 3), seg1(-1, 2), GVal(kZ, -2)}});
    SliceSpec g0{{0}, {Rat(5, 4)}};
    SliceSpec g1{{1}, {Rat(1, 3)}};
    CHECK(d2(tensor_slice(t11, g0)) == -tensor_slice(d2(t11), g0));
    CHECK(d1(tensor_slice(t11, g1)) == tensor_slice(d1(t11), g1));

    TensorChain t12 = TensorChain::make(
        1, 2, 1, 2, kZ,
        {{seg1(0, 1), tri2(0, 0, 2, 0, 0, 2), GVal::one(kZ)},
         {seg1(0, 2), tri2(0, 0, 1, 1, -1, 1), GVal(kZ, 3)}});
    SliceSpec h0{{0}, {Rat(1, 2)}};
    SliceSpec h1{{1}, {Rat(1, 5)}};
    CHECK(d1(tensor_slice(t12, h1)) == tensor_slice(d1(t12), h1));
    CHECK(d2(tensor_slice(t12, h1)) == tensor_slice(d2(t12), h1));
    CHECK(d2(tensor_slice(t12, h0)) == -tensor_slice(d2(t12), h0));

    // Embedding picks up (-1)^{k2 |gamma1|} relative to the chain-level slice.
    CHECK(chain_is_null(slice(embed(t11), g0) + embed(tensor_slice(t11, g0))));
    CHECK(chain_is_null(slice(embed(t11), g1) - embed(tensor_slice(t11, g1))));
    CHECK(chain_is_null(slice(embed(t12), h0) - embed(tensor_slice(t12, h0))));
}

TEST_CASE("j commutes with slicing and restriction") {
    TensorChain t = unit_box();
    Chain c = embed(t);
    // Slice the embedded chain, then decompose; compare against the factor
    // slice of the decomposition (types shift by the slice multi-index).
    SliceSpec g0{{0}, {Rat(3, 7)}};
    auto lhs = j_decompose(slice(c, g0), 1);
    REQUIRE(lhs.size() == 1);
    const TensorChain& comp = lhs.at(TypeIndex{0, 1});
    TensorChain rhs = tensor_slice(j_decompose(c, 1).at(TypeIndex{1, 1}), g0);
    CHECK(chain_is_null(embed(comp) + embed(rhs))); // k2 = 1, |gamma1| = 1
    // Restriction to a box commutes with decomposition.
    Box b(2);
    b[0] = {std::nullopt, Rat(1, 2)};
    Chain cr = c.restrict_box(b);
    auto dr = j_decompose(cr, 1);
    REQUIRE(dr.size() == 1);
    Chain viaTensor = embed(j_decompose(c, 1).at(TypeIndex{1, 1})).restrict_box(b);
    CHECK(chain_is_null(embed(dr.at(TypeIndex{1, 1})) - viaTensor));
}

TEST_CASE("tensor json round trip") {
    TensorChain t = TensorChain::make(
        1, 2, 1, 1, kZ,
        {{seg1(0, 1), seg2(0, 0, 1, 0), GVal(kZ, 2)},
         {seg1(Rat(-1, 3), 2), seg2(0, 0, 0, 1), -GVal::one(kZ)}});
    Json j = t.to_json();
    CHECK(j.at("split") == Json::array({1, 2}));
    CHECK(j.at("type") == Json::array({1, 1}));
    CHECK(TensorChain::from_json(j) == t);
    CHECK(TensorChain::from_json(j).to_json().dump() == j.dump());
    TensorChain z = TensorChain::zero(2, 2, 0, 2, Group::Zmod(3));
    CHECK(TensorChain::from_json(z.to_json()) == z);
}
