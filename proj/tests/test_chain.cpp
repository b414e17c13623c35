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

// unit square as two coherently oriented triangles
Chain unit_square() {
    return Chain::singleton(kZ, tri2(0, 0, 1, 0, 1, 1)) +
           Chain::singleton(kZ, tri2(0, 0, 1, 1, 0, 1));
}

} // namespace

TEST_CASE("orientation reversal is negation") {
    Chain a = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    Chain b = Chain::singleton(kZ, seg2(1, 1, 0, 0));
    CHECK((a + b).is_empty()); // g p + g (-p) = 0
    CHECK(b == -a);
}

TEST_CASE("equal cells merge and zero terms drop") {
    Chain a = Chain::singleton(kZ, seg2(0, 0, 1, 0), 2);
    Chain b = Chain::singleton(kZ, seg2(0, 0, 1, 0), 3);
    Chain s = a + b;
    REQUIRE(s.terms().size() == 1);
    CHECK(s.terms()[0].coeff == GVal(kZ, 5));
    CHECK((s - s).is_empty());

    // degenerate cells are the zero cell
    Chain d = Chain::singleton(kZ, seg2(1, 1, 1, 1));
    CHECK(d.is_empty());
}

TEST_CASE("mod-2 chains annihilate doubles") {
    Group z2 = Group::Zmod(2);
    Chain a = Chain::singleton(z2, seg2(0, 0, 1, 1));
    CHECK((a + a).is_empty());
    CHECK(a == -a);
}

TEST_CASE("subdivision is not normalized but is null-tested") {
    Chain whole = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    Chain split = Chain::singleton(kZ, seg2(0, 0, Rat(1, 2), 0)) +
                  Chain::singleton(kZ, seg2(Rat(1, 2), 0, 1, 0));
    CHECK(!(whole == split));        // distinct canonical forms
    CHECK(!whole.is_empty());
    CHECK(chain_is_null(whole - split)); // equal modulo subdivision
    CHECK(!chain_is_null(whole - Chain::singleton(kZ, seg2(0, 0, Rat(1, 2), 0))));
}

TEST_CASE("boundary of a segment") {
    Chain c = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    Chain b = c.boundary();
    REQUIRE(b.terms().size() == 2);
    Chain expect = Chain::singleton(kZ, Simplex(2, {{Rat(1), Rat(1)}})) -
                   Chain::singleton(kZ, Simplex(2, {{Rat(0), Rat(0)}}));
    CHECK(b == expect);
    CHECK(Chain::zero(2, 1, kZ).boundary().is_empty());
    CHECK_THROWS_AS(b.boundary(), ZeroDimensional);
}

TEST_CASE("square boundary cancels the diagonal") {
    Chain b = unit_square().boundary();
    CHECK(b.terms().size() == 4);
    for (const auto& t : b.terms()) {
        CHECK(t.coeff.norm() == 1);
        CHECK(squared_volume(t.cell) == 1); // all remaining edges are unit
    }
    CHECK(chain_is_null(b - b));
}

TEST_CASE("double boundary vanishes") {
    Chain c = Chain::singleton(kZ, tri2(0, 0, 2, 1, Rat(1, 3), 3), 5) +
              Chain::singleton(kZ, tri2(0, 0, 1, 0, 0, 1), -2);
    CHECK(c.boundary().boundary().is_empty());
    Chain q = Chain::singleton(Group::Q(), tri2(0, 0, 2, 1, Rat(1, 3), 3), Rat(2, 7));
    CHECK(q.boundary().boundary().is_empty());
}

TEST_CASE("mass reports") {
    Chain two = Chain::singleton(kZ, seg2(0, 0, 1, 0), 2);
    auto m = two.mass();
    CHECK(m.certified);
    CHECK(m.value.is_rational());
    CHECK(m.value.rational_part() == 2);

    auto diag = Chain::singleton(kZ, seg2(0, 0, 1, 1)).mass();
    CHECK(diag.value == CertifiedReal::sqrt_of(2));
    CHECK(diag.interval.first >= 1.41421356);
    CHECK(diag.interval.second <= 1.41421357);

    CHECK(unit_square().mass().value.rational_part() == 1);
}

TEST_CASE("overlap certification") {
    // same segment twice under different triangulations cannot be merged
    Chain a = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    Chain b = Chain::singleton(kZ, seg2(0, 0, Rat(1, 2), 0)) +
              Chain::singleton(kZ, seg2(Rat(1, 2), 0, 1, 0));
    auto m = (a + b).mass();
    CHECK(!m.certified);
    CHECK(m.value.rational_part() == 2); // stored-representation value
    REQUIRE(m.overlap_witness.has_value());

    // touching at a point is fine
    Chain touching = Chain::singleton(kZ, seg2(0, 0, 1, 0)) +
                     Chain::singleton(kZ, seg2(1, 0, 2, 0));
    CHECK(touching.mass().certified);

    // overlapping triangles are caught
    Chain tris = Chain::singleton(kZ, tri2(0, 0, 2, 0, 0, 2)) +
                 Chain::singleton(kZ, tri2(1, 1, 0, 1, 1, 0));
    CHECK(!tris.mass().certified);
    CHECK(unit_square().mass().certified);
}

TEST_CASE("restriction") {
    Chain seg = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    Box half(2);
    half[0].second = Rat(1, 2);
    Chain r = seg.restrict_box(half);
    CHECK(r.mass().value.rational_part() == Rat(1, 2));

    Box all(2);
    CHECK(seg.restrict_box(all) == seg);

    // restriction additivity over a generic split
    Chain sq = unit_square();
    Rat s(3, 7);
    auto lo = restrict_halfspace(sq, 0, s, false).mass();
    auto hi = restrict_halfspace(sq, 0, s, true).mass();
    CHECK(lo.certified);
    CHECK(hi.certified);
    CHECK(lo.value + hi.value == sq.mass().value);
}

TEST_CASE("non-generic boxes are rejected") {
    Chain flat = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    Box bad(2);
    bad[1].second = Rat(0); // the segment lies inside the face plane
    CHECK_THROWS_AS(flat.restrict_box(bad), NonGenericBox);
}

TEST_CASE("half-space boundary formula") {
    // boundary(c restricted) = boundary(c) restricted + intersection chain,
    // restriction to the lower half-space
    Chain c = unit_square() + Chain::singleton(kZ, tri2(1, 0, 2, 0, 1, 1), 3);
    for (Rat s : {Rat(1, 3), Rat(1, 2), Rat(7, 9), Rat(5, 4)}) {
        Chain lhs = restrict_halfspace(c, 0, s, false).boundary();
        Chain rhs = restrict_halfspace(c.boundary(), 0, s, false) +
                    hyperplane_intersection(c, 0, s);
        CHECK(chain_is_null(lhs - rhs));
    }
}

TEST_CASE("cartesian products") {
    Chain pt = Chain::singleton(kZ, Simplex(1, {{Rat(0)}}));
    Chain seg = Chain::singleton(kZ, Simplex(1, {{Rat(0)}, {Rat(1)}}));

    // point x segment embeds the segment
    Chain emb = cartesian_product(pt, seg);
    CHECK(emb.ambient() == 2);
    CHECK(emb.dim() == 1);
    CHECK(emb.mass().value.rational_part() == 1);

    // segment x segment is the unit square
    Chain sq = cartesian_product(seg, seg);
    CHECK(sq.terms().size() == 2);
    CHECK(sq.mass().value.rational_part() == 1);
    CHECK(sq.mass().certified);
    CHECK(chain_is_null(sq - unit_square()));

    // boundary product rule: d(a x b) = da x b + (-1)^k1 a x db
    Chain lhs = sq.boundary();
    Chain rhs = cartesian_product(seg.boundary(), seg) -
                cartesian_product(seg, seg.boundary());
    CHECK(lhs == rhs);

    // rationals are allowed in the second factor only
    Chain qseg = Chain::singleton(Group::Q(), Simplex(1, {{Rat(0)}, {Rat(1)}}), Rat(1, 2));
    Chain mixed = cartesian_product(seg, qseg);
    CHECK(mixed.group() == Group::Q());
    CHECK(mixed.mass().value.rational_part() == Rat(1, 2));
    CHECK_THROWS_AS(cartesian_product(qseg, seg), GroupMismatch);
}

TEST_CASE("product boundary rule for a 2-cell first factor") {
    Chain sq = Chain::singleton(kZ, Simplex(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}}));
    Chain seg = Chain::singleton(kZ, Simplex(1, {{Rat(0)}, {Rat(2)}}));
    Chain prod = cartesian_product(sq, seg);
    CHECK(prod.ambient() == 3);
    CHECK(prod.dim() == 3);
    Chain lhs = prod.boundary();
    Chain rhs = cartesian_product(sq.boundary(), seg) +
                cartesian_product(sq, seg.boundary()); // (-1)^2 = +1
    // triangulations of the two sides may differ; equality mod subdivision
    CHECK(chain_is_null(lhs - rhs));
}

TEST_CASE("projection pushforward") {
    Chain diag = Chain::singleton(kZ, seg2(0, 0, 1, 1));
    Chain proj = diag.push_forward_projection({0});
    CHECK(proj == Chain::singleton(kZ, seg2(0, 0, 1, 0)));
    CHECK(proj.mass().value.rational_part() == 1);

    Chain vert = Chain::singleton(kZ, seg2(Rat(1, 2), 0, Rat(1, 2), 1));
    CHECK(vert.push_forward_projection({0}).is_empty());

    // commutes with boundary modulo subdivision
    Chain c = Chain::singleton(kZ, tri2(0, 0, 2, 1, Rat(1, 3), 3));
    CHECK(chain_is_null(c.push_forward_projection({0}).boundary() -
                        c.boundary().push_forward_projection({0})));
    Chain planar = Chain::singleton(kZ, tri2(0, 0, 1, 0, 0, 1));
    CHECK(planar.push_forward_projection({0, 1}).boundary() ==
          planar.boundary().push_forward_projection({0, 1}));
}

TEST_CASE("group and dimension guards") {
    Chain a = Chain::singleton(kZ, seg2(0, 0, 1, 0));
    Chain b = Chain::singleton(Group::Q(), seg2(0, 0, 1, 1), Rat(1, 2));
    CHECK_THROWS_AS(a + b, GroupMismatch);
    Chain pt = Chain::singleton(kZ, Simplex(2, {{Rat(0), Rat(0)}}));
    CHECK_THROWS_AS(a + pt, DimensionMismatch);
}

TEST_CASE("json round trip") {
    Chain c = Chain::singleton(Group::Zmod(5), tri2(0, 0, Rat(22, 7), 1, Rat(-1, 3), 2), 3) +
              Chain::singleton(Group::Zmod(5), tri2(5, 5, 6, 5, 5, 6), 4);
    Chain back = Chain::from_json(c.to_json());
    CHECK(back == c);
    CHECK(back.to_json() == c.to_json());

    Chain empty = Chain::zero(3, 2, Group::Q());
    CHECK(Chain::from_json(empty.to_json()) == empty);
}
