#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "polychain/cubical.hpp"
#include "polychain/errors.hpp"

#include <memory>

using namespace polychain;

namespace {

const Group kZ = Group::Z();

std::shared_ptr<const CubicalComplex> cx2(int nx, int ny, Rat h = 1, Point o = {0, 0},
                                          int n1 = 1) {
    return std::make_shared<CubicalComplex>(std::move(o), h, std::vector<int>{nx, ny}, n1);
}

Simplex pt2(const Rat& a, const Rat& b) { return Simplex(2, {{a, b}}); }
Simplex seg2(Rat ax, Rat ay, Rat bx, Rat by) {
    return Simplex(2, {{ax, ay}, {bx, by}});
}
Simplex tri2(Rat ax, Rat ay, Rat bx, Rat by, Rat cx, Rat cy) {
    return Simplex(2, {{ax, ay}, {bx, by}, {cx, cy}});
}

Chain unit_square() {
    return Chain::make(2, 2, kZ,
                       {{tri2(0, 0, 1, 0, 1, 1), GVal::one(kZ)},
                        {tri2(0, 0, 1, 1, 0, 1), GVal::one(kZ)}});
}

// Compose two boundary maps and assert the result vanishes identically.
template <typename F, typename G>
void check_compose_zero(const CubicalComplex& cx, int k, F first, G second, int sign2 = 0) {
    // sign2 == 0: second(first(e_c)) must vanish for every k-cell c.
    // sign2 == 1: first/second anticommute: f(g(x)) + g(f(x)) == 0.
    long count = cx.cell_count(k);
    for (long id = 0; id < count; ++id) {
        std::map<long, int> acc;
        auto add = [&](long fid, int s) {
            acc[fid] += s;
            if (acc[fid] == 0)
                acc.erase(fid);
        };
        for (const auto& [fid, s1] : first(k, id))
            for (const auto& [gid, s2] : second(k - 1, fid))
                add(gid, s1 * s2);
        if (sign2 == 1)
            for (const auto& [fid, s1] : second(k, id))
                for (const auto& [gid, s2] : first(k - 1, fid))
                    add(gid, s1 * s2);
        CHECK(acc.empty());
    }
}

} // namespace

TEST_CASE("cell counting and id round trips") {
    CubicalComplex c({0, 0}, 1, {2, 2}, 1);
    CHECK(c.cell_count(0) == 9);
    CHECK(c.cell_count(1) == 12);
    CHECK(c.cell_count(2) == 4);
    CHECK(c.cell_count(3) == 0);
    for (int k = 0; k <= 2; ++k)
        for (long id = 0; id < c.cell_count(k); ++id)
            CHECK(c.cell_id(c.cell(k, id)) == id);
    CubicalComplex c3({0, 0, 0}, Rat(1, 2), {2, 1, 3}, 2);
    for (int k = 0; k <= 3; ++k)
        for (long id = 0; id < c3.cell_count(k); ++id)
            CHECK(c3.cell_id(c3.cell(k, id)) == id);
    CHECK_THROWS_AS(CubicalComplex({0}, 0, {1}, 0), UsageError);
    CHECK_THROWS_AS(CubicalComplex({0}, 1, {0}, 0), UsageError);
    CHECK_THROWS_AS(CubicalComplex({0}, 1, {1}, 2), UsageError);
}

TEST_CASE("cell geometry") {
    CubicalComplex c({-1, Rat(1, 2)}, Rat(1, 2), {2, 2}, 1);
    GridCell sq{{0, 1}, {1, 0}};
    CHECK(c.corner(sq) == Point{Rat(-1, 2), Rat(1, 2)});
    CHECK(c.cell_volume(2) == Rat(1, 4));
    CHECK(c.cell_type(sq) == TypeIndex{1, 1});
    CHECK(c.cell_type(GridCell{{0}, {0, 1}}) == TypeIndex{1, 0});
    CHECK(c.cell_type(GridCell{{1}, {0, 1}}) == TypeIndex{0, 1});
    // Triangulated cell reproduces the square's area and boundary.
    auto tris = c.cell_simplices(sq);
    CHECK(tris.size() == 2);
    std::vector<CellTerm> terms;
    for (const auto& [s, sign] : tris)
        terms.push_back({s, GVal(kZ, sign)});
    Chain emb = Chain::make(2, 2, kZ, terms);
    CHECK(emb.mass().value.rational_part() == Rat(1, 4));
    CHECK(c.touches_boundary(sq));
    CubicalComplex big({0, 0}, 1, {3, 3}, 1);
    CHECK(!big.touches_boundary(GridCell{{0, 1}, {1, 1}}));
    CHECK(big.touches_boundary(GridCell{{0, 1}, {0, 1}}));
    CHECK(!big.touches_boundary(GridCell{{0}, {1, 1}}));
    CHECK(big.touches_boundary(GridCell{{0}, {1, 0}}));
}

TEST_CASE("boundary matrices square to zero and anticommute") {
    std::vector<CubicalComplex> complexes;
    complexes.emplace_back(Point{0, 0}, 1, std::vector<int>{2, 2}, 1);
    complexes.emplace_back(Point{0, 0, 0}, Rat(1, 2), std::vector<int>{2, 2, 1}, 1);
    complexes.emplace_back(Point{0, 0, 0, 0}, 1, std::vector<int>{1, 2, 1, 2}, 2);
    for (const auto& cx : complexes) {
        auto full = [&](int k, long id) { return cx.boundary(k, id); };
        auto b1 = [&](int k, long id) { return cx.boundary1(k, id); };
        auto b2 = [&](int k, long id) { return cx.boundary2(k, id); };
        for (int k = 2; k <= cx.n(); ++k) {
            check_compose_zero(cx, k, full, full);
            check_compose_zero(cx, k, b1, b1);
            check_compose_zero(cx, k, b2, b2);
            check_compose_zero(cx, k, b1, b2, 1);
        }
        // B = B1 + B2 cellwise.
        for (int k = 1; k <= cx.n(); ++k)
            for (long id = 0; id < cx.cell_count(k); ++id) {
                std::map<long, int> acc;
                for (const auto& [fid, s] : cx.boundary1(k, id))
                    acc[fid] += s;
                for (const auto& [fid, s] : cx.boundary2(k, id))
                    acc[fid] += s;
                auto whole = cx.boundary(k, id);
                CHECK(whole.size() == 2 * static_cast<size_t>(k));
                for (const auto& [fid, s] : whole) {
                    CHECK(acc[fid] == s);
                    acc.erase(fid);
                }
                CHECK(acc.empty());
            }
    }
}

TEST_CASE("grid boundary matches simplicial boundary") {
    auto cx = cx2(2, 2, Rat(1, 2));
    GridChain g = grid_zero(cx, 2, kZ);
    for (size_t id = 0; id < g.coeffs.size(); ++id)
        g.coeffs[id] = Rat(static_cast<long>(id) + 1);
    Chain emb = grid_embed(g);
    GridChain bg = grid_boundary(g);
    CHECK(chain_is_null(grid_embed(bg) - emb.boundary()));
    // Partial boundaries recombine.
    GridChain b1 = grid_boundary1(g), b2 = grid_boundary2(g);
    for (size_t id = 0; id < bg.coeffs.size(); ++id)
        CHECK(bg.coeffs[id] == b1.coeffs[id] + b2.coeffs[id]);
    CHECK_THROWS_AS(grid_boundary(grid_zero(cx, 0, kZ)), ZeroDimensional);
}

TEST_CASE("rasterize four corners") {
    auto cx = cx2(3, 3, 1, {-1, -1});
    Chain corners = Chain::make(2, 0, kZ,
                                {{pt2(0, 0), GVal::one(kZ)},
                                 {pt2(1, 1), GVal::one(kZ)},
                                 {pt2(1, 0), -GVal::one(kZ)},
                                 {pt2(0, 1), -GVal::one(kZ)}});
    GridChain g = rasterize(cx, corners);
    int nonzero = 0;
    for (const auto& v : g.coeffs)
        if (v != 0)
            ++nonzero;
    CHECK(nonzero == 4);
    CHECK(grid_mass(g) == 4);
    CHECK(grid_embed(g) == corners);
    // Off-grid points do not rasterize.
    Chain off = Chain::singleton(kZ, pt2(Rat(1, 3), 0));
    CHECK_THROWS_AS(rasterize(cx, off), NotGridAligned);
}

TEST_CASE("rasterize subdivides squares") {
    auto cx = cx2(2, 2, Rat(1, 2));
    GridChain g = rasterize(cx, unit_square());
    int nonzero = 0;
    for (const auto& v : g.coeffs) {
        if (v != 0) {
            ++nonzero;
            CHECK(v == 1);
        }
    }
    CHECK(nonzero == 4);
    CHECK(grid_mass(g) == 1);
    CHECK(chain_is_null(grid_embed(g) - unit_square()));
    // On the coarse grid the square is a single cell even though its
    // triangulation runs a diagonal through the cell center.
    auto coarse = cx2(1, 1);
    GridChain g1 = rasterize(coarse, unit_square());
    CHECK(g1.coeffs == RatVec{1});
    // Scaled and reversed chains follow the coefficients.
    GridChain g2 = rasterize(coarse, -unit_square().scaled(3));
    CHECK(g2.coeffs == RatVec{-3});
}

TEST_CASE("rasterize segments and misaligned input") {
    auto cx = cx2(2, 2, Rat(1, 2));
    // A multiplicity -2 horizontal segment across the bottom.
    Chain seg = Chain::singleton(kZ, seg2(0, 0, 1, 0), -2);
    GridChain g = rasterize(cx, seg);
    CHECK(grid_mass(g) == 2);
    CHECK(chain_is_null(grid_embed(g) - seg));
    // Orientation flips the sign.
    GridChain gr = rasterize(cx, Chain::singleton(kZ, seg2(1, 0, 0, 0)));
    Rat total = 0;
    for (const auto& v : gr.coeffs)
        total += v;
    CHECK(total == -2); // two edge cells, coefficient -1 each
    CHECK(grid_mass(gr) == 1);
    // Diagonal segments are not grid aligned.
    CHECK_THROWS_AS(rasterize(cx, Chain::singleton(kZ, seg2(0, 0, 1, 1))),
                    NotGridAligned);
    // A segment stopping between grid points is caught by verification.
    auto coarse = cx2(1, 1);
    CHECK_THROWS_AS(rasterize(coarse, Chain::singleton(kZ, seg2(0, 0, Rat(1, 2), 0))),
                    NotGridAligned);
    // Fractional coefficients over Q rasterize fine.
    Chain half = Chain::singleton(Group::Q(), seg2(0, 0, 1, 0), Rat(1, 2));
    GridChain gh = rasterize(cx, half);
    CHECK(grid_mass(gh) == Rat(1, 2));
    CHECK(chain_is_null(grid_embed(gh) - half));
}

TEST_CASE("padding preserves rasterization") {
    auto cx = cx2(1, 1);
    auto padded = std::make_shared<CubicalComplex>(cx->padded(2));
    CHECK(padded->extents() == std::vector<int>{5, 5});
    CHECK(padded->origin() == Point{-2, -2});
    GridChain a = rasterize(cx, unit_square());
    GridChain b = rasterize(padded, unit_square());
    CHECK(grid_mass(a) == grid_mass(b));
    CHECK(chain_is_null(grid_embed(a) - grid_embed(b)));
}

TEST_CASE("rasterize respects groups") {
    auto cx = cx2(1, 1);
    const Group z3 = Group::Zmod(3);
    Chain doubled = Chain::make(2, 2, z3,
                                {{tri2(0, 0, 1, 0, 1, 1), GVal(z3, 2)},
                                 {tri2(0, 0, 1, 1, 0, 1), GVal(z3, 2)}});
    GridChain g = rasterize(cx, doubled);
    CHECK(g.coeffs == RatVec{2});
    CHECK(grid_mass(g) == 1); // |2 mod 3| = 1
    CHECK(chain_is_null(grid_embed(g) - doubled));
}
