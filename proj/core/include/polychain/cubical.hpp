#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "polychain/chain.hpp"
#include "polychain/slicing.hpp"

namespace polychain {

// A k-cell of the grid: the ascending set of axes it extends along and a
// per-axis index (0..N_i-1 on extended axes, 0..N_i on the others).
struct GridCell {
    std::vector<int> dirs;
    std::vector<int> idx;
};

// Uniform cubical complex over [origin, origin + h*extents], with a factor
// splitting after axis n1 for the partial boundary operators.
//
// Boundary signs: for a cell with directions g_0 < ... < g_{k-1}, the face
// pair in direction g_t contributes (-1)^t (upper - lower).  B1 keeps the
// terms with g_t < n1, B2 the rest; because the alpha directions precede the
// others, B2 automatically carries the Koszul factor (-1)^{k1} relative to
// the bare second-factor boundary, so B = B1 + B2, B1^2 = B2^2 = 0 and
// B1 B2 = -B2 B1 hold on the nose.
class CubicalComplex {
public:
    CubicalComplex(Point origin, Rat spacing, std::vector<int> extents, int n1);

    int n() const { return static_cast<int>(extents_.size()); }
    int n1() const { return n1_; }
    const Point& origin() const { return origin_; }
    const Rat& spacing() const { return h_; }
    const std::vector<int>& extents() const { return extents_; }

    long cell_count(int k) const;
    GridCell cell(int k, long id) const;
    long cell_id(const GridCell& c) const; // validates ranges
    TypeIndex cell_type(const GridCell& c) const;

    // Sparse boundary rows: faces of cell id in dimension k as (face id, sign).
    std::vector<std::pair<long, int>> boundary(int k, long id) const;
    std::vector<std::pair<long, int>> boundary1(int k, long id) const;
    std::vector<std::pair<long, int>> boundary2(int k, long id) const;

    Point corner(const GridCell& c) const; // lower corner coordinates
    Rat cell_volume(int k) const;          // h^k
    bool touches_boundary(const GridCell& c) const;

    // Staircase triangulation of the closed cell, orientation e_{g_0} ^ ...
    std::vector<std::pair<Simplex, int>> cell_simplices(const GridCell& c) const;

    // Same region enlarged by `pad` cells on every side of every axis.
    CubicalComplex padded(int pad) const;

    bool operator==(const CubicalComplex& o) const {
        return origin_ == o.origin_ && h_ == o.h_ && extents_ == o.extents_ &&
               n1_ == o.n1_;
    }

private:
    std::vector<std::pair<long, int>> boundary_impl(int k, long id, int which) const;
    Point origin_;
    Rat h_ = 1;
    std::vector<int> extents_;
    int n1_ = 0;
};

// A grid chain: rational coefficients on the k-cells of a complex.  The group
// tags what the coefficients mean for embed-back and mass.
struct GridChain {
    std::shared_ptr<const CubicalComplex> cx;
    int k = 0;
    Group group = Group::Z();
    RatVec coeffs;
};

GridChain grid_zero(std::shared_ptr<const CubicalComplex> cx, int k, const Group& g);

// Snap a simplicial chain (dim <= 2) onto the grid.  Each grid cell's
// coefficient is read off by signed multiplicity sampling at generic interior
// points, and the result is verified exactly: embed-back minus the input must
// be null, otherwise NotGridAligned.
GridChain rasterize(std::shared_ptr<const CubicalComplex> cx, const Chain& c);

Chain grid_embed(const GridChain& g);
Rat grid_mass(const GridChain& g); // h^k * sum of coefficient norms
GridChain grid_boundary(const GridChain& g);
GridChain grid_boundary1(const GridChain& g);
GridChain grid_boundary2(const GridChain& g);

} // namespace polychain
