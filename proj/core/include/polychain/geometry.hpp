#pragma once

#include "polychain/jsonio.hpp"
#include "polychain/radical.hpp"
#include "polychain/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace polychain {

using Point = RatVec;

int point_cmp(const Point& a, const Point& b);

// An oriented k-simplex in R^n given by an ordered list of k+1 rational
// vertices.  Swapping two vertices negates the orientation.
struct Simplex {
    int ambient = 0;
    std::vector<Point> verts;

    Simplex() = default;
    Simplex(int n, std::vector<Point> vs) : ambient(n), verts(std::move(vs)) {}
    int dim() const { return static_cast<int>(verts.size()) - 1; }

    // Columns are edge vectors v_i - v_0, as an n x k matrix.
    RatMat edge_matrix() const;
    bool is_degenerate() const;
    bool operator==(const Simplex& o) const;
};

int simplex_cmp(const Simplex& a, const Simplex& b);

// Faces with alternating signs: (-1)^i [v_0 .. v_i-hat .. v_k].
// Throws ZeroDimensional for points.
std::vector<std::pair<Simplex, int>> boundary_faces(const Simplex& s);

// Exact squared k-volume det(E^T E)/(k!)^2; 1 for points.
Rat squared_volume(const Simplex& s);
// Exact k-volume as a certified radical value.
CertifiedReal volume(const Simplex& s);

// Pluecker coordinates of the orienting k-vector: for every ascending
// k-subset gamma of axes, the k x k minor of the edge matrix on rows gamma.
std::map<std::vector<int>, Rat> pluecker(const Simplex& s);

// <wedge of columns of A, wedge of columns of B> = sum over ascending
// k-subsets gamma of det A[gamma] * det B[gamma].  Both matrices n x k.
Rat wedge_pairing(const RatMat& a, const RatMat& b);

// All ascending k-subsets of {0..n-1}.
std::vector<std::vector<int>> k_subsets(int n, int k);

// Intersection with the hyperplane {x_axis = level}: a list of coherently
// sign-oriented (k-1)-cells lying inside the hyperplane.  The sign of each
// piece q is sign(<e_axis ^ zeta_q, zeta_s>) per the exterior slice
// orientation.  Throws NonGenericLevel when a vertex lies on the plane,
// ZeroDimensional for points.
std::vector<std::pair<Simplex, int>> slice_by_hyperplane(const Simplex& s, int axis,
                                                         const Rat& level);

// Restriction to a closed half-space {x_axis >= level} (upper = true) or
// {x_axis <= level}: a disjoint cover of the clipped region by coherently
// oriented k-cells, all with sign +1 relative to s.  Vertices on the plane
// are fine; only a simplex lying entirely inside the plane is rejected
// (degenerate pieces are dropped).
std::vector<Simplex> clip_halfspace(const Simplex& s, int axis, const Rat& level, bool upper);

enum class Location { Outside, Boundary, Inside };
// Exact point location relative to the closed simplex.
Location locate_point(const Simplex& s, const Point& x);

// Affine hull in normal form: pairs (N, d) with N in reduced row echelon
// form so that hull = {x : Nx = d}; canonical per hull.
struct AffineHull {
    RatMat normals; // (n - k) x n, RREF
    RatVec offsets;
    bool operator==(const AffineHull& o) const { return normals == o.normals && offsets == o.offsets; }
    bool operator<(const AffineHull& o) const;
};
AffineHull affine_hull(const Simplex& s);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j, int expected_dim = -1);
Json simplex_to_json(const Simplex& s);
Simplex simplex_from_json(const Json& j, int ambient);

} // namespace polychain
