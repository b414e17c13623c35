#pragma once

#include "polychain/geometry.hpp"
#include "polychain/group.hpp"
#include "polychain/jsonio.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polychain {

struct CellTerm {
    Simplex cell;
    GVal coeff;
};

struct MassTermInfo {
    Rat coeff_norm;
    Rat squared_volume;
};

// Mass of a chain at a given polyhedral representation.  The value is the
// exact radical sum of |g_i| * vol(p_i); it equals the mass of the chain
// whenever the representation is certified (pairwise overlaps of measure
// zero).
struct MassReport {
    CertifiedReal value;
    std::vector<MassTermInfo> terms;
    bool certified = false;        // overlap certificate established
    bool overlap_unknown = false;  // certifier could not decide some pair
    std::optional<std::pair<int, int>> overlap_witness;
    std::pair<double, double> interval{0.0, 0.0};
};

// Axis-aligned box, per-axis optional closed bounds.
using Box = std::vector<std::pair<std::optional<Rat>, std::optional<Rat>>>;

// A polyhedral G-chain: a formal sum of coefficient-weighted oriented
// simplices, kept in canonical form (vertices of each cell sorted with the
// permutation parity folded into the coefficient, degenerate cells dropped,
// equal cells merged, terms sorted).  Subdivision relations are deliberately
// not normalized away.
class Chain {
public:
    Chain() = default;
    static Chain make(int ambient, int dim, const Group& g, std::vector<CellTerm> terms);
    static Chain zero(int ambient, int dim, const Group& g);
    // Convenience: unit-coefficient chain on one cell.
    static Chain singleton(const Group& g, const Simplex& cell, const Rat& coeff = 1);

    int ambient() const { return ambient_; }
    int dim() const { return dim_; }
    const Group& group() const { return group_; }
    const std::vector<CellTerm>& terms() const { return terms_; }
    bool is_empty() const { return terms_.empty(); }

    Chain operator+(const Chain& o) const;
    Chain operator-(const Chain& o) const;
    Chain operator-() const;
    Chain scaled(const mpz_class& n) const;
    bool operator==(const Chain& o) const;

    Chain boundary() const;
    MassReport mass(bool certify_overlap = true) const;
    Chain restrict_box(const Box& box) const;
    // Projection onto the coordinate subspace spanned by target_axes: the
    // complementary coordinates are zeroed (pushforward under the orthogonal
    // projection); cells collapsed to lower dimension drop out.
    Chain push_forward_projection(const std::vector<int>& target_axes) const;

    Json to_json() const;
    static Chain from_json(const Json& j);

private:
    int ambient_ = 0;
    int dim_ = 0;
    Group group_ = Group::Z();
    std::vector<CellTerm> terms_;
};

// Cartesian product: a must be an integer chain; the product carries b's
// group.  Cells are products triangulated by staircase shuffles, coherently
// oriented so that the product orientation is xi_a ^ xi_b.
Chain cartesian_product(const Chain& a, const Chain& b);

// Restriction of a chain to the closed half-space {x_axis <= level} (lower)
// or {x_axis >= level}.
Chain restrict_halfspace(const Chain& c, int axis, const Rat& level, bool upper);

// Exact test for the chain being zero modulo subdivision (multiplicity
// function vanishes a.e.).  Complete for cells of dimension <= 2 in any
// ambient dimension; for higher-dimensional cells falls back to canonical
// emptiness, a sufficient condition.
bool chain_is_null(const Chain& c);

// Positive-measure overlap certificate used by mass(): decides exactly for
// cell dimension <= 2, sets unknown for higher dimensions with equal hulls.
bool cells_overlap_positively(const Simplex& a, const Simplex& b, bool& unknown);

} // namespace polychain
