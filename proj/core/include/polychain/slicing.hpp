#pragma once

#include "polychain/chain.hpp"

#include <optional>
#include <vector>

namespace polychain {

// Slice specification: ascending 0-based axes gamma and the base point
// coordinates along those axes.
struct SliceSpec {
    std::vector<int> gamma;
    RatVec at;
};

struct TypeIndex {
    int k1 = 0;
    int k2 = 0;
    bool operator==(const TypeIndex& o) const { return k1 == o.k1 && k2 == o.k2; }
    bool operator<(const TypeIndex& o) const { return k1 != o.k1 ? k1 < o.k1 : k2 < o.k2; }
};

// Sl_gamma^x c = pi_#(c intersected with the affine slice plane); the sliced
// coordinates are zeroed by the projection.  Orientation: each single-axis
// cut carries the new-boundary-face orientation <e_axis ^ xi_q, xi_p> > 0
// twisted by (-1)^(dim-1), which makes boundary and slice commute plainly
// (boundary(Sl c) = Sl(boundary c)) in every dimension; gamma is iterated in
// ascending order.  Throws NonGenericPoint when the base point is not
// generic.
Chain slice(const Chain& c, const SliceSpec& spec);

// Unprojected single-axis slice: the intersection chain c with {x_axis =
// level}, living inside the hyperplane.  At generic levels it equals the
// half-space boundary defect
//   boundary(c restricted to {x_axis <= level})
//     - boundary(c) restricted to {x_axis <= level}.
Chain hyperplane_intersection(const Chain& c, int axis, const Rat& level);

// Direct evaluation for |gamma| = dim(c): signed sum of preimage points with
// per-cell sign (-1)^(k(k-1)/2) * sign(det M_gamma), matching the iterated
// slice().  Returns nullopt when the sample point is non-generic (hits a
// cell boundary or the projected hull of a degenerate-projection cell).
// Used as an independent cross-check of the iterated route and by the
// sampling fallbacks.
std::optional<Chain> zero_dim_slice(const Chain& c, const std::vector<int>& gamma,
                                    const RatVec& at);

// Upper bound for the integral of slice masses: per cell
// |g| (1/k!) sqrt(sum over k-supersets delta of gamma of det(M_delta)^2).
CertifiedReal coarea_bound(const Chain& c, const std::vector<int>& gamma);

enum class VanishVerdict { Vanishes, NonzeroAt, Unknown };

struct VanishResult {
    VanishVerdict verdict = VanishVerdict::Vanishes;
    std::optional<RatVec> witness;              // slice point where mass survives
    std::optional<std::vector<int>> witness_gamma; // set by j_vanishing_test
    long samples = 0;                           // sampling fallback only
};

// Decides whether the gamma-slices (|gamma| = dim c) vanish for almost every
// base point.  Exact for dim <= 2 via arrangement decompositions; for higher
// dimensions a deterministic sample grid yields NonzeroAt or Unknown.
VanishResult slices_vanish_ae(const Chain& c, const std::vector<int>& gamma);

enum class SplitVerdict { Split, NotSplit, NeedsCertifiedRep };

struct SplitResult {
    SplitVerdict verdict = SplitVerdict::Split;
    std::optional<int> witness_cell;
    std::optional<std::vector<int>> witness_gamma;
};

// Tests whether the chain is of type (k1, k2) with respect to the coordinate
// split n = n1 + (n - n1): every cell's tangent plane must split as a product
// with factor ranks exactly (k1, k2).  Requires a certified representation.
SplitResult splitting_test(const Chain& c, int k1, int k2, int n1);

// Aggregates slices_vanish_ae over every gamma with |gamma ^ alpha| = k1' and
// |gamma \ alpha| = k2' (alpha = first n1 axes).
VanishResult j_vanishing_test(const Chain& c, int k1p, int k2p, int n1);

} // namespace polychain
