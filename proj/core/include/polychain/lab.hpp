#pragma once

#include "polychain/chain.hpp"
#include "polychain/slicing.hpp"
#include "polychain/tensor.hpp"

#include <utility>
#include <vector>

namespace polychain {

// ---------------------------------------------------------------------------
// Dyadic staircase chains.
//
// The measure nu_J = (1/2) sum_{j=0..J} 4^{-j} sum_{i=1..2^j} delta_{i/2^j}
// has atoms at every dyadic point m/2^J in (0,1].  Its left-continuous
// cumulative function f(x) = nu_J((-inf, x)) is a staircase; A1 collects the
// horizontal graph segments (each of multiplicity one) and A2 the vertical
// jump fillers {x} x [f(x), f(x+)], including the jump at x = 1.  All
// ordinates are exact rationals obtained by direct summation of the atom
// weights, so boundary(A1 + A2) telescopes to the two endpoint atoms.
// ---------------------------------------------------------------------------

struct StaircaseSpec {
    int level = 0; // truncation depth J, 0 <= J <= 16
};

struct StaircasePair {
    Chain a1; // horizontal segments, 2^J of them, total mass 1
    Chain a2; // vertical jump fillers, one per atom
};

StaircasePair build_staircase(const StaircaseSpec& spec);

// mass(boundary(A1)) per truncation level J = 0..j_max.  The horizontal
// segments sit at pairwise distinct ordinates, so no endpoint atoms cancel
// and the value is exactly 2 * 2^J: strictly increasing and unbounded.
struct GrowthRow {
    int level = 0;
    Rat boundary_mass;
};

std::vector<GrowthRow> staircase_boundary_growth(int j_max);

// ---------------------------------------------------------------------------
// Theta-graph cycle in R^4 = R^2 x R^2.
//
// N >= 3 broken lines ("legs") of a common length ell join S = (0,0) to
// N_pt = (1,0) in the first factor plane, pairwise meeting only at S and
// N_pt.  With C'_i the copy of leg i in the second factor, the tensor chain
//   A = sum_i C_i x (C'_i - C'_{i+1 mod N})
// is a (1,1) cycle of mass 2 N ell^2 admitting no cheap decomposition into
// tensor products of cycles.
// ---------------------------------------------------------------------------

struct ThetaGraphSpec {
    std::vector<std::vector<Point>> paths; // vertex lists in Q^2, S to N_pt
    CertifiedReal common_length;           // shared leg length ell

    Json to_json() const;
    static ThetaGraphSpec from_json(const Json& j);
};

// Exact validation: every path runs from (0,0) to (1,0) with no degenerate
// edge, every path length equals common_length, and supports of distinct
// paths intersect only at the two junctions.  Throws SpecInvalid with a
// witness description otherwise.
void validate_theta_spec(const ThetaGraphSpec& spec);

// Frozen, validated default specs with rational leg length 5/4; available
// for 3 and 4 legs.
ThetaGraphSpec default_theta_spec(int legs);

struct CounterexampleReport {
    MassReport mass;            // of embed(A), certified representation
    CertifiedReal expected_mass; // 2 N ell^2
    bool mass_matches = false;
    bool boundary_zero = false; // boundary(embed(A)) vanishes exactly
    SplitVerdict split = SplitVerdict::Split; // type (1,1) splitting test
    // j-vanishing verdicts for every off-type (k1', k2') != (1,1) at k = 2.
    std::vector<std::pair<TypeIndex, VanishVerdict>> off_type;
};

struct CounterexampleResult {
    TensorChain a;
    CounterexampleReport report;
};

CounterexampleResult build_counterexample(const ThetaGraphSpec& spec);

// ---------------------------------------------------------------------------
// Lower-bound search for tensor-product decompositions of the theta cycle.
//
// A decomposition A = sum_j A^1_j x A^2_j into cycles induces, at a generic
// slice, integer leg multiplicities mu_j, mu'_j in Z^N with zero sum and
//   sum_j mu_j mu'_j^T = T,  T = I - (cyclic shift),
// and costs sum_j |mu_j|_1 |mu'_j|_1.  The search enumerates all such
// systems with at most max_terms terms and entries bounded by `bound`,
// exactly and deterministically (branch and bound with rank and l1 lower
// bounds), returning the minimal cost.  Zero-sum integer vectors have even
// l1 norm, so every cost is a multiple of 4.
// ---------------------------------------------------------------------------

struct SearchTerm {
    std::vector<long> m;  // first-factor multiplicities
    std::vector<long> mp; // second-factor multiplicities
};

struct SearchResult {
    bool found = false;
    long min_found = 0; // minimal sum |mu|_1 * |mu'|_1 when found
    std::vector<SearchTerm> witness;
    bool parity_even = true; // all enumerated factor norms were even
    long long nodes = 0;     // search nodes explored
};

SearchResult decomposition_lower_bound_search(int legs, int max_terms, int bound,
                                              long long node_budget = 50000000);

// ---------------------------------------------------------------------------
// Hyperplane split probe: for each level s, whether the slice of c by
// {x_axis = s} vanishes and whether the mass of the boundary is additive
// across the half-spaces, M(bd(c|{x<=s})) + M(bd(c|{x>=s})) = M(bd c) --
// the split-without-new-boundary condition.  Levels hitting a vertex
// coordinate are rejected with NonGenericLevel.
// ---------------------------------------------------------------------------

struct SplitProbeRow {
    Rat level;
    bool slice_zero = false;
    bool boundary_additive = false;
};

std::vector<SplitProbeRow> hyperplane_split_probe(const Chain& c, int axis,
                                                  const std::vector<Rat>& levels);

} // namespace polychain
