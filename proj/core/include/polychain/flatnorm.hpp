#pragma once

#include <map>
#include <string>

#include "polychain/cubical.hpp"
#include "polychain/lp.hpp"
#include "polychain/radical.hpp"

namespace polychain {

// Result of a flat-norm linear program.  Values are complex-relative: the
// optimum over chains supported on the given complex.  `boundary_touched`
// flags optima whose witnesses meet the boundary of the complex region, a
// hint that the complex may be too small for the free-space value (re-solve
// on a padded complex to confirm).
struct LPResult {
    Rat value = 0;
    std::map<std::string, GridChain> witness;
    RatVec dual;                  // row-indexed certificate
    bool certified = false;       // exact duality + complementary slackness
    bool boundary_touched = false;
    long pivots = 0;
};

// Whitney flat norm on the complex: minimize mass(q) + mass(r) over
// q = g - B r, coefficients relaxed to Q and split into +/- parts.
LPResult flat_norm(const GridChain& g);

// Tensor flat norm of a homogeneous type (k1,k2) grid chain: minimize the
// total mass of (Q00, Q10, Q01, Q11) subject to
//   g = Q00 + B1 Q10 + B2 Q01 + B1 B2 Q11.
// TypeMismatch when the support is not purely of the requested type.
LPResult tensor_flat_norm(const GridChain& g, TypeIndex type);

// Move a grid chain to a compatible complex (same spacing, grid-aligned
// origin shift); cells falling outside the target raise NotGridAligned.
GridChain transplant(const GridChain& g, std::shared_ptr<const CubicalComplex> to);

// Mass versus cross mass: M(A) <= M^x(A) <= sqrt(m) M(A) with
// m = 1 + min(k, n1, n2) when k <= max(n1, n2), else 1 + n - k.
struct CrossMassBounds {
    long m = 1;
    CertifiedReal constant; // sqrt(m)
    CertifiedReal lower;    // mass
    CertifiedReal upper;    // sqrt(m) * mass
    MassReport mass;
};

CrossMassBounds cross_mass_bounds(const Chain& c, int n1);

} // namespace polychain
