#pragma once

#include <optional>
#include <vector>

#include "polychain/rational.hpp"

namespace polychain {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPSolution {
    LPStatus status = LPStatus::Optimal;
    Rat value = 0;
    RatVec x; // primal solution, one entry per column
    RatVec y; // dual solution, one entry per row (zero on redundant rows)
    long pivots = 0;
};

// Minimize c^T x subject to A x = b, x >= 0, everything exact-rational.
// Dense tableau simplex, Bland's rule (deterministic, cycle-free); phase 1
// with artificial variables unless an obvious identity basis is supplied.
LPSolution solve_lp(RatMat a, RatVec b, RatVec c);

// Same, but start phase 2 directly from a feasible basis: basis[i] is the
// column basic in row i and the corresponding submatrix must be the identity
// after sign normalization of b (caller guarantees A[i][basis[i]] == 1,
// A[r][basis[i]] == 0 for r != i, and b >= 0).
LPSolution solve_lp_from_basis(RatMat a, RatVec b, RatVec c, std::vector<int> basis);

// From-scratch optimality check: primal feasibility, dual feasibility
// (A^T y <= c), strong duality (c^T x == b^T y) and complementary slackness.
bool lp_certificate_ok(const RatMat& a, const RatVec& b, const RatVec& c,
                       const LPSolution& s);

// Exhaustive enumeration of basic solutions; the optimum over all feasible
// vertices, for cross-checking small instances.  nullopt when infeasible.
std::optional<Rat> lp_enumerate(const RatMat& a, const RatVec& b, const RatVec& c);

} // namespace polychain
