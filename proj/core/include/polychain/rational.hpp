#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace polychain {

using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>; // row major

// Parses "p/q", plain integers and decimal literals ("0.3" -> 3/10).
Rat rat_from_string(const std::string& s);
// Canonical form "p" or "p/q" with q > 1.
std::string rat_to_string(const Rat& r);
double rat_to_double(const Rat& r);
// Outward-rounded double enclosure of an exact rational.
std::pair<double, double> rat_to_interval(const Rat& r);
mpz_class rat_floor(const Rat& r);

int sgn(const Rat& r);

RatMat mat_mul(const RatMat& a, const RatMat& b);
RatVec mat_vec(const RatMat& a, const RatVec& x);
RatMat mat_transpose(const RatMat& a);
int mat_rank(RatMat a);
Rat mat_det(RatMat a);
// Solves a square system exactly; nullopt when singular.
std::optional<RatVec> solve_square(RatMat a, RatVec b);
// Least structured solve: any solution of Ax = b (possibly underdetermined);
// nullopt when inconsistent.
std::optional<RatVec> solve_any(RatMat a, RatVec b);
// Reduced row echelon form in place; returns pivot column indices.
std::vector<int> rref(RatMat& a);

} // namespace polychain
