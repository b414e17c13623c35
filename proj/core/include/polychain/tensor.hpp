#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "polychain/chain.hpp"
#include "polychain/slicing.hpp"

namespace polychain {

// One term g * (p1 x p2) of a tensor chain.  p1 lives in the first factor
// space (ambient n1), p2 in the second (ambient n2).  Vertices of both cells
// are kept sorted; orientation parity is folded into the coefficient.
struct TensorTerm {
    Simplex cell1;
    Simplex cell2;
    GVal coeff;
};

// A chain of product cells over the splitting R^n = X x Y with dim X = n1,
// dim Y = n2, homogeneous of type (k1, k2).  Terms are canonicalized exactly
// like Chain terms: per-cell vertex sort with parity fold, lexicographic sort
// on the (cell1, cell2) pair, merge of equal pairs, zero/degenerate drop.
// Subdivision is *not* normalized; compare via embed() + chain_is_null when a
// representation-independent test is needed.
//
// An empty tensor chain may carry an out-of-range type (e.g. k1 = -1 after a
// boundary in the first slot); empties of equal split and group compare equal
// regardless of type so that identities like d1(d1(t)) == d2(d1(d1(t))) hold
// without special-casing trivial degrees.
class TensorChain {
public:
    static TensorChain make(int n1, int n2, int k1, int k2, const Group& g,
                            std::vector<TensorTerm> terms);
    static TensorChain zero(int n1, int n2, int k1, int k2, const Group& g);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    int k1() const { return k1_; }
    int k2() const { return k2_; }
    TypeIndex type() const { return TypeIndex{k1_, k2_}; }
    const Group& group() const { return group_; }
    const std::vector<TensorTerm>& terms() const { return terms_; }
    bool is_empty() const { return terms_.empty(); }

    TensorChain operator+(const TensorChain& o) const;
    TensorChain operator-(const TensorChain& o) const;
    TensorChain operator-() const;
    TensorChain scaled(const mpz_class& s) const;
    bool operator==(const TensorChain& o) const;
    bool operator!=(const TensorChain& o) const { return !(*this == o); }

    Json to_json() const;
    static TensorChain from_json(const Json& j);

private:
    TensorChain() = default;
    int n1_ = 0, n2_ = 0;
    int k1_ = 0, k2_ = 0;
    Group group_ = Group::Z();
    std::vector<TensorTerm> terms_;
};

// Partial boundaries.  d1 t = sum g (dp1) x p2, type (k1-1, k2);
// d2 t = (-1)^{k1} sum g p1 x (dp2), type (k1, k2-1).  The (-1)^{k1} twist
// makes d = d1 + d2 match the simplicial boundary of the embedded product:
//   boundary(embed(t)) == embed(d1(t)) + embed(d2(t))   (exactly, canonical).
// Consequences: d1 d1 = 0, d2 d2 = 0, d1 d2 = -d2 d1.  A boundary in a slot
// of degree 0 is zero (returned as an empty chain), not an error.
TensorChain d1(const TensorChain& t);
TensorChain d2(const TensorChain& t);

// Termwise cartesian product into R^{n1+n2} (first-factor coordinates first).
Chain embed(const TensorChain& t);

// Decompose a chain whose cells are all products of coordinate-subspace cells
// into its homogeneous components, keyed by type.  Cells whose edge matrix has
// rank (k,0) or (0,k) across the splitting factor exactly as cell x point /
// point x cell.  Cells of profile (1,1) (triangles spanning one direction in
// each factor) are regrouped per product 2-plane and reassembled into interval
// products; the reassembly is verified exactly against the input via
// chain_is_null, so a non-product configuration (e.g. a diagonal segment, or
// triangles whose multiplicity function is not a box sum) raises
// NotTensorRepresentable.  Mixed profiles of total degree >= 3 are not
// reassembled and also raise NotTensorRepresentable.
std::map<TypeIndex, TensorChain> j_decompose(const Chain& c, int n1);

// The i-view of a tensor chain: first-factor cells paired with their
// second-factor coefficient chains (over X_abar, ambient n2).  Groups with a
// zero coefficient chain are dropped (e.g. 2 * p1 x q over Z/2Z).
struct IChainView {
    int n1 = 0, n2 = 0;
    int k1 = 0, k2 = 0;
    Group group = Group::Z();
    std::vector<std::pair<Simplex, Chain>> groups; // sorted by cell1
};

IChainView i_map(const TensorChain& t);
TensorChain i_inverse(const IChainView& v);

// Augmentation: sum of coefficients of a 0-chain (DimensionMismatch else).
GVal chi(const Chain& c);

// chi-wedge of a type (0,0) tensor chain: apply chi in each slot, i.e. the sum
// of all coefficients.  TypeMismatch unless k1 == k2 == 0.
GVal chi_wedge(const TensorChain& t);

// Collapse the first factor of a type (0, k2) chain onto the dyadic grid of
// mesh 2^-level: each first-factor point x is snapped componentwise to
// 2^-level * floor(2^level * x) (half-open cubes), and terms landing on the
// same snapped point merge.  TypeMismatch unless k1 == 0; UsageError for a
// negative level.
TensorChain dyadic_collapse(const TensorChain& t, int level);

// Slice a tensor chain factorwise: gamma holds global axis indices (ascending,
// in [0, n1+n2)); axes < n1 slice the first factor, the rest slice the second,
// with no extra sign on either slot.  Under this convention the partial
// boundaries commute with slicing as
//   d1(Sl t) == Sl(d1 t)    and    d2(Sl t) == (-1)^{|gamma1|} Sl(d2 t),
// where gamma1 is the set of first-factor slice axes.  Throws NonGenericPoint
// at non-generic levels, DimensionMismatch if a slot is sliced in more axes
// than its degree, UsageError for bad gamma.
TensorChain tensor_slice(const TensorChain& t, const SliceSpec& spec);

} // namespace polychain
