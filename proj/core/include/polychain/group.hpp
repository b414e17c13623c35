#pragma once

#include "polychain/jsonio.hpp"
#include "polychain/rational.hpp"

#include <string>

namespace polychain {

enum class GroupKind { Integers, IntegersModM, Rationals };

// A normed abelian coefficient group: Z, Z/mZ or Q.
struct Group {
    GroupKind kind = GroupKind::Integers;
    unsigned long m = 0; // modulus, IntegersModM only

    static Group Z() { return {GroupKind::Integers, 0}; }
    static Group Zmod(unsigned long m);
    static Group Q() { return {GroupKind::Rationals, 0}; }

    bool operator==(const Group& o) const { return kind == o.kind && m == o.m; }
    bool operator!=(const Group& o) const { return !(*this == o); }

    std::string to_string() const;
    Json to_json() const;
    static Group from_json(const Json& j);
};

// A group element together with its group tag.  Z values are integers,
// Z/mZ values are canonical residues in [0, m), Q values arbitrary
// rationals.  Addition across distinct groups throws GroupMismatch.
class GVal {
public:
    GVal() = default;
    GVal(const Group& g, const Rat& v);
    static GVal zero(const Group& g) { return GVal(g, 0); }
    static GVal one(const Group& g) { return GVal(g, 1); }

    const Group& group() const { return group_; }
    const Rat& value() const { return value_; }
    bool is_zero() const { return value_ == 0; }

    GVal operator+(const GVal& o) const;
    GVal operator-(const GVal& o) const;
    GVal operator-() const;
    // Scaling by an integer (iterated addition), defined for every group.
    GVal scaled(const mpz_class& n) const;
    bool operator==(const GVal& o) const { return group_ == o.group_ && value_ == o.value_; }

    // |g| for Z and Q; min(r, m-r) for Z/mZ.
    Rat norm() const;

    std::string to_string() const;
    Json to_json() const;
    static GVal from_json(const Json& j);

private:
    void canonicalize();
    Group group_ = Group::Z();
    Rat value_ = 0;
};

} // namespace polychain
