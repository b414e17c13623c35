#include "polychain/group.hpp"

#include "polychain/errors.hpp"

namespace polychain {

Group Group::Zmod(unsigned long m) {
    if (m < 2)
        throw UsageError("modulus must be >= 2");
    return {GroupKind::IntegersModM, m};
}

std::string Group::to_string() const {
    switch (kind) {
    case GroupKind::Integers:
        return "Z";
    case GroupKind::IntegersModM:
        return "Z/" + std::to_string(m) + "Z";
    case GroupKind::Rationals:
        return "Q";
    }
    return "?";
}

Json Group::to_json() const {
    switch (kind) {
    case GroupKind::Integers:
        return Json{{"group", "Z"}};
    case GroupKind::IntegersModM:
        return Json{{"group", "ZmodM"}, {"m", m}};
    case GroupKind::Rationals:
        return Json{{"group", "Q"}};
    }
    return {};
}

Group Group::from_json(const Json& j) {
    std::string k = j.at("group").get<std::string>();
    if (k == "Z")
        return Z();
    if (k == "Q")
        return Q();
    if (k == "ZmodM")
        return Zmod(j.at("m").get<unsigned long>());
    throw ParseError("unknown coefficient group: " + k);
}

GVal::GVal(const Group& g, const Rat& v) : group_(g), value_(v) { canonicalize(); }

void GVal::canonicalize() {
    switch (group_.kind) {
    case GroupKind::Rationals:
        break;
    case GroupKind::Integers:
        if (value_.get_den() != 1)
            throw GroupMismatch("non-integer value in Z: " + rat_to_string(value_));
        break;
    case GroupKind::IntegersModM: {
        if (value_.get_den() != 1)
            throw GroupMismatch("non-integer value in Z/mZ: " + rat_to_string(value_));
        mpz_class r;
        mpz_mod_ui(r.get_mpz_t(), value_.get_num().get_mpz_t(), group_.m);
        value_ = Rat(r);
        break;
    }
    }
}

GVal GVal::operator+(const GVal& o) const {
    if (group_ != o.group_)
        throw GroupMismatch("adding values from " + group_.to_string() + " and " +
                            o.group_.to_string());
    return GVal(group_, value_ + o.value_);
}

GVal GVal::operator-() const { return GVal(group_, -value_); }

GVal GVal::operator-(const GVal& o) const { return *this + (-o); }

GVal GVal::scaled(const mpz_class& n) const { return GVal(group_, value_ * Rat(n)); }

Rat GVal::norm() const {
    switch (group_.kind) {
    case GroupKind::Integers:
    case GroupKind::Rationals:
        return abs(value_);
    case GroupKind::IntegersModM: {
        Rat r = value_;
        Rat alt = Rat(group_.m) - r;
        return r < alt ? r : alt;
    }
    }
    return 0;
}

std::string GVal::to_string() const { return rat_to_string(value_); }

Json GVal::to_json() const {
    Json j = group_.to_json();
    j["value"] = rat_to_string(value_);
    return j;
}

GVal GVal::from_json(const Json& j) {
    Group g = Group::from_json(j);
    const Json& v = j.at("value");
    Rat r = v.is_string() ? rat_from_string(v.get<std::string>())
                          : rat_from_string(v.dump());
    return GVal(g, r);
}

} // namespace polychain
