#pragma once

#include "polychain/rational.hpp"

#include <map>
#include <string>
#include <utility>

namespace polychain {

// Exact arithmetic in the ring Q[sqrt(s1), sqrt(s2), ...]: a value is a
// finite sum  sum_s c_s * sqrt(s)  over canonical radicands s (squarefree
// positive integers, s = 1 for the rational part).  Sums, differences and
// products stay in the ring, so k-volumes sqrt(det Gram)/k! and all mass
// comparisons are exact.  Sign queries are decided by refining rational
// enclosures of the square roots; a structural zero short-circuits.
class CertifiedReal {
public:
    CertifiedReal() = default;
    CertifiedReal(const Rat& r); // NOLINT: implicit by design
    CertifiedReal(long v) : CertifiedReal(Rat(v)) {}

    static CertifiedReal sqrt_of(const Rat& nonneg);

    CertifiedReal operator+(const CertifiedReal& o) const;
    CertifiedReal operator-(const CertifiedReal& o) const;
    CertifiedReal operator-() const;
    CertifiedReal operator*(const CertifiedReal& o) const;
    CertifiedReal& operator+=(const CertifiedReal& o) { return *this = *this + o; }
    CertifiedReal& operator-=(const CertifiedReal& o) { return *this = *this - o; }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Rational part; exact value only when is_rational().
    Rat rational_part() const;

    // -1, 0, +1; exact.
    int sign() const;
    bool operator==(const CertifiedReal& o) const { return (*this - o).is_zero(); }
    bool operator!=(const CertifiedReal& o) const { return !(*this == o); }
    bool operator<(const CertifiedReal& o) const { return (*this - o).sign() < 0; }
    bool operator<=(const CertifiedReal& o) const { return (*this - o).sign() <= 0; }
    bool operator>(const CertifiedReal& o) const { return (*this - o).sign() > 0; }
    bool operator>=(const CertifiedReal& o) const { return (*this - o).sign() >= 0; }

    // Rational enclosure of width <= 2^-prec_bits.
    std::pair<Rat, Rat> enclosure(unsigned prec_bits = 96) const;
    // Outward-rounded double enclosure.
    std::pair<double, double> interval() const;
    double approx() const;

    std::string to_string() const;

    const std::map<mpz_class, Rat>& terms() const { return terms_; }

private:
    void add_term(const mpz_class& radicand, const Rat& coeff);
    std::map<mpz_class, Rat> terms_;
};

} // namespace polychain
