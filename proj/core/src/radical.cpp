#include "polychain/radical.hpp"

#include "polychain/errors.hpp"

#include <cmath>

namespace polychain {

namespace {

// m = s * f^2 with s squarefree (for the integer sizes arising here trial
// division up to 10^5 plus a perfect-square check on the residue suffices;
// a residue that resists both is kept inside the radicand unchanged).
void squarefree_split(const mpz_class& m, mpz_class& s, mpz_class& f) {
    s = 1;
    f = 1;
    mpz_class rem = m;
    for (unsigned long p = 2; p <= 100000ul && rem > 1; p = (p == 2 ? 3 : p + 2)) {
        if (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
            int e = 0;
            while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
                rem /= p;
                ++e;
            }
            for (int i = 0; i < e / 2; ++i)
                f *= p;
            if (e % 2)
                s *= p;
        }
        mpz_class psq;
        mpz_ui_pow_ui(psq.get_mpz_t(), p, 2);
        if (psq > rem)
            break;
    }
    if (rem > 1) {
        if (mpz_perfect_square_p(rem.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), rem.get_mpz_t());
            f *= r;
        } else {
            s *= rem;
        }
    }
}

// Encloses sqrt(s) in [a, b] with b - a <= 2^-prec.
std::pair<Rat, Rat> sqrt_enclosure(const mpz_class& s, unsigned prec) {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, prec);
    mpz_class n = s * scale * scale;
    mpz_class a;
    mpz_sqrt(a.get_mpz_t(), n.get_mpz_t());
    Rat lo(a, scale), hi(a + 1, scale);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

} // namespace

CertifiedReal::CertifiedReal(const Rat& r) {
    if (r != 0)
        terms_[mpz_class(1)] = r;
}

void CertifiedReal::add_term(const mpz_class& radicand, const Rat& coeff) {
    if (coeff == 0)
        return;
    auto it = terms_.find(radicand);
    if (it == terms_.end()) {
        terms_[radicand] = coeff;
    } else {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

CertifiedReal CertifiedReal::sqrt_of(const Rat& nonneg) {
    if (sgn(nonneg) < 0)
        throw Error("Domain", "sqrt of negative rational");
    if (nonneg == 0)
        return CertifiedReal();
    // sqrt(p/q) = sqrt(p q) / q
    mpz_class m = nonneg.get_num() * nonneg.get_den();
    mpz_class s, f;
    squarefree_split(m, s, f);
    CertifiedReal out;
    Rat coeff(f, nonneg.get_den());
    coeff.canonicalize();
    out.add_term(s, coeff);
    return out;
}

CertifiedReal CertifiedReal::operator+(const CertifiedReal& o) const {
    CertifiedReal out = *this;
    for (const auto& [rad, c] : o.terms_)
        out.add_term(rad, c);
    return out;
}

CertifiedReal CertifiedReal::operator-() const {
    CertifiedReal out = *this;
    for (auto& [rad, c] : out.terms_)
        c = -c;
    return out;
}

CertifiedReal CertifiedReal::operator-(const CertifiedReal& o) const { return *this + (-o); }

CertifiedReal CertifiedReal::operator*(const CertifiedReal& o) const {
    CertifiedReal out;
    for (const auto& [s, cs] : terms_) {
        for (const auto& [t, ct] : o.terms_) {
            // sqrt(s) sqrt(t) = g sqrt((s/g)(t/g)) with g = gcd(s, t); the
            // cofactors are coprime and squarefree, so the product is
            // squarefree and no refactorization is needed.
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t());
            mpz_class rad = (s / g) * (t / g);
            out.add_term(rad, cs * ct * Rat(g));
        }
    }
    return out;
}

bool CertifiedReal::is_rational() const {
    if (terms_.empty())
        return true;
    return terms_.size() == 1 && terms_.begin()->first == 1;
}

Rat CertifiedReal::rational_part() const {
    auto it = terms_.find(mpz_class(1));
    return it == terms_.end() ? Rat(0) : it->second;
}

std::pair<Rat, Rat> CertifiedReal::enclosure(unsigned prec_bits) const {
    // Work at enough extra precision that the summed error stays below the
    // requested width.
    unsigned extra = 8;
    size_t nt = terms_.size();
    while ((size_t(1) << extra) < nt + 1)
        ++extra;
    Rat lo = 0, hi = 0;
    for (const auto& [rad, c] : terms_) {
        if (rad == 1) {
            lo += c;
            hi += c;
            continue;
        }
        // Coefficient magnitude widens the enclosure; add its bit length.
        mpz_class mag = abs(c.get_num()) / c.get_den() + 1;
        unsigned cb = static_cast<unsigned>(mpz_sizeinbase(mag.get_mpz_t(), 2));
        auto [slo, shi] = sqrt_enclosure(rad, prec_bits + extra + cb);
        if (sgn(c) >= 0) {
            lo += c * slo;
            hi += c * shi;
        } else {
            lo += c * shi;
            hi += c * slo;
        }
    }
    return {lo, hi};
}

int CertifiedReal::sign() const {
    if (terms_.empty())
        return 0;
    if (is_rational())
        return sgn(rational_part());
    // Nonzero structurally (distinct canonical radicands with nonzero
    // rational coefficients are linearly independent over Q), so refinement
    // terminates.
    for (unsigned prec = 32; prec <= (1u << 20); prec *= 2) {
        auto [lo, hi] = enclosure(prec);
        if (sgn(lo) > 0)
            return 1;
        if (sgn(hi) < 0)
            return -1;
    }
    throw Error("Precision", "sign of radical expression undecided at max precision");
}

std::pair<double, double> CertifiedReal::interval() const {
    auto [lo, hi] = enclosure(96);
    auto [l1, l2] = rat_to_interval(lo);
    auto [h1, h2] = rat_to_interval(hi);
    (void)l2;
    (void)h1;
    return {l1, h2};
}

double CertifiedReal::approx() const {
    auto [lo, hi] = interval();
    return 0.5 * (lo + hi);
}

std::string CertifiedReal::to_string() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [rad, c] : terms_) {
        std::string piece;
        if (rad == 1) {
            piece = rat_to_string(c);
        } else if (c == 1) {
            piece = "sqrt(" + rad.get_str() + ")";
        } else if (c == -1) {
            piece = "-sqrt(" + rad.get_str() + ")";
        } else {
            piece = rat_to_string(c) + "*sqrt(" + rad.get_str() + ")";
        }
        if (!first && piece[0] != '-')
            out += "+";
        out += piece;
        first = false;
    }
    return out;
}

} // namespace polychain
