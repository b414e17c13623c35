#include "polychain/rational.hpp"

#include "polychain/errors.hpp"

#include <cctype>
#include <cmath>

namespace polychain {

Rat rat_from_string(const std::string& s) {
    if (s.empty())
        throw ParseError("empty rational literal");
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    if (t.empty())
        throw ParseError("empty rational literal");
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        if (t.find('/') != std::string::npos)
            throw ParseError("mixed decimal and fraction: " + s);
        std::string intpart = t.substr(0, dot);
        std::string frac = t.substr(dot + 1);
        bool neg = false;
        if (!intpart.empty() && (intpart[0] == '-' || intpart[0] == '+')) {
            neg = intpart[0] == '-';
            intpart = intpart.substr(1);
        }
        if (intpart.empty())
            intpart = "0";
        if (frac.empty())
            frac = "0";
        for (char c : intpart + frac)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw ParseError("bad rational literal: " + s);
        mpz_class num(intpart + frac);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        Rat r(num, den);
        r.canonicalize();
        if (neg)
            r = -r;
        return r;
    }
    try {
        Rat r(t);
        r.canonicalize();
        if (sgn(r.get_den()) <= 0) {
            if (sgn(r.get_den()) == 0)
                throw ParseError("zero denominator: " + s);
            // gmp keeps sign in numerator after canonicalize, this is defensive
            r = Rat(-r.get_num(), -r.get_den());
        }
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational literal: " + s);
    }
}

std::string rat_to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

double rat_to_double(const Rat& r) { return r.get_d(); }

std::pair<double, double> rat_to_interval(const Rat& r) {
    double d = r.get_d();
    double lo = d, hi = d;
    if (Rat(lo) > r)
        lo = std::nextafter(lo, -INFINITY);
    if (Rat(hi) < r)
        hi = std::nextafter(hi, INFINITY);
    return {lo, hi};
}

mpz_class rat_floor(const Rat& r) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

int sgn(const Rat& r) { return mpq_sgn(r.get_mpq_t()); }

RatMat mat_mul(const RatMat& a, const RatMat& b) {
    size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
    RatMat c(m, RatVec(n, 0));
    for (size_t i = 0; i < m; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0)
                continue;
            for (size_t j = 0; j < n; ++j)
                c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

RatVec mat_vec(const RatMat& a, const RatVec& x) {
    RatVec y(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0)
                y[i] += a[i][j] * x[j];
    return y;
}

RatMat mat_transpose(const RatMat& a) {
    if (a.empty())
        return {};
    RatMat t(a[0].size(), RatVec(a.size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

std::vector<int> rref(RatMat& a) {
    std::vector<int> pivots;
    if (a.empty())
        return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[r]);
        Rat inv = a[r][c];
        for (size_t j = c; j < cols; ++j)
            a[r][j] /= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0)
                continue;
            Rat f = a[i][c];
            for (size_t j = c; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

int mat_rank(RatMat a) { return static_cast<int>(rref(a).size()); }

Rat mat_det(RatMat a) {
    size_t n = a.size();
    Rat det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && a[piv][c] == 0)
            ++piv;
        if (piv == n)
            return 0;
        if (piv != c) {
            std::swap(a[piv], a[c]);
            det = -det;
        }
        det *= a[c][c];
        Rat inv = a[c][c];
        for (size_t i = c + 1; i < n; ++i) {
            if (a[i][c] == 0)
                continue;
            Rat f = a[i][c] / inv;
            for (size_t j = c; j < n; ++j)
                a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

std::optional<RatVec> solve_square(RatMat a, RatVec b) {
    size_t n = a.size();
    for (size_t i = 0; i < n; ++i)
        a[i].push_back(b[i]);
    auto pivots = rref(a);
    if (pivots.size() != n || (n && pivots.back() == static_cast<int>(n)))
        return std::nullopt;
    RatVec x(n, 0);
    for (size_t i = 0; i < n; ++i)
        x[pivots[i]] = a[i][n];
    return x;
}

std::optional<RatVec> solve_any(RatMat a, RatVec b) {
    if (a.empty())
        return RatVec{};
    size_t rows = a.size(), cols = a[0].size();
    for (size_t i = 0; i < rows; ++i)
        a[i].push_back(b[i]);
    auto pivots = rref(a);
    for (size_t i = 0; i < pivots.size(); ++i)
        if (pivots[i] == static_cast<int>(cols))
            return std::nullopt;
    // rows below pivot rows must be all-zero including rhs
    for (size_t i = pivots.size(); i < rows; ++i)
        if (a[i][cols] != 0)
            return std::nullopt;
    RatVec x(cols, 0);
    for (size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = a[i][cols];
    return x;
}

} // namespace polychain
