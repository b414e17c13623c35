#include "polychain/lp.hpp"

#include "polychain/errors.hpp"

#include <algorithm>

namespace polychain {

namespace {

// Dense simplex tableau: rows of [A | b], a cost row, and the basis map.
struct Tableau {
    RatMat rows;     // m x (ncols + 1), last column is the rhs
    RatVec cost;     // ncols + 1, last entry is -objective
    std::vector<int> basis;
    long pivots = 0;

    int m() const { return static_cast<int>(rows.size()); }
    int ncols() const { return rows.empty() ? 0 : static_cast<int>(rows[0].size()) - 1; }

    void pivot(int r, int c) {
        Rat inv = rows[r][c];
        for (auto& v : rows[r])
            v /= inv;
        for (int i = 0; i < m(); ++i) {
            if (i == r || rows[i][c] == 0)
                continue;
            Rat f = rows[i][c];
            for (size_t j = 0; j < rows[i].size(); ++j)
                rows[i][j] -= f * rows[r][j];
        }
        if (cost[c] != 0) {
            Rat f = cost[c];
            for (size_t j = 0; j < cost.size(); ++j)
                cost[j] -= f * rows[r][j];
        }
        basis[r] = c;
        ++pivots;
    }

    // Rebuild the reduced-cost row for objective c over the current basis.
    void load_cost(const RatVec& c) {
        cost.assign(ncols() + 1, 0);
        for (int j = 0; j < static_cast<int>(c.size()); ++j)
            cost[j] = c[j];
        for (int i = 0; i < m(); ++i) {
            int bv = basis[i];
            if (bv < static_cast<int>(c.size()) && c[bv] != 0) {
                Rat f = c[bv];
                for (size_t j = 0; j < cost.size(); ++j)
                    cost[j] -= f * rows[i][j];
            }
        }
    }

    // Bland's rule; returns false when optimal, throws on unboundedness.
    bool step(int usable_cols) {
        int enter = -1;
        for (int j = 0; j < usable_cols; ++j)
            if (cost[j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0)
            return false;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m(); ++i) {
            if (rows[i][enter] <= 0)
                continue;
            Rat ratio = rows[i].back() / rows[i][enter];
            if (leave < 0 || ratio < best ||
                (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0)
            throw UsageError("unbounded linear program");
        pivot(leave, enter);
        return true;
    }
};

LPSolution finish(Tableau& t, const RatMat& a0, const RatVec& c,
                  const std::vector<int>& live_rows, int nrows0) {
    LPSolution s;
    s.status = LPStatus::Optimal;
    s.pivots = t.pivots;
    s.x.assign(c.size(), 0);
    for (int i = 0; i < t.m(); ++i)
        if (t.basis[i] < static_cast<int>(c.size()))
            s.x[t.basis[i]] = t.rows[i].back();
    s.value = 0;
    for (size_t j = 0; j < c.size(); ++j)
        if (s.x[j] != 0)
            s.value += c[j] * s.x[j];
    // Dual via B^T y = c_B on the original (sign-fixed) rows; redundant rows
    // dropped in phase 1 get y = 0.
    int ml = t.m();
    RatMat bt(ml, RatVec(ml));
    RatVec cb(ml);
    for (int i = 0; i < ml; ++i) {
        int col = t.basis[i];
        for (int r = 0; r < ml; ++r)
            bt[i][r] = a0[live_rows[r]][col];
        cb[i] = col < static_cast<int>(c.size()) ? c[col] : Rat(0);
    }
    auto y = solve_any(bt, cb);
    s.y.assign(nrows0, 0);
    if (y)
        for (int r = 0; r < ml; ++r)
            s.y[live_rows[r]] = (*y)[r];
    return s;
}

} // namespace

LPSolution solve_lp_from_basis(RatMat a, RatVec b, RatVec c, std::vector<int> basis) {
    int m = static_cast<int>(a.size());
    int ncols = static_cast<int>(c.size());
    Tableau t;
    t.rows.assign(m, RatVec(ncols + 1));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < ncols; ++j)
            t.rows[i][j] = a[i][j];
        t.rows[i][ncols] = b[i];
    }
    t.basis = std::move(basis);
    t.load_cost(c);
    try {
        while (t.step(ncols)) {
        }
    } catch (const UsageError&) {
        LPSolution s;
        s.status = LPStatus::Unbounded;
        s.pivots = t.pivots;
        return s;
    }
    std::vector<int> live(m);
    for (int i = 0; i < m; ++i)
        live[i] = i;
    return finish(t, a, c, live, m);
}

LPSolution solve_lp(RatMat a, RatVec b, RatVec c) {
    int m = static_cast<int>(a.size());
    int ncols = static_cast<int>(c.size());
    std::vector<bool> flipped(m, false);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(a[i].size()) != ncols)
            throw UsageError("ragged LP constraint matrix");
        if (b[i] < 0) {
            for (auto& v : a[i])
                v = -v;
            b[i] = -b[i];
            flipped[i] = true;
        }
    }
    // Phase 1: artificial identity basis.
    Tableau t;
    t.rows.assign(m, RatVec(ncols + m + 1));
    t.basis.resize(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < ncols; ++j)
            t.rows[i][j] = a[i][j];
        t.rows[i][ncols + i] = 1;
        t.rows[i][ncols + m] = b[i];
        t.basis[i] = ncols + i;
    }
    RatVec phase1(ncols + m, 0);
    for (int i = 0; i < m; ++i)
        phase1[ncols + i] = 1;
    t.load_cost(phase1);
    while (t.step(ncols + m)) {
    }
    if (-t.cost.back() != 0) {
        LPSolution s;
        s.status = LPStatus::Infeasible;
        s.pivots = t.pivots;
        return s;
    }
    // Drive artificials out of the basis; drop redundant rows.
    std::vector<int> live;
    std::vector<int> drop;
    for (int i = 0; i < m; ++i) {
        if (t.basis[i] < ncols)
            continue;
        int piv = -1;
        for (int j = 0; j < ncols; ++j)
            if (t.rows[i][j] != 0) {
                piv = j;
                break;
            }
        if (piv >= 0)
            t.pivot(i, piv);
        else
            drop.push_back(i);
    }
    Tableau t2;
    t2.pivots = t.pivots;
    for (int i = 0; i < m; ++i) {
        if (std::find(drop.begin(), drop.end(), i) != drop.end())
            continue;
        RatVec row(ncols + 1);
        for (int j = 0; j < ncols; ++j)
            row[j] = t.rows[i][j];
        row[ncols] = t.rows[i].back();
        t2.rows.push_back(std::move(row));
        t2.basis.push_back(t.basis[i]);
        live.push_back(i);
    }
    t2.load_cost(c);
    try {
        while (t2.step(ncols)) {
        }
    } catch (const UsageError&) {
        LPSolution s;
        s.status = LPStatus::Unbounded;
        s.pivots = t2.pivots;
        return s;
    }
    LPSolution s = finish(t2, a, c, live, m);
    // The dual was computed against the sign-normalized rows; transform it
    // back to the caller's orientation.
    for (int i = 0; i < m; ++i)
        if (flipped[i])
            s.y[i] = -s.y[i];
    return s;
}

bool lp_certificate_ok(const RatMat& a, const RatVec& b, const RatVec& c,
                       const LPSolution& s) {
    if (s.status != LPStatus::Optimal)
        return false;
    int m = static_cast<int>(a.size());
    int ncols = static_cast<int>(c.size());
    if (static_cast<int>(s.x.size()) != ncols || static_cast<int>(s.y.size()) != m)
        return false;
    for (const auto& v : s.x)
        if (v < 0)
            return false;
    for (int i = 0; i < m; ++i) {
        Rat dot = 0;
        for (int j = 0; j < ncols; ++j)
            if (s.x[j] != 0)
                dot += a[i][j] * s.x[j];
        if (dot != b[i])
            return false;
    }
    Rat primal = 0, dual = 0;
    for (int j = 0; j < ncols; ++j) {
        Rat red = c[j];
        for (int i = 0; i < m; ++i)
            if (a[i][j] != 0)
                red -= s.y[i] * a[i][j];
        if (red < 0)
            return false; // dual infeasible
        if (red != 0 && s.x[j] != 0)
            return false; // complementary slackness
        if (s.x[j] != 0)
            primal += c[j] * s.x[j];
    }
    for (int i = 0; i < m; ++i)
        if (s.y[i] != 0)
            dual += s.y[i] * b[i];
    return primal == dual && primal == s.value;
}

std::optional<Rat> lp_enumerate(const RatMat& a, const RatVec& b, const RatVec& c) {
    int m = static_cast<int>(a.size());
    int ncols = static_cast<int>(c.size());
    int r = mat_rank(a);
    std::optional<Rat> best;
    std::vector<int> pick(r);
    auto consider = [&](const std::vector<int>& cols) {
        RatMat sub(m, RatVec(r));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < r; ++j)
                sub[i][j] = a[i][cols[j]];
        if (mat_rank(sub) != r)
            return;
        auto sol = solve_any(sub, b);
        if (!sol)
            return;
        Rat val = 0;
        for (int j = 0; j < r; ++j) {
            if ((*sol)[j] < 0)
                return;
            val += c[cols[j]] * (*sol)[j];
        }
        if (!best || val < *best)
            best = val;
    };
    auto rec = [&](auto&& self, int start, int depth) -> void {
        if (depth == r) {
            consider(pick);
            return;
        }
        for (int j = start; j <= ncols - (r - depth); ++j) {
            pick[depth] = j;
            self(self, j + 1, depth + 1);
        }
    };
    if (r == 0) {
        bool zero = std::all_of(b.begin(), b.end(), [](const Rat& v) { return v == 0; });
        if (zero)
            return Rat(0);
        return std::nullopt;
    }
    rec(rec, 0, 0);
    return best;
}

} // namespace polychain
