#include "polychain/lab.hpp"

#include "polychain/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace polychain {

namespace {

const Group kZ = Group::Z();

Rat pow2(int e) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return Rat(z);
}

} // namespace

// ---------------------------------------------------------------------------
// Staircase
// ---------------------------------------------------------------------------

StaircasePair build_staircase(const StaircaseSpec& spec) {
    const int J = spec.level;
    if (J < 0 || J > 16)
        throw UsageError("staircase level must lie in [0, 16]");
    // Direct summation of the truncated measure: atom i/2^j gains (1/2)4^-j.
    std::map<Rat, Rat> atom; // position -> weight
    Rat wj(1, 2);
    for (int j = 0; j <= J; ++j) {
        Rat step = 1 / pow2(j);
        Rat x = 0;
        for (long i = 1; i <= (1L << j); ++i) {
            x += step;
            atom[x] += wj;
        }
        wj /= 4;
    }
    std::vector<CellTerm> horiz, vert;
    Rat x_prev = 0;
    Rat y = 0; // running cumulative value f(x+)
    for (const auto& [x, w] : atom) {
        horiz.push_back({Simplex(2, {{x_prev, y}, {x, y}}), GVal::one(kZ)});
        vert.push_back({Simplex(2, {{x, y}, {x, y + w}}), GVal::one(kZ)});
        y += w;
        x_prev = x;
    }
    return {Chain::make(2, 1, kZ, std::move(horiz)),
            Chain::make(2, 1, kZ, std::move(vert))};
}

std::vector<GrowthRow> staircase_boundary_growth(int j_max) {
    if (j_max < 0 || j_max > 16)
        throw UsageError("staircase level must lie in [0, 16]");
    std::vector<GrowthRow> rows;
    for (int j = 0; j <= j_max; ++j) {
        Chain a1 = build_staircase({j}).a1;
        MassReport m = a1.boundary().mass();
        // 0-chain masses are sums of coefficient norms, always rational.
        rows.push_back({j, m.value.rational_part()});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Theta-graph spec
// ---------------------------------------------------------------------------

Json ThetaGraphSpec::to_json() const {
    Json j;
    Json paths_j = Json::array();
    for (const auto& path : paths) {
        Json p = Json::array();
        for (const auto& v : path)
            p.push_back(point_to_json(v));
        paths_j.push_back(std::move(p));
    }
    j["paths"] = std::move(paths_j);
    Json len = Json::array();
    for (const auto& [radicand, coeff] : common_length.terms())
        len.push_back({radicand.get_str(), rat_to_string(coeff)});
    j["common_length"] = std::move(len);
    return j;
}

ThetaGraphSpec ThetaGraphSpec::from_json(const Json& j) {
    ThetaGraphSpec spec;
    for (const auto& p : j.at("paths")) {
        std::vector<Point> path;
        for (const auto& v : p)
            path.push_back(point_from_json(v, 2));
        spec.paths.push_back(std::move(path));
    }
    for (const auto& term : j.at("common_length")) {
        Rat radicand = rat_from_string(term.at(0).get<std::string>());
        Rat coeff = rat_from_string(term.at(1).get<std::string>());
        spec.common_length += CertifiedReal(coeff) * CertifiedReal::sqrt_of(radicand);
    }
    return spec;
}

namespace {

std::string point_str(const Point& p) {
    std::ostringstream os;
    os << "(" << rat_to_string(p[0]) << ", " << rat_to_string(p[1]) << ")";
    return os.str();
}

Rat cross2(const Point& o, const Point& a, const Point& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

bool is_junction(const Point& p) {
    return (p[0] == 0 && p[1] == 0) || (p[0] == 1 && p[1] == 0);
}

// Exact intersection of closed segments [p,q] and [r,s]; every common point
// must be a junction, and overlaps of positive length are never allowed.
void check_segments(const Point& p, const Point& q, const Point& r, const Point& s,
                    int leg_a, int leg_b) {
    auto fail = [&](const Point& at) {
        throw SpecInvalid("legs " + std::to_string(leg_a) + " and " +
                          std::to_string(leg_b) + " meet at " + point_str(at) +
                          ", away from the junctions");
    };
    Point dpq{q[0] - p[0], q[1] - p[1]};
    Point drs{s[0] - r[0], s[1] - r[1]};
    Rat denom = dpq[0] * drs[1] - dpq[1] * drs[0];
    if (denom == 0) {
        if (cross2(p, q, r) != 0)
            return; // parallel, not collinear
        // Collinear: compare parameter intervals along the dominant axis.
        int ax = dpq[0] != 0 ? 0 : 1;
        Rat lo1 = std::min(p[ax], q[ax]), hi1 = std::max(p[ax], q[ax]);
        Rat lo2 = std::min(r[ax], s[ax]), hi2 = std::max(r[ax], s[ax]);
        Rat lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
        if (lo > hi)
            return;
        if (lo < hi)
            throw SpecInvalid("legs " + std::to_string(leg_a) + " and " +
                              std::to_string(leg_b) + " share a segment of positive length");
        Point at = p[ax] == lo ? p : (q[ax] == lo ? q : (r[ax] == lo ? r : s));
        if (!is_junction(at))
            fail(at);
        return;
    }
    Rat t = ((r[0] - p[0]) * drs[1] - (r[1] - p[1]) * drs[0]) / denom;
    Rat u = ((r[0] - p[0]) * dpq[1] - (r[1] - p[1]) * dpq[0]) / denom;
    if (t < 0 || t > 1 || u < 0 || u > 1)
        return;
    Point at{p[0] + t * dpq[0], p[1] + t * dpq[1]};
    if (!is_junction(at))
        fail(at);
}

CertifiedReal path_length(const std::vector<Point>& path) {
    CertifiedReal len;
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        Rat dx = path[i + 1][0] - path[i][0];
        Rat dy = path[i + 1][1] - path[i][1];
        len += CertifiedReal::sqrt_of(dx * dx + dy * dy);
    }
    return len;
}

} // namespace

void validate_theta_spec(const ThetaGraphSpec& spec) {
    const size_t n = spec.paths.size();
    if (n < 3)
        throw SpecInvalid("need at least 3 legs, got " + std::to_string(n));
    for (size_t i = 0; i < n; ++i) {
        const auto& path = spec.paths[i];
        if (path.size() < 2)
            throw SpecInvalid("leg " + std::to_string(i) + " has fewer than 2 vertices");
        for (const auto& v : path)
            if (v.size() != 2)
                throw SpecInvalid("leg " + std::to_string(i) + " has a non-planar vertex");
        if (path.front()[0] != 0 || path.front()[1] != 0)
            throw SpecInvalid("leg " + std::to_string(i) + " does not start at (0, 0)");
        if (path.back()[0] != 1 || path.back()[1] != 0)
            throw SpecInvalid("leg " + std::to_string(i) + " does not end at (1, 0)");
        for (size_t t = 0; t + 1 < path.size(); ++t)
            if (path[t] == path[t + 1])
                throw SpecInvalid("leg " + std::to_string(i) + " has a degenerate edge at " +
                                  point_str(path[t]));
        if (path_length(path) != spec.common_length)
            throw SpecInvalid("leg " + std::to_string(i) + " has length " +
                              path_length(path).to_string() + ", expected " +
                              spec.common_length.to_string());
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t a = 0; a + 1 < spec.paths[i].size(); ++a)
                for (size_t b = 0; b + 1 < spec.paths[j].size(); ++b)
                    check_segments(spec.paths[i][a], spec.paths[i][a + 1],
                                   spec.paths[j][b], spec.paths[j][b + 1],
                                   static_cast<int>(i), static_cast<int>(j));
}

ThetaGraphSpec default_theta_spec(int legs) {
    if (legs != 3 && legs != 4)
        throw UsageError("frozen specs exist for 3 and 4 legs only");
    ThetaGraphSpec spec;
    spec.common_length = CertifiedReal(Rat(5, 4));
    spec.paths = {
        {{0, 0}, {Rat(1, 2), Rat(3, 8)}, {1, 0}},
        {{0, 0}, {Rat(27, 58), Rat(63, 464)}, {Rat(31, 58), Rat(-63, 464)}, {1, 0}},
        {{0, 0}, {Rat(1, 2), Rat(-3, 8)}, {1, 0}},
    };
    if (legs == 4)
        spec.paths.push_back({{0, 0},
                              {Rat(5, 14), Rat(25, 168)},
                              {Rat(1, 2), Rat(19, 56)},
                              {Rat(9, 14), Rat(25, 168)},
                              {1, 0}});
    validate_theta_spec(spec);
    return spec;
}

// ---------------------------------------------------------------------------
// Counterexample cycle
// ---------------------------------------------------------------------------

namespace {

Chain leg_chain(const std::vector<Point>& path) {
    std::vector<CellTerm> terms;
    for (size_t t = 0; t + 1 < path.size(); ++t)
        terms.push_back({Simplex(2, {path[t], path[t + 1]}), GVal::one(kZ)});
    return Chain::make(2, 1, kZ, std::move(terms));
}

} // namespace

CounterexampleResult build_counterexample(const ThetaGraphSpec& spec) {
    validate_theta_spec(spec);
    const int N = static_cast<int>(spec.paths.size());
    std::vector<Chain> legs;
    for (const auto& p : spec.paths)
        legs.push_back(leg_chain(p));

    std::vector<TensorTerm> terms;
    for (int i = 0; i < N; ++i) {
        Chain second = legs[static_cast<size_t>(i)] - legs[static_cast<size_t>((i + 1) % N)];
        for (const auto& a : legs[static_cast<size_t>(i)].terms())
            for (const auto& b : second.terms())
                terms.push_back({a.cell, b.cell,
                                 GVal(kZ, a.coeff.value() * b.coeff.value())});
    }
    CounterexampleResult out{TensorChain::make(2, 2, 1, 1, kZ, std::move(terms)), {}};

    Chain e = embed(out.a);
    out.report.mass = e.mass();
    out.report.expected_mass =
        CertifiedReal(Rat(2 * N)) * spec.common_length * spec.common_length;
    out.report.mass_matches = out.report.mass.value == out.report.expected_mass;
    out.report.boundary_zero = chain_is_null(e.boundary());
    out.report.split = splitting_test(e, 1, 1, 2).verdict;
    for (int k1p = 0; k1p <= 2; ++k1p) {
        int k2p = 2 - k1p;
        if (k1p == 1 && k2p == 1)
            continue;
        out.report.off_type.push_back(
            {TypeIndex{k1p, k2p}, j_vanishing_test(e, k1p, k2p, 2).verdict});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Decomposition lower-bound search
// ---------------------------------------------------------------------------

namespace {

struct Pair {
    std::vector<int> m, mp;
    long cost = 0;
};

void enumerate_zero_sum(int n, int bound, bool normalize,
                        std::vector<std::vector<int>>& out) {
    std::vector<int> v(static_cast<size_t>(n), 0);
    // Mixed-radix enumeration over {-bound..bound}^n keeping zero sums.
    while (true) {
        int sum = 0;
        for (int x : v)
            sum += x;
        if (sum == 0) {
            bool zero = true, lead_pos = false;
            for (int x : v)
                if (x != 0) {
                    zero = false;
                    lead_pos = x > 0;
                    break;
                }
            if (!zero && (!normalize || lead_pos))
                out.push_back(v);
        }
        int i = n - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == bound)
            v[static_cast<size_t>(i--)] = -bound;
        if (i < 0)
            break;
        ++v[static_cast<size_t>(i)];
    }
}

long l1(const std::vector<int>& v) {
    long s = 0;
    for (int x : v)
        s += std::abs(x);
    return s;
}

int int_rank(const std::vector<std::vector<long>>& m) {
    RatMat a;
    for (const auto& row : m) {
        RatVec r;
        for (long x : row)
            r.emplace_back(x);
        a.push_back(std::move(r));
    }
    return mat_rank(std::move(a));
}

long l1_mat(const std::vector<std::vector<long>>& m) {
    long s = 0;
    for (const auto& row : m)
        for (long x : row)
            s += std::labs(x);
    return s;
}

struct Searcher {
    int n;
    int max_terms;
    long long budget;
    std::vector<Pair> pairs;
    long best = std::numeric_limits<long>::max();
    std::vector<size_t> stack, best_stack;
    long long nodes = 0;

    void dfs(std::vector<std::vector<long>>& r, size_t start, long cost, int depth) {
        if (++nodes > budget)
            throw SearchBudgetExceeded("node budget exhausted after " +
                                       std::to_string(nodes - 1) + " nodes");
        long rl1 = l1_mat(r);
        if (rl1 == 0) {
            if (cost < best) {
                best = cost;
                best_stack = stack;
            }
            return;
        }
        if (depth == max_terms)
            return;
        int need = int_rank(r);
        if (need > max_terms - depth)
            return;
        long lower = cost + std::max(rl1, 4L * need);
        if (lower >= best)
            return;
        for (size_t idx = start; idx < pairs.size(); ++idx) {
            const Pair& p = pairs[idx];
            if (cost + p.cost >= best)
                break; // pairs sorted by cost
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    r[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
                        static_cast<long>(p.m[static_cast<size_t>(i)]) *
                        p.mp[static_cast<size_t>(j)];
            stack.push_back(idx);
            dfs(r, idx, cost + p.cost, depth + 1);
            stack.pop_back();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    r[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        static_cast<long>(p.m[static_cast<size_t>(i)]) *
                        p.mp[static_cast<size_t>(j)];
        }
    }
};

} // namespace

SearchResult decomposition_lower_bound_search(int legs, int max_terms, int bound,
                                              long long node_budget) {
    if (legs < 3)
        throw UsageError("search needs at least 3 legs");
    if (max_terms < 1 || bound < 1)
        throw UsageError("search needs positive term and entry bounds");

    std::vector<std::vector<int>> ms, mps;
    enumerate_zero_sum(legs, bound, true, ms);
    enumerate_zero_sum(legs, bound, false, mps);

    SearchResult res;
    Searcher s;
    s.n = legs;
    s.max_terms = max_terms;
    s.budget = node_budget;
    for (const auto& m : ms) {
        long lm = l1(m);
        res.parity_even = res.parity_even && lm % 2 == 0;
        for (const auto& mp : mps)
            s.pairs.push_back({m, mp, lm * l1(mp)});
    }
    for (const auto& mp : mps)
        res.parity_even = res.parity_even && l1(mp) % 2 == 0;
    std::stable_sort(s.pairs.begin(), s.pairs.end(), [](const Pair& a, const Pair& b) {
        return a.cost != b.cost ? a.cost < b.cost
                                : (a.m != b.m ? a.m < b.m : a.mp < b.mp);
    });

    // Target: identity minus the cyclic shift.
    std::vector<std::vector<long>> r(static_cast<size_t>(legs),
                                     std::vector<long>(static_cast<size_t>(legs), 0));
    for (int i = 0; i < legs; ++i) {
        r[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
        r[static_cast<size_t>(i)][static_cast<size_t>((i + 1) % legs)] = -1;
    }
    s.dfs(r, 0, 0, 0);

    res.nodes = s.nodes;
    res.found = s.best < std::numeric_limits<long>::max();
    if (res.found) {
        res.min_found = s.best;
        for (size_t idx : s.best_stack) {
            SearchTerm t;
            for (int x : s.pairs[idx].m)
                t.m.push_back(x);
            for (int x : s.pairs[idx].mp)
                t.mp.push_back(x);
            res.witness.push_back(std::move(t));
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Hyperplane split probe
// ---------------------------------------------------------------------------

std::vector<SplitProbeRow> hyperplane_split_probe(const Chain& c, int axis,
                                                  const std::vector<Rat>& levels) {
    if (axis < 0 || axis >= c.ambient())
        throw UsageError("probe axis out of range");
    CertifiedReal total = c.boundary().mass().value;
    std::vector<SplitProbeRow> rows;
    for (const Rat& s : levels) {
        for (const auto& term : c.terms())
            for (const auto& v : term.cell.verts)
                if (v[static_cast<size_t>(axis)] == s)
                    throw NonGenericLevel("level " + rat_to_string(s) +
                                          " hits a vertex coordinate on axis " +
                                          std::to_string(axis + 1));
        SplitProbeRow row;
        row.level = s;
        row.slice_zero = chain_is_null(hyperplane_intersection(c, axis, s));
        Chain lower = restrict_halfspace(c, axis, s, false);
        Chain upper = restrict_halfspace(c, axis, s, true);
        CertifiedReal parts =
            lower.boundary().mass().value + upper.boundary().mass().value;
        row.boundary_additive = parts == total;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace polychain
