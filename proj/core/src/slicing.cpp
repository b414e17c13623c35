#include "polychain/slicing.hpp"

#include "polychain/arrangement.hpp"
#include "polychain/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace polychain {

namespace {

void check_spec(const Chain& c, const std::vector<int>& gamma) {
    for (size_t i = 0; i < gamma.size(); ++i) {
        if (gamma[i] < 0 || gamma[i] >= c.ambient())
            throw UsageError("slice axis out of range");
        if (i && gamma[i] <= gamma[i - 1])
            throw UsageError("slice axes must be ascending and distinct");
    }
    if (static_cast<int>(gamma.size()) > c.dim())
        throw DimensionMismatch("cannot slice a " + std::to_string(c.dim()) +
                                "-chain along " + std::to_string(gamma.size()) + " axes");
}

// k x k minor of the edge matrix on rows gamma.
Rat gamma_minor(const RatMat& e, const std::vector<int>& gamma) {
    size_t k = gamma.size();
    RatMat sub(k, RatVec(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            sub[i][j] = e[gamma[i]][j];
    return mat_det(sub);
}

} // namespace

Chain slice(const Chain& c, const SliceSpec& spec) {
    check_spec(c, spec.gamma);
    if (spec.at.size() != spec.gamma.size())
        throw UsageError("slice base point arity differs from gamma");
    Chain cur = c;
    for (size_t i = 0; i < spec.gamma.size(); ++i) {
        int axis = spec.gamma[i];
        const Rat& level = spec.at[i];
        // The raw cut piece q is oriented by <e_axis ^ xi_q, xi_p> > 0 (the
        // new-boundary-face orientation used by hyperplane_intersection).
        // The slice operator flips this by (-1)^(dim-1) so that boundaries
        // commute plainly with slicing: with the raw orientation the cut
        // chain D satisfies dD(c) = -D(dc) (forced by d^2 = 0 and the
        // half-space boundary formula), and the dimension-dependent twist
        // cancels that sign.
        bool flip = cur.dim() % 2 == 0;
        std::vector<CellTerm> out;
        try {
            for (const auto& t : cur.terms()) {
                for (auto& [piece, sign] : slice_by_hyperplane(t.cell, axis, level)) {
                    for (auto& v : piece.verts)
                        v[axis] = 0; // projection onto the slice plane
                    bool neg = (sign < 0) != flip;
                    out.push_back({std::move(piece), neg ? -t.coeff : t.coeff});
                }
            }
        } catch (const NonGenericLevel& e) {
            throw NonGenericPoint(e.what());
        }
        cur = Chain::make(cur.ambient(), cur.dim() - 1, cur.group(), std::move(out));
    }
    return cur;
}

Chain hyperplane_intersection(const Chain& c, int axis, const Rat& level) {
    check_spec(c, {axis});
    std::vector<CellTerm> out;
    try {
        for (const auto& t : c.terms())
            for (auto& [piece, sign] : slice_by_hyperplane(t.cell, axis, level))
                out.push_back({std::move(piece), sign < 0 ? -t.coeff : t.coeff});
    } catch (const NonGenericLevel& e) {
        throw NonGenericPoint(e.what());
    }
    return Chain::make(c.ambient(), c.dim() - 1, c.group(), std::move(out));
}

std::optional<Chain> zero_dim_slice(const Chain& c, const std::vector<int>& gamma,
                                    const RatVec& at) {
    check_spec(c, gamma);
    int k = c.dim();
    if (static_cast<int>(gamma.size()) != k)
        throw DimensionMismatch("zero_dim_slice needs |gamma| = dim");
    // accumulated orientation twist of the iterated slice operator relative
    // to the raw cut orientation: product of (-1)^(j-1) for j = k..1
    bool twist = (k * (k - 1) / 2) % 2 != 0;
    std::vector<CellTerm> out;
    for (const auto& t : c.terms()) {
        RatMat e = t.cell.edge_matrix();
        size_t kk = gamma.size();
        RatMat sub(kk, RatVec(kk, 0));
        for (size_t i = 0; i < kk; ++i)
            for (size_t j = 0; j < kk; ++j)
                sub[i][j] = e[gamma[i]][j];
        Rat det = mat_det(sub);
        RatVec rhs(kk);
        for (size_t i = 0; i < kk; ++i)
            rhs[i] = at[i] - t.cell.verts[0][gamma[i]];
        if (det == 0) {
            // generic points miss a cell with degenerate projection; if the
            // sample lies on its projected affine hull, treat as non-generic
            if (solve_any(sub, rhs))
                return std::nullopt;
            continue;
        }
        auto lambda = solve_square(sub, rhs);
        if (!lambda)
            return std::nullopt;
        Rat sum = 0;
        bool interior = true;
        for (const Rat& l : *lambda) {
            if (sgn(l) <= 0) {
                if (l == 0)
                    return std::nullopt; // boundary hit: non-generic sample
                interior = false;
                break;
            }
            sum += l;
        }
        if (interior && sum == 1)
            return std::nullopt;
        if (!interior || sum > 1)
            continue;
        Point x(c.ambient(), Rat(0));
        for (int i = 0; i < c.ambient(); ++i) {
            x[i] = t.cell.verts[0][i];
            for (size_t j = 0; j < kk; ++j)
                x[i] += (*lambda)[j] * e[i][j];
        }
        for (size_t i = 0; i < kk; ++i)
            x[gamma[i]] = 0; // projection
        Simplex pt(c.ambient(), {std::move(x)});
        bool neg = (sgn(det) < 0) != twist;
        out.push_back({std::move(pt), neg ? -t.coeff : t.coeff});
    }
    return Chain::make(c.ambient(), 0, c.group(), std::move(out));
}

CertifiedReal coarea_bound(const Chain& c, const std::vector<int>& gamma) {
    check_spec(c, gamma);
    int k = c.dim();
    mpz_class fact = 1;
    for (int i = 2; i <= k; ++i)
        fact *= i;
    CertifiedReal acc;
    for (const auto& t : c.terms()) {
        RatMat e = t.cell.edge_matrix();
        Rat sumsq = 0;
        for (const auto& delta : k_subsets(c.ambient(), k)) {
            if (!std::includes(delta.begin(), delta.end(), gamma.begin(), gamma.end()))
                continue;
            Rat m = gamma_minor(e, delta);
            sumsq += m * m;
        }
        acc += CertifiedReal(t.coeff.norm() / Rat(fact)) * CertifiedReal::sqrt_of(sumsq);
    }
    return acc;
}

namespace {

VanishResult vanish_exact_1(const Chain& c, int axis) {
    struct Item {
        Rat lo, hi;
        RatVec slope, offset; // phi(s) = offset + s * slope
        GVal g;
    };
    std::vector<Item> items;
    std::vector<Rat> breaks;
    for (const auto& t : c.terms()) {
        const Point& a = t.cell.verts[0];
        const Point& b = t.cell.verts[1];
        Rat d = b[axis] - a[axis];
        if (d == 0) {
            breaks.push_back(a[axis]); // keep samples off perpendicular cells
            continue;
        }
        Item it;
        it.lo = std::min(a[axis], b[axis]);
        it.hi = std::max(a[axis], b[axis]);
        it.slope.resize(a.size());
        it.offset.resize(a.size());
        for (size_t i = 0; i < a.size(); ++i) {
            it.slope[i] = (b[i] - a[i]) / d;
            it.offset[i] = a[i] - a[axis] * it.slope[i];
        }
        it.slope[axis] = 0; // projection zeroes the sliced coordinate
        it.offset[axis] = 0;
        it.g = sgn(d) < 0 ? -t.coeff : t.coeff;
        items.push_back(std::move(it));
        breaks.push_back(a[axis]);
        breaks.push_back(b[axis]);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        Rat mid = (breaks[i] + breaks[i + 1]) / 2;
        std::map<std::pair<RatVec, RatVec>, GVal> groups;
        for (const auto& it : items) {
            if (!(it.lo < mid && mid < it.hi))
                continue;
            auto key = std::make_pair(it.slope, it.offset);
            auto found = groups.find(key);
            if (found == groups.end())
                groups.emplace(key, it.g);
            else
                found->second = found->second + it.g;
        }
        for (const auto& [key, g] : groups) {
            if (!g.is_zero()) {
                VanishResult r;
                r.verdict = VanishVerdict::NonzeroAt;
                r.witness = RatVec{mid};
                return r;
            }
        }
    }
    return {};
}

VanishResult vanish_exact_2(const Chain& c, const std::vector<int>& gamma) {
    int ax = gamma[0], ay = gamma[1];
    struct Item {
        Point2 p[3];
        RatMat map; // n x 2 in-plane linear part
        RatVec offset;
        GVal g;
    };
    std::vector<Item> items;
    std::vector<Seg2> segs;
    for (const auto& t : c.terms()) {
        RatMat e = t.cell.edge_matrix();
        RatMat sub{{e[ax][0], e[ax][1]}, {e[ay][0], e[ay][1]}};
        Rat det = mat_det(sub);
        Item it;
        for (int i = 0; i < 3; ++i)
            it.p[i] = {t.cell.verts[i][ax], t.cell.verts[i][ay]};
        // edges enter the arrangement even for degenerate projections so
        // that samples stay off them
        segs.push_back({it.p[0], it.p[1]});
        segs.push_back({it.p[1], it.p[2]});
        segs.push_back({it.p[2], it.p[0]});
        if (det == 0)
            continue; // projects to a segment, almost every point misses it
        // inverse of the projected edge matrix
        RatMat inv{{sub[1][1] / det, -sub[0][1] / det}, {-sub[1][0] / det, sub[0][0] / det}};
        int n = c.ambient();
        it.map = RatMat(n, RatVec(2, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 2; ++j)
                it.map[i][j] = e[i][0] * inv[0][j] + e[i][1] * inv[1][j];
        it.offset.resize(n);
        for (int i = 0; i < n; ++i)
            it.offset[i] = t.cell.verts[0][i] - it.map[i][0] * t.cell.verts[0][ax] -
                           it.map[i][1] * t.cell.verts[0][ay];
        // the projection zeroes the sliced coordinates
        for (int j = 0; j < 2; ++j) {
            it.map[ax][j] = 0;
            it.map[ay][j] = 0;
        }
        it.offset[ax] = 0;
        it.offset[ay] = 0;
        it.g = sgn(det) < 0 ? -t.coeff : t.coeff;
        items.push_back(std::move(it));
    }
    for (const auto& pt : face_samples(segs)) {
        std::map<std::pair<RatMat, RatVec>, GVal> groups;
        for (const auto& it : items) {
            if (locate_in_triangle(pt, it.p[0], it.p[1], it.p[2]) != Loc2::Inside)
                continue;
            auto key = std::make_pair(it.map, it.offset);
            auto found = groups.find(key);
            if (found == groups.end())
                groups.emplace(key, it.g);
            else
                found->second = found->second + it.g;
        }
        for (const auto& [key, g] : groups) {
            if (!g.is_zero()) {
                VanishResult r;
                r.verdict = VanishVerdict::NonzeroAt;
                r.witness = RatVec{pt.first, pt.second};
                return r;
            }
        }
    }
    return {};
}

VanishResult vanish_sampled(const Chain& c, const std::vector<int>& gamma) {
    // deterministic samples: gamma-projections of per-cell points blended
    // between barycenter and first vertex (always interior to the cell's own
    // nondegenerate projection), then midpoints of the axis coordinate grid
    std::vector<RatVec> candidates;
    for (const auto& t : c.terms()) {
        const auto& vs = t.cell.verts;
        Point bary(vs[0].size(), Rat(0));
        for (const auto& v : vs)
            for (size_t i = 0; i < v.size(); ++i)
                bary[i] += v[i] / Rat(static_cast<long>(vs.size()));
        for (Rat w : {Rat(1), Rat(1, 2), Rat(1, 7)}) {
            RatVec at;
            for (int axis : gamma)
                at.push_back(w * bary[axis] + (1 - w) * vs[0][axis]);
            candidates.push_back(std::move(at));
        }
        if (candidates.size() >= 48)
            break;
    }
    std::vector<std::vector<Rat>> levels;
    for (int axis : gamma) {
        std::set<Rat> coords;
        for (const auto& t : c.terms())
            for (const auto& v : t.cell.verts)
                coords.insert(v[axis]);
        std::vector<Rat> cs(coords.begin(), coords.end());
        std::vector<Rat> mids;
        for (size_t i = 0; i + 1 < cs.size() && mids.size() < 2; ++i)
            mids.push_back((cs[i] + cs[i + 1]) / 2);
        if (mids.empty())
            mids.push_back(cs.empty() ? Rat(0) : cs[0] + 1);
        levels.push_back(std::move(mids));
    }
    std::vector<size_t> idx(gamma.size(), 0);
    while (candidates.size() < 64) {
        RatVec at;
        for (size_t i = 0; i < gamma.size(); ++i)
            at.push_back(levels[i][idx[i]]);
        candidates.push_back(std::move(at));
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == levels[i].size()) {
            idx[i] = 0;
            ++i;
        }
        if (i == idx.size())
            break;
    }
    VanishResult r;
    r.verdict = VanishVerdict::Unknown;
    for (const auto& at : candidates) {
        auto s = zero_dim_slice(c, gamma, at);
        ++r.samples;
        if (s && !s->is_empty()) {
            r.verdict = VanishVerdict::NonzeroAt;
            r.witness = at;
            return r;
        }
    }
    return r;
}

} // namespace

VanishResult slices_vanish_ae(const Chain& c, const std::vector<int>& gamma) {
    check_spec(c, gamma);
    if (static_cast<int>(gamma.size()) != c.dim())
        throw DimensionMismatch("slices_vanish_ae needs |gamma| = dim");
    if (c.is_empty())
        return {};
    int k = c.dim();
    if (k == 0) {
        if (c.is_empty())
            return {};
        VanishResult r;
        r.verdict = VanishVerdict::NonzeroAt;
        r.witness = RatVec{};
        return r;
    }
    if (k == 1)
        return vanish_exact_1(c, gamma[0]);
    if (k == 2)
        return vanish_exact_2(c, gamma);
    return vanish_sampled(c, gamma);
}

SplitResult splitting_test(const Chain& c, int k1, int k2, int n1) {
    if (k1 + k2 != c.dim())
        throw DimensionMismatch("type does not sum to the chain dimension");
    if (n1 < 0 || n1 > c.ambient())
        throw UsageError("split position out of range");
    SplitResult res;
    if (!c.mass(true).certified) {
        res.verdict = SplitVerdict::NeedsCertifiedRep;
        return res;
    }
    int n = c.ambient();
    int k = c.dim();
    for (size_t ci = 0; ci < c.terms().size(); ++ci) {
        RatMat e = c.terms()[ci].cell.edge_matrix();
        RatMat top(e.begin(), e.begin() + n1);
        RatMat bot(e.begin() + n1, e.end());
        int r1 = top.empty() ? 0 : mat_rank(top);
        int r2 = bot.empty() ? 0 : mat_rank(bot);
        if (r1 == k1 && r2 == k2)
            continue;
        res.verdict = SplitVerdict::NotSplit;
        res.witness_cell = static_cast<int>(ci);
        for (const auto& g : k_subsets(n, k)) {
            int in_alpha = 0;
            for (int a : g)
                if (a < n1)
                    ++in_alpha;
            if (in_alpha == k1)
                continue;
            if (gamma_minor(e, g) != 0) {
                res.witness_gamma = g;
                break;
            }
        }
        return res;
    }
    return res;
}

VanishResult j_vanishing_test(const Chain& c, int k1p, int k2p, int n1) {
    if (k1p + k2p != c.dim())
        throw DimensionMismatch("type does not sum to the chain dimension");
    int n = c.ambient();
    bool unknown = false;
    long samples = 0;
    for (const auto& g : k_subsets(n, c.dim())) {
        int in_alpha = 0;
        for (int a : g)
            if (a < n1)
                ++in_alpha;
        if (in_alpha != k1p || static_cast<int>(g.size()) - in_alpha != k2p)
            continue;
        VanishResult r = slices_vanish_ae(c, g);
        samples += r.samples;
        if (r.verdict == VanishVerdict::NonzeroAt) {
            r.witness_gamma = g;
            r.samples = samples;
            return r;
        }
        if (r.verdict == VanishVerdict::Unknown)
            unknown = true;
    }
    VanishResult r;
    r.verdict = unknown ? VanishVerdict::Unknown : VanishVerdict::Vanishes;
    r.samples = samples;
    return r;
}

} // namespace polychain
