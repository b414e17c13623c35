#include "polychain/cubical.hpp"

#include "polychain/errors.hpp"

#include <algorithm>
#include <numeric>

namespace polychain {

namespace {

Rat rat_pow(const Rat& x, int e) {
    Rat r = 1;
    for (int i = 0; i < e; ++i)
        r *= x;
    return r;
}

int perm_parity(const std::vector<int>& p) {
    int inv = 0;
    for (size_t i = 0; i < p.size(); ++i)
        for (size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j])
                ++inv;
    return inv % 2 ? -1 : 1;
}

} // namespace

CubicalComplex::CubicalComplex(Point origin, Rat spacing, std::vector<int> extents, int n1)
    : origin_(std::move(origin)), h_(std::move(spacing)), extents_(std::move(extents)),
      n1_(n1) {
    if (h_ <= 0)
        throw UsageError("grid spacing must be positive");
    if (origin_.size() != extents_.size())
        throw UsageError("origin and extents dimension mismatch");
    for (int e : extents_)
        if (e < 1)
            throw UsageError("every extent must be at least one cell");
    if (n1_ < 0 || n1_ > n())
        throw UsageError("splitting index out of range");
}

long CubicalComplex::cell_count(int k) const {
    if (k < 0 || k > n())
        return 0;
    long total = 0;
    for (const auto& dirs : k_subsets(n(), k)) {
        long block = 1;
        for (int i = 0; i < n(); ++i) {
            bool in = std::find(dirs.begin(), dirs.end(), i) != dirs.end();
            block *= in ? extents_[i] : extents_[i] + 1;
        }
        total += block;
    }
    return total;
}

GridCell CubicalComplex::cell(int k, long id) const {
    if (k < 0 || k > n() || id < 0)
        throw UsageError("cell index out of range");
    for (const auto& dirs : k_subsets(n(), k)) {
        long block = 1;
        std::vector<int> radix(n());
        for (int i = 0; i < n(); ++i) {
            bool in = std::find(dirs.begin(), dirs.end(), i) != dirs.end();
            radix[i] = in ? extents_[i] : extents_[i] + 1;
            block *= radix[i];
        }
        if (id >= block) {
            id -= block;
            continue;
        }
        GridCell c;
        c.dirs = dirs;
        c.idx.resize(n());
        for (int i = n() - 1; i >= 0; --i) {
            c.idx[i] = static_cast<int>(id % radix[i]);
            id /= radix[i];
        }
        return c;
    }
    throw UsageError("cell index out of range");
}

long CubicalComplex::cell_id(const GridCell& c) const {
    int k = static_cast<int>(c.dirs.size());
    if (static_cast<int>(c.idx.size()) != n())
        throw UsageError("cell index vector has wrong dimension");
    for (size_t t = 0; t < c.dirs.size(); ++t) {
        if (c.dirs[t] < 0 || c.dirs[t] >= n())
            throw UsageError("cell direction out of range");
        if (t > 0 && c.dirs[t] <= c.dirs[t - 1])
            throw UsageError("cell directions must be strictly ascending");
    }
    long offset = 0;
    for (const auto& dirs : k_subsets(n(), k)) {
        long block = 1;
        std::vector<int> radix(n());
        for (int i = 0; i < n(); ++i) {
            bool in = std::find(dirs.begin(), dirs.end(), i) != dirs.end();
            radix[i] = in ? extents_[i] : extents_[i] + 1;
            block *= radix[i];
        }
        if (dirs != c.dirs) {
            offset += block;
            continue;
        }
        long id = 0;
        for (int i = 0; i < n(); ++i) {
            if (c.idx[i] < 0 || c.idx[i] >= radix[i])
                throw UsageError("cell index out of complex bounds");
            id = id * radix[i] + c.idx[i];
        }
        return offset + id;
    }
    throw UsageError("cell direction set not found");
}

TypeIndex CubicalComplex::cell_type(const GridCell& c) const {
    int k1 = 0;
    for (int d : c.dirs)
        if (d < n1_)
            ++k1;
    return TypeIndex{k1, static_cast<int>(c.dirs.size()) - k1};
}

std::vector<std::pair<long, int>> CubicalComplex::boundary_impl(int k, long id,
                                                                int which) const {
    GridCell c = cell(k, id);
    std::vector<std::pair<long, int>> out;
    for (size_t t = 0; t < c.dirs.size(); ++t) {
        int d = c.dirs[t];
        if (which == 1 && d >= n1_)
            continue;
        if (which == 2 && d < n1_)
            continue;
        GridCell face;
        face.dirs = c.dirs;
        face.dirs.erase(face.dirs.begin() + static_cast<long>(t));
        face.idx = c.idx;
        int base = t % 2 ? -1 : 1;
        // lower face: vertex index idx_d, sign -base
        out.emplace_back(cell_id(face), -base);
        // upper face: vertex index idx_d + 1, sign +base
        face.idx[d] += 1;
        out.emplace_back(cell_id(face), base);
        face.idx[d] -= 1;
    }
    return out;
}

std::vector<std::pair<long, int>> CubicalComplex::boundary(int k, long id) const {
    return boundary_impl(k, id, 0);
}
std::vector<std::pair<long, int>> CubicalComplex::boundary1(int k, long id) const {
    return boundary_impl(k, id, 1);
}
std::vector<std::pair<long, int>> CubicalComplex::boundary2(int k, long id) const {
    return boundary_impl(k, id, 2);
}

Point CubicalComplex::corner(const GridCell& c) const {
    Point p = origin_;
    for (int i = 0; i < n(); ++i)
        p[i] += h_ * c.idx[i];
    return p;
}

Rat CubicalComplex::cell_volume(int k) const { return rat_pow(h_, k); }

bool CubicalComplex::touches_boundary(const GridCell& c) const {
    for (int i = 0; i < n(); ++i) {
        bool in = std::find(c.dirs.begin(), c.dirs.end(), i) != c.dirs.end();
        if (in) {
            if (c.idx[i] == 0 || c.idx[i] == extents_[i] - 1)
                return true;
        } else {
            if (c.idx[i] == 0 || c.idx[i] == extents_[i])
                return true;
        }
    }
    return false;
}

std::vector<std::pair<Simplex, int>> CubicalComplex::cell_simplices(const GridCell& c) const {
    int k = static_cast<int>(c.dirs.size());
    Point base = corner(c);
    std::vector<std::pair<Simplex, int>> out;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<Point> verts{base};
        Point cur = base;
        for (int j = 0; j < k; ++j) {
            cur[c.dirs[perm[j]]] += h_;
            verts.push_back(cur);
        }
        out.emplace_back(Simplex(n(), verts), perm_parity(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

CubicalComplex CubicalComplex::padded(int pad) const {
    if (pad < 0)
        throw UsageError("padding must be nonnegative");
    Point o = origin_;
    std::vector<int> e = extents_;
    for (int i = 0; i < n(); ++i) {
        o[i] -= h_ * pad;
        e[i] += 2 * pad;
    }
    return CubicalComplex(o, h_, e, n1_);
}

GridChain grid_zero(std::shared_ptr<const CubicalComplex> cx, int k, const Group& g) {
    if (!cx)
        throw UsageError("grid chain needs a complex");
    if (k < 0 || k > cx->n())
        throw UsageError("grid chain dimension out of range");
    GridChain gc;
    gc.k = k;
    gc.group = g;
    gc.coeffs.assign(static_cast<size_t>(cx->cell_count(k)), 0);
    gc.cx = std::move(cx);
    return gc;
}

Chain grid_embed(const GridChain& g) {
    std::vector<CellTerm> terms;
    for (size_t id = 0; id < g.coeffs.size(); ++id) {
        if (g.coeffs[id] == 0)
            continue;
        GridCell c = g.cx->cell(g.k, static_cast<long>(id));
        for (const auto& [s, sign] : g.cx->cell_simplices(c))
            terms.push_back({s, GVal(g.group, sign < 0 ? -g.coeffs[id] : g.coeffs[id])});
    }
    return Chain::make(g.cx->n(), g.k, g.group, std::move(terms));
}

Rat grid_mass(const GridChain& g) {
    Rat total = 0;
    for (const auto& v : g.coeffs)
        if (v != 0)
            total += GVal(g.group, v).norm();
    return total * g.cx->cell_volume(g.k);
}

namespace {

GridChain grid_boundary_impl(const GridChain& g, int which) {
    if (g.k == 0)
        throw ZeroDimensional("boundary of a 0-dimensional grid chain");
    GridChain out = grid_zero(g.cx, g.k - 1, g.group);
    for (size_t id = 0; id < g.coeffs.size(); ++id) {
        if (g.coeffs[id] == 0)
            continue;
        auto faces = which == 0   ? g.cx->boundary(g.k, static_cast<long>(id))
                     : which == 1 ? g.cx->boundary1(g.k, static_cast<long>(id))
                                  : g.cx->boundary2(g.k, static_cast<long>(id));
        for (const auto& [fid, sign] : faces)
            out.coeffs[static_cast<size_t>(fid)] += sign * g.coeffs[id];
    }
    return out;
}

} // namespace

GridChain grid_boundary(const GridChain& g) { return grid_boundary_impl(g, 0); }
GridChain grid_boundary1(const GridChain& g) { return grid_boundary_impl(g, 1); }
GridChain grid_boundary2(const GridChain& g) { return grid_boundary_impl(g, 2); }

GridChain rasterize(std::shared_ptr<const CubicalComplex> cx, const Chain& c) {
    if (!cx)
        throw UsageError("rasterize needs a complex");
    int k = c.dim();
    if (k > 2)
        throw UsageError("rasterize supports chains of dimension <= 2");
    if (!c.is_empty() && c.ambient() != cx->n())
        throw DimensionMismatch("chain ambient dimension does not match complex");
    GridChain out = grid_zero(cx, k, c.group());

    static const std::pair<Rat, Rat> blends[] = {
        {Rat(1, 2), Rat(1, 2)}, {Rat(3, 7), Rat(4, 9)}, {Rat(2, 5), Rat(5, 11)},
        {Rat(1, 3), Rat(2, 7)}, {Rat(4, 7), Rat(1, 5)}, {Rat(5, 9), Rat(3, 11)},
        {Rat(1, 7), Rat(6, 11)}, {Rat(2, 9), Rat(5, 13)}};

    long count = cx->cell_count(k);
    for (long id = 0; id < count; ++id) {
        GridCell gc = cx->cell(k, id);
        Point corner = cx->corner(gc);
        // Cells of c lying in this grid cell's affine plane.
        std::vector<const CellTerm*> local;
        for (const auto& t : c.terms()) {
            bool inplane = true;
            for (int i = 0; i < cx->n() && inplane; ++i) {
                if (std::find(gc.dirs.begin(), gc.dirs.end(), i) != gc.dirs.end())
                    continue;
                for (const auto& v : t.cell.verts)
                    if (v[i] != corner[i]) {
                        inplane = false;
                        break;
                    }
            }
            if (inplane)
                local.push_back(&t);
        }
        if (local.empty())
            continue;
        GVal m = GVal::zero(c.group());
        bool found = false;
        for (const auto& [wa, wb] : blends) {
            Point p = corner;
            if (k >= 1)
                p[gc.dirs[0]] += cx->spacing() * wa;
            if (k >= 2)
                p[gc.dirs[1]] += cx->spacing() * wb;
            bool clean = true;
            GVal acc = GVal::zero(c.group());
            for (const CellTerm* t : local) {
                RatMat mat(k, RatVec(k));
                RatVec rhs(k);
                RatMat e = t->cell.edge_matrix();
                for (int r = 0; r < k; ++r) {
                    rhs[r] = p[gc.dirs[r]] - t->cell.verts[0][gc.dirs[r]];
                    for (int cidx = 0; cidx < k; ++cidx)
                        mat[r][cidx] = e[gc.dirs[r]][cidx];
                }
                Rat det = mat_det(mat);
                if (det == 0)
                    throw NotGridAligned("degenerate cell in grid plane");
                auto lam = solve_square(mat, rhs);
                Rat sum = 0;
                bool inside = true;
                for (const auto& l : *lam) {
                    if (l == 0) {
                        clean = false;
                        break;
                    }
                    if (l < 0)
                        inside = false;
                    sum += l;
                }
                if (!clean)
                    break;
                if (sum == 1) {
                    clean = false;
                    break;
                }
                if (inside && sum < 1) {
                    GVal contrib = t->coeff;
                    acc = acc + (sgn(det) < 0 ? -contrib : contrib);
                }
            }
            if (clean) {
                m = acc;
                found = true;
                break;
            }
        }
        if (!found)
            throw NotGridAligned("no clean sample point in a grid cell");
        out.coeffs[static_cast<size_t>(id)] = m.value();
    }
    if (!chain_is_null(grid_embed(out) - c))
        throw NotGridAligned("chain is not a grid-aligned sum of cells");
    return out;
}

} // namespace polychain
