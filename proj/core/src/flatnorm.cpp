#include "polychain/flatnorm.hpp"

#include "polychain/errors.hpp"

#include <algorithm>

namespace polychain {

namespace {

void require_lp_group(const Group& g) {
    if (g.kind == GroupKind::IntegersModM)
        throw UsageError("flat-norm programs need Z or Q coefficients");
}

// Shared LP assembly: columns come in +/- pairs for each logical variable
// block; rows are k-cell equations.  Returns (solution, per-block values).
struct Assembled {
    LPSolution sol;
    std::vector<RatVec> blocks; // signed combined values per block
};

Assembled solve_blocks(const std::vector<std::vector<std::pair<long, int>>>& cols,
                       const std::vector<Rat>& colcost,
                       const std::vector<std::pair<int, long>>& colkey,
                       const std::vector<long>& blocksizes, const RatVec& rhs) {
    int m = static_cast<int>(rhs.size());
    int ncols = 2 * static_cast<int>(cols.size());
    RatMat a(m, RatVec(ncols, 0));
    RatVec b = rhs;
    RatVec c(ncols);
    for (size_t j = 0; j < cols.size(); ++j) {
        for (const auto& [row, s] : cols[j]) {
            a[row][2 * j] = s;
            a[row][2 * j + 1] = -s;
        }
        c[2 * j] = colcost[j];
        c[2 * j + 1] = colcost[j];
    }
    // Sign-normalize rows so the Q00/q identity block provides a basis.
    // Columns 0..m-1 of `cols` are exactly the unit columns e_row (the first
    // block is always the identity), so basis[i] = the +/- copy of column i.
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        if (b[i] < 0) {
            for (auto& v : a[i])
                v = -v;
            b[i] = -b[i];
        }
        basis[i] = a[i][2 * i] == 1 ? 2 * i : 2 * i + 1;
    }
    Assembled out;
    out.sol = solve_lp_from_basis(a, b, c, basis);
    if (out.sol.status == LPStatus::Optimal && !lp_certificate_ok(a, b, c, out.sol))
        out.sol.status = LPStatus::Infeasible; // should be unreachable
    for (long bs : blocksizes)
        out.blocks.emplace_back(bs, 0);
    for (size_t j = 0; j < cols.size(); ++j) {
        Rat v = out.sol.x[2 * j] - out.sol.x[2 * j + 1];
        if (v != 0)
            out.blocks[colkey[j].first][colkey[j].second] = v;
    }
    return out;
}

bool chain_touches_boundary(const GridChain& g) {
    for (size_t id = 0; id < g.coeffs.size(); ++id)
        if (g.coeffs[id] != 0 &&
            g.cx->touches_boundary(g.cx->cell(g.k, static_cast<long>(id))))
            return true;
    return false;
}

} // namespace

LPResult flat_norm(const GridChain& g) {
    require_lp_group(g.group);
    const auto& cx = *g.cx;
    int k = g.k;
    long nk = cx.cell_count(k);
    long nk1 = k + 1 <= cx.n() ? cx.cell_count(k + 1) : 0;

    std::vector<std::vector<std::pair<long, int>>> cols;
    std::vector<Rat> colcost;
    std::vector<std::pair<int, long>> colkey;
    for (long i = 0; i < nk; ++i) {
        cols.push_back({{i, 1}});
        colcost.push_back(cx.cell_volume(k));
        colkey.emplace_back(0, i);
    }
    for (long s = 0; s < nk1; ++s) {
        cols.push_back(cx.boundary(k + 1, s));
        colcost.push_back(cx.cell_volume(k + 1));
        colkey.emplace_back(1, s);
    }
    Assembled res = solve_blocks(cols, colcost, colkey, {nk, nk1}, g.coeffs);

    LPResult out;
    out.value = res.sol.value;
    out.dual = res.sol.y;
    out.certified = res.sol.status == LPStatus::Optimal;
    out.pivots = res.sol.pivots;
    GridChain q = grid_zero(g.cx, k, g.group);
    q.coeffs = std::move(res.blocks[0]);
    GridChain r = grid_zero(g.cx, std::min(k + 1, cx.n()), g.group);
    if (nk1 > 0)
        r.coeffs = std::move(res.blocks[1]);
    out.boundary_touched = chain_touches_boundary(q) || chain_touches_boundary(r);
    out.witness.emplace("Q", std::move(q));
    out.witness.emplace("R", std::move(r));
    return out;
}

LPResult tensor_flat_norm(const GridChain& g, TypeIndex type) {
    require_lp_group(g.group);
    const auto& cx = *g.cx;
    int k = g.k;
    if (type.k1 < 0 || type.k2 < 0 || type.k1 + type.k2 != k)
        throw TypeMismatch("type does not match grid chain dimension");

    // Row space: the k-cells of the requested type, in id order.
    std::vector<long> rows;          // row -> cell id
    std::vector<long> rowof(cx.cell_count(k), -1);
    for (long id = 0; id < cx.cell_count(k); ++id) {
        if (cx.cell_type(cx.cell(k, id)) == type) {
            rowof[id] = static_cast<long>(rows.size());
            rows.push_back(id);
        } else if (g.coeffs[static_cast<size_t>(id)] != 0) {
            throw TypeMismatch("grid chain supported outside the requested type");
        }
    }
    RatVec rhs(rows.size());
    for (size_t r = 0; r < rows.size(); ++r)
        rhs[r] = g.coeffs[static_cast<size_t>(rows[r])];

    std::vector<std::vector<std::pair<long, int>>> cols;
    std::vector<Rat> colcost;
    std::vector<std::pair<int, long>> colkey;
    // Q00: identity on the typed rows.
    for (size_t r = 0; r < rows.size(); ++r) {
        cols.push_back({{static_cast<long>(r), 1}});
        colcost.push_back(cx.cell_volume(k));
        colkey.emplace_back(0, rows[r]);
    }
    auto push_block = [&](int blockidx, TypeIndex ty, int dim, int order) {
        if (dim > cx.n())
            return;
        for (long id = 0; id < cx.cell_count(dim); ++id) {
            if (!(cx.cell_type(cx.cell(dim, id)) == ty))
                continue;
            std::map<long, int> entries;
            if (order == 1) {
                auto faces = blockidx == 1 ? cx.boundary1(dim, id) : cx.boundary2(dim, id);
                for (const auto& [fid, s] : faces)
                    entries[fid] += s;
            } else {
                for (const auto& [mid, s1] : cx.boundary1(dim, id))
                    for (const auto& [fid, s2] : cx.boundary2(dim - 1, mid))
                        entries[fid] += s1 * s2;
            }
            std::vector<std::pair<long, int>> col;
            for (const auto& [fid, s] : entries)
                if (s != 0) {
                    if (rowof[fid] < 0)
                        throw TypeMismatch("boundary leaves the typed component");
                    col.emplace_back(rowof[fid], s);
                }
            cols.push_back(std::move(col));
            colcost.push_back(cx.cell_volume(dim));
            colkey.emplace_back(blockidx, id);
        }
    };
    push_block(1, TypeIndex{type.k1 + 1, type.k2}, k + 1, 1);
    push_block(2, TypeIndex{type.k1, type.k2 + 1}, k + 1, 1);
    push_block(3, TypeIndex{type.k1 + 1, type.k2 + 1}, k + 2, 2);

    std::vector<long> sizes{cx.cell_count(k),
                            k + 1 <= cx.n() ? cx.cell_count(k + 1) : 0,
                            k + 1 <= cx.n() ? cx.cell_count(k + 1) : 0,
                            k + 2 <= cx.n() ? cx.cell_count(k + 2) : 0};
    Assembled res = solve_blocks(cols, colcost, colkey, sizes, rhs);

    LPResult out;
    out.value = res.sol.value;
    out.dual = res.sol.y;
    out.certified = res.sol.status == LPStatus::Optimal;
    out.pivots = res.sol.pivots;
    const char* names[4] = {"Q00", "Q10", "Q01", "Q11"};
    int dims[4] = {k, k + 1, k + 1, k + 2};
    for (int bi = 0; bi < 4; ++bi) {
        GridChain w = grid_zero(g.cx, std::min(dims[bi], cx.n()), g.group);
        if (sizes[bi] > 0)
            w.coeffs = std::move(res.blocks[bi]);
        out.boundary_touched = out.boundary_touched || chain_touches_boundary(w);
        out.witness.emplace(names[bi], std::move(w));
    }
    return out;
}

GridChain transplant(const GridChain& g, std::shared_ptr<const CubicalComplex> to) {
    const auto& src = *g.cx;
    const auto& dst = *to;
    if (src.n() != dst.n() || src.spacing() != dst.spacing())
        throw UsageError("transplant needs equal dimension and spacing");
    std::vector<long> shift(src.n());
    for (int i = 0; i < src.n(); ++i) {
        Rat d = (src.origin()[i] - dst.origin()[i]) / src.spacing();
        if (d.get_den() != 1)
            throw NotGridAligned("origins differ by a non-integer number of cells");
        shift[i] = d.get_num().get_si();
    }
    GridChain out = grid_zero(std::move(to), g.k, g.group);
    for (size_t id = 0; id < g.coeffs.size(); ++id) {
        if (g.coeffs[id] == 0)
            continue;
        GridCell c = src.cell(g.k, static_cast<long>(id));
        for (int i = 0; i < src.n(); ++i)
            c.idx[i] = static_cast<int>(c.idx[i] + shift[i]);
        long nid;
        try {
            nid = dst.cell_id(c);
        } catch (const UsageError&) {
            throw NotGridAligned("cell falls outside the target complex");
        }
        out.coeffs[static_cast<size_t>(nid)] = g.coeffs[id];
    }
    return out;
}

CrossMassBounds cross_mass_bounds(const Chain& c, int n1) {
    if (n1 < 0 || n1 > c.ambient())
        throw UsageError("splitting index out of range");
    int n = c.ambient();
    int n2 = n - n1;
    int k = c.dim();
    CrossMassBounds out;
    if (k <= std::max(n1, n2))
        out.m = 1 + std::min({k, n1, n2});
    else
        out.m = 1 + n - k;
    out.constant = CertifiedReal::sqrt_of(Rat(out.m));
    out.mass = c.mass();
    out.lower = out.mass.value;
    out.upper = out.constant * out.mass.value;
    return out;
}

} // namespace polychain
