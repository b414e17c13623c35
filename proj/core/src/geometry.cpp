#include "polychain/geometry.hpp"

#include "polychain/errors.hpp"

#include <algorithm>

namespace polychain {

int point_cmp(const Point& a, const Point& b) {
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c)
            return c;
    }
    return 0;
}

RatMat Simplex::edge_matrix() const {
    int k = dim();
    RatMat e(ambient, RatVec(std::max(k, 0), 0));
    for (int j = 1; j <= k; ++j)
        for (int i = 0; i < ambient; ++i)
            e[i][j - 1] = verts[j][i] - verts[0][i];
    return e;
}

bool Simplex::is_degenerate() const {
    int k = dim();
    if (k == 0)
        return false;
    return mat_rank(edge_matrix()) < k;
}

bool Simplex::operator==(const Simplex& o) const {
    return ambient == o.ambient && verts == o.verts;
}

int simplex_cmp(const Simplex& a, const Simplex& b) {
    if (a.verts.size() != b.verts.size())
        return a.verts.size() < b.verts.size() ? -1 : 1;
    for (size_t i = 0; i < a.verts.size(); ++i) {
        int c = point_cmp(a.verts[i], b.verts[i]);
        if (c)
            return c;
    }
    return 0;
}

std::vector<std::pair<Simplex, int>> boundary_faces(const Simplex& s) {
    if (s.dim() == 0)
        throw ZeroDimensional("boundary of a 0-simplex");
    std::vector<std::pair<Simplex, int>> out;
    int sign = 1;
    for (size_t i = 0; i < s.verts.size(); ++i) {
        Simplex f;
        f.ambient = s.ambient;
        for (size_t j = 0; j < s.verts.size(); ++j)
            if (j != i)
                f.verts.push_back(s.verts[j]);
        out.emplace_back(std::move(f), sign);
        sign = -sign;
    }
    return out;
}

Rat squared_volume(const Simplex& s) {
    int k = s.dim();
    if (k == 0)
        return 1;
    RatMat e = s.edge_matrix();
    RatMat g(k, RatVec(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            Rat acc = 0;
            for (int r = 0; r < s.ambient; ++r)
                acc += e[r][i] * e[r][j];
            g[i][j] = acc;
        }
    Rat det = mat_det(g);
    mpz_class fact = 1;
    for (int i = 2; i <= k; ++i)
        fact *= i;
    return det / Rat(fact * fact);
}

CertifiedReal volume(const Simplex& s) { return CertifiedReal::sqrt_of(squared_volume(s)); }

std::vector<std::vector<int>> k_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n)
        return out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i)
        cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - k + i)
            --i;
        if (i < 0)
            break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j)
            cur[j] = cur[j - 1] + 1;
    }
    return out;
}

namespace {

Rat minor_det(const RatMat& m, const std::vector<int>& rows) {
    size_t k = rows.size();
    RatMat sub(k, RatVec(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j)
            sub[i][j] = m[rows[i]][j];
    return mat_det(sub);
}

} // namespace

std::map<std::vector<int>, Rat> pluecker(const Simplex& s) {
    std::map<std::vector<int>, Rat> out;
    int k = s.dim();
    RatMat e = s.edge_matrix();
    for (const auto& gamma : k_subsets(s.ambient, k))
        out[gamma] = minor_det(e, gamma);
    return out;
}

Rat wedge_pairing(const RatMat& a, const RatMat& b) {
    if (a.empty() || a[0].empty())
        return 1; // empty wedge pairing, 0-dimensional convention
    int n = static_cast<int>(a.size());
    int k = static_cast<int>(a[0].size());
    Rat acc = 0;
    for (const auto& gamma : k_subsets(n, k)) {
        Rat da = minor_det(a, gamma);
        if (da == 0)
            continue;
        acc += da * minor_det(b, gamma);
    }
    return acc;
}

namespace {

// Orientation sign of a slice piece q of s: sign(<e_axis ^ zeta_q, zeta_s>).
int slice_sign(const Simplex& s, const Simplex& q, int axis) {
    int k = s.dim();
    RatMat a(s.ambient, RatVec(k, 0));
    a[axis][0] = 1;
    RatMat eq = q.edge_matrix();
    for (int j = 1; j < k; ++j)
        for (int i = 0; i < s.ambient; ++i)
            a[i][j] = eq[i][j - 1];
    Rat p = wedge_pairing(a, s.edge_matrix());
    return sgn(p);
}

} // namespace

std::vector<std::pair<Simplex, int>> slice_by_hyperplane(const Simplex& s, int axis,
                                                         const Rat& level) {
    int k = s.dim();
    if (k == 0)
        throw ZeroDimensional("slice of a 0-simplex");
    if (axis < 0 || axis >= s.ambient)
        throw UsageError("slice axis out of range");
    std::vector<int> below, above;
    for (size_t i = 0; i < s.verts.size(); ++i) {
        int c = cmp(s.verts[i][axis], level);
        if (c == 0)
            throw NonGenericLevel("vertex lies on the slicing hyperplane x_" +
                                  std::to_string(axis + 1) + " = " + rat_to_string(level));
        (c < 0 ? below : above).push_back(static_cast<int>(i));
    }
    std::vector<std::pair<Simplex, int>> out;
    if (below.empty() || above.empty())
        return out;

    // Edge crossings u[a][b] between below-vertex a and above-vertex b.
    auto crossing = [&](int ia, int ib) {
        const Point& va = s.verts[ia];
        const Point& vb = s.verts[ib];
        Rat t = (level - va[axis]) / (vb[axis] - va[axis]);
        Point u(s.ambient);
        for (int i = 0; i < s.ambient; ++i)
            u[i] = va[i] + t * (vb[i] - va[i]);
        u[axis] = level; // exact by construction, assert intent
        return u;
    };
    size_t na = below.size(), nb = above.size();
    std::vector<std::vector<Point>> u(na, std::vector<Point>(nb));
    for (size_t a = 0; a < na; ++a)
        for (size_t b = 0; b < nb; ++b)
            u[a][b] = crossing(below[a], above[b]);

    if (k == 1) {
        Simplex pt(s.ambient, {u[0][0]});
        int sign = slice_sign(s, pt, axis);
        if (sign)
            out.emplace_back(std::move(pt), sign);
        return out;
    }

    // The section is affinely a product of two simplices; triangulate it by
    // monotone staircase paths through the crossing grid.
    size_t rows = na - 1, cols = nb - 1; // lattice path steps
    std::vector<std::vector<std::pair<size_t, size_t>>> paths;
    std::vector<std::pair<size_t, size_t>> cur{{0, 0}};
    auto rec = [&](auto&& self, size_t r, size_t c) -> void {
        if (r == rows && c == cols) {
            paths.push_back(cur);
            return;
        }
        if (r < rows) {
            cur.emplace_back(r + 1, c);
            self(self, r + 1, c);
            cur.pop_back();
        }
        if (c < cols) {
            cur.emplace_back(r, c + 1);
            self(self, r, c + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);

    for (const auto& path : paths) {
        Simplex q;
        q.ambient = s.ambient;
        for (auto [a, b] : path)
            q.verts.push_back(u[a][b]);
        if (q.is_degenerate())
            continue;
        int sign = slice_sign(s, q, axis);
        if (sign)
            out.emplace_back(std::move(q), sign);
    }
    return out;
}

std::vector<Simplex> clip_halfspace(const Simplex& s, int axis, const Rat& level, bool upper) {
    if (axis < 0 || axis >= s.ambient)
        throw UsageError("clip axis out of range");
    // sign classification with zeros allowed
    int strict_lo = 0, strict_hi = 0;
    for (const auto& v : s.verts) {
        int c = cmp(v[axis], level);
        if (c < 0)
            ++strict_lo;
        else if (c > 0)
            ++strict_hi;
    }
    std::vector<Simplex> out;
    if (strict_lo == 0 && strict_hi == 0) {
        // entirely inside the clipping hyperplane: measure zero in the
        // half-space boundary, contributes nothing
        return out;
    }
    if ((upper && strict_lo == 0) || (!upper && strict_hi == 0)) {
        out.push_back(s);
        return out;
    }
    if ((upper && strict_hi == 0) || (!upper && strict_lo == 0))
        return out;
    // find a strictly crossing edge (i below, j above) and split on it
    int vi = -1, vj = -1;
    for (size_t i = 0; i < s.verts.size() && vi < 0; ++i) {
        if (cmp(s.verts[i][axis], level) >= 0)
            continue;
        for (size_t j = 0; j < s.verts.size(); ++j) {
            if (cmp(s.verts[j][axis], level) > 0) {
                vi = static_cast<int>(i);
                vj = static_cast<int>(j);
                break;
            }
        }
    }
    const Point& va = s.verts[vi];
    const Point& vb = s.verts[vj];
    Rat t = (level - va[axis]) / (vb[axis] - va[axis]);
    Point u(s.ambient);
    for (int i = 0; i < s.ambient; ++i)
        u[i] = va[i] + t * (vb[i] - va[i]);
    u[axis] = level;
    // replacing a vertex by an interior point of edge (vi, vj) keeps the
    // orientation; the two halves tile s
    Simplex s1 = s;
    s1.verts[vi] = u;
    Simplex s2 = s;
    s2.verts[vj] = u;
    for (const Simplex* part : {&s1, &s2}) {
        if (part->is_degenerate())
            continue;
        auto sub = clip_halfspace(*part, axis, level, upper);
        for (auto& piece : sub)
            out.push_back(std::move(piece));
    }
    return out;
}

Location locate_point(const Simplex& s, const Point& x) {
    int k = s.dim();
    RatMat e = s.edge_matrix();
    RatVec rhs(s.ambient);
    for (int i = 0; i < s.ambient; ++i)
        rhs[i] = x[i] - s.verts[0][i];
    if (k == 0)
        return std::all_of(rhs.begin(), rhs.end(), [](const Rat& r) { return r == 0; })
                   ? Location::Inside
                   : Location::Outside;
    auto sol = solve_any(e, rhs);
    if (!sol)
        return Location::Outside;
    // check residual: solve_any only guarantees consistency on pivot rows
    RatVec back = mat_vec(e, *sol);
    for (int i = 0; i < s.ambient; ++i)
        if (back[i] != rhs[i])
            return Location::Outside;
    Rat sum = 0;
    bool on_boundary = false;
    for (const Rat& lambda : *sol) {
        int c = sgn(lambda);
        if (c < 0)
            return Location::Outside;
        if (c == 0)
            on_boundary = true;
        sum += lambda;
    }
    int c = cmp(sum, Rat(1));
    if (c > 0)
        return Location::Outside;
    if (c == 0)
        on_boundary = true;
    return on_boundary ? Location::Boundary : Location::Inside;
}

bool AffineHull::operator<(const AffineHull& o) const {
    if (normals.size() != o.normals.size())
        return normals.size() < o.normals.size();
    for (size_t i = 0; i < normals.size(); ++i)
        for (size_t j = 0; j < normals[i].size(); ++j) {
            int c = cmp(normals[i][j], o.normals[i][j]);
            if (c)
                return c < 0;
        }
    for (size_t i = 0; i < offsets.size(); ++i) {
        int c = cmp(offsets[i], o.offsets[i]);
        if (c)
            return c < 0;
    }
    return false;
}

AffineHull affine_hull(const Simplex& s) {
    // nullspace of the span of edge vectors, in canonical RREF form
    int n = s.ambient;
    RatMat rows; // edge vectors as rows
    RatMat e = s.edge_matrix();
    for (int j = 0; j < s.dim(); ++j) {
        RatVec r(n);
        for (int i = 0; i < n; ++i)
            r[i] = e[i][j];
        rows.push_back(r);
    }
    RatMat m = rows;
    auto pivots = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (int p : pivots)
        is_pivot[p] = true;
    AffineHull h;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        // normal vector: x_f - sum over pivot rows of coefficient
        RatVec nf(n, 0);
        nf[f] = 1;
        for (size_t i = 0; i < pivots.size(); ++i)
            nf[pivots[i]] = -m[i][f];
        h.normals.push_back(nf);
        Rat d = 0;
        for (int i = 0; i < n; ++i)
            d += nf[i] * s.verts[0][i];
        h.offsets.push_back(d);
    }
    return h;
}

Json point_to_json(const Point& p) {
    Json arr = Json::array();
    for (const auto& c : p)
        arr.push_back(rat_to_string(c));
    return arr;
}

Point point_from_json(const Json& j, int expected_dim) {
    if (!j.is_array())
        throw ParseError("point must be a JSON array");
    Point p;
    for (const auto& c : j)
        p.push_back(c.is_string() ? rat_from_string(c.get<std::string>())
                                  : rat_from_string(c.dump()));
    if (expected_dim >= 0 && static_cast<int>(p.size()) != expected_dim)
        throw ParseError("point dimension mismatch");
    return p;
}

Json simplex_to_json(const Simplex& s) {
    Json arr = Json::array();
    for (const auto& v : s.verts)
        arr.push_back(point_to_json(v));
    return arr;
}

Simplex simplex_from_json(const Json& j, int ambient) {
    if (!j.is_array() || j.empty())
        throw ParseError("cell must be a non-empty array of vertices");
    Simplex s;
    s.ambient = ambient;
    for (const auto& v : j)
        s.verts.push_back(point_from_json(v, ambient));
    return s;
}

} // namespace polychain
