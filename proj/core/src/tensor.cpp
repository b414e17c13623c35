#include "polychain/tensor.hpp"

#include "polychain/arrangement.hpp"
#include "polychain/errors.hpp"

#include <algorithm>
#include <map>

namespace polychain {

namespace {

// Sorts vertices lexicographically, returns the permutation parity.
int sort_vertices(Simplex& s) {
    int parity = 0;
    auto& v = s.verts;
    for (size_t i = 1; i < v.size(); ++i)
        for (size_t j = i; j > 0 && point_cmp(v[j], v[j - 1]) < 0; --j) {
            std::swap(v[j], v[j - 1]);
            parity ^= 1;
        }
    return parity;
}

int pair_cmp(const TensorTerm& a, const TensorTerm& b) {
    int c = simplex_cmp(a.cell1, b.cell1);
    if (c != 0)
        return c;
    return simplex_cmp(a.cell2, b.cell2);
}

Point top_part(const Point& v, int n1) {
    return Point(v.begin(), v.begin() + n1);
}

Point bot_part(const Point& v, int n1) {
    return Point(v.begin() + n1, v.end());
}

} // namespace

TensorChain TensorChain::make(int n1, int n2, int k1, int k2, const Group& g,
                              std::vector<TensorTerm> terms) {
    if (n1 < 0 || n2 < 0)
        throw UsageError("negative factor dimension");
    TensorChain t;
    t.n1_ = n1;
    t.n2_ = n2;
    t.k1_ = k1;
    t.k2_ = k2;
    t.group_ = g;
    for (auto& tm : terms) {
        if (tm.coeff.group() != g)
            throw GroupMismatch("term coefficient group differs from chain group");
        if (tm.cell1.ambient != n1 || tm.cell1.dim() != k1 ||
            tm.cell2.ambient != n2 || tm.cell2.dim() != k2)
            throw DimensionMismatch("cell dimensions do not match tensor type");
        for (const auto& v : tm.cell1.verts)
            if (static_cast<int>(v.size()) != n1)
                throw DimensionMismatch("first-factor vertex dimension mismatch");
        for (const auto& v : tm.cell2.verts)
            if (static_cast<int>(v.size()) != n2)
                throw DimensionMismatch("second-factor vertex dimension mismatch");
        if (tm.coeff.is_zero() || tm.cell1.is_degenerate() || tm.cell2.is_degenerate())
            continue;
        int parity = sort_vertices(tm.cell1) ^ sort_vertices(tm.cell2);
        t.terms_.push_back({std::move(tm.cell1), std::move(tm.cell2),
                            parity ? -tm.coeff : tm.coeff});
    }
    std::sort(t.terms_.begin(), t.terms_.end(),
              [](const TensorTerm& a, const TensorTerm& b) { return pair_cmp(a, b) < 0; });
    std::vector<TensorTerm> merged;
    for (auto& tm : t.terms_) {
        if (!merged.empty() && pair_cmp(merged.back(), tm) == 0) {
            merged.back().coeff = merged.back().coeff + tm.coeff;
        } else {
            merged.push_back(std::move(tm));
        }
    }
    t.terms_.clear();
    for (auto& tm : merged)
        if (!tm.coeff.is_zero())
            t.terms_.push_back(std::move(tm));
    return t;
}

TensorChain TensorChain::zero(int n1, int n2, int k1, int k2, const Group& g) {
    return make(n1, n2, k1, k2, g, {});
}

TensorChain TensorChain::operator+(const TensorChain& o) const {
    if (is_empty() && !o.is_empty())
        return o;
    if (!is_empty() && o.is_empty())
        return *this;
    if (group_ != o.group_)
        throw GroupMismatch("adding tensor chains over different groups");
    if (!is_empty() && !o.is_empty() &&
        (n1_ != o.n1_ || n2_ != o.n2_ || k1_ != o.k1_ || k2_ != o.k2_))
        throw DimensionMismatch("adding tensor chains of different types");
    std::vector<TensorTerm> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return make(n1_, n2_, k1_, k2_, group_, std::move(all));
}

TensorChain TensorChain::operator-() const {
    TensorChain t = *this;
    for (auto& tm : t.terms_)
        tm.coeff = -tm.coeff;
    return t;
}

TensorChain TensorChain::operator-(const TensorChain& o) const {
    return *this + (-o);
}

TensorChain TensorChain::scaled(const mpz_class& s) const {
    std::vector<TensorTerm> ts = terms_;
    for (auto& tm : ts)
        tm.coeff = tm.coeff.scaled(s);
    return make(n1_, n2_, k1_, k2_, group_, std::move(ts));
}

bool TensorChain::operator==(const TensorChain& o) const {
    if (n1_ != o.n1_ || n2_ != o.n2_ || group_ != o.group_)
        return false;
    if (is_empty() && o.is_empty())
        return true; // empties compare equal regardless of (possibly trivial) type
    if (k1_ != o.k1_ || k2_ != o.k2_ || terms_.size() != o.terms_.size())
        return false;
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (pair_cmp(terms_[i], o.terms_[i]) != 0 || !(terms_[i].coeff == o.terms_[i].coeff))
            return false;
    }
    return true;
}

Json TensorChain::to_json() const {
    Json j;
    j["version"] = 1;
    j["split"] = Json::array({n1_, n2_});
    j["type"] = Json::array({k1_, k2_});
    j["group"] = group_.to_json();
    Json ts = Json::array();
    for (const auto& tm : terms_) {
        Json e;
        e["cell1"] = simplex_to_json(tm.cell1);
        e["cell2"] = simplex_to_json(tm.cell2);
        e["coeff"] = tm.coeff.to_json();
        ts.push_back(e);
    }
    j["terms"] = ts;
    return j;
}

TensorChain TensorChain::from_json(const Json& j) {
    int n1 = j.at("split").at(0).get<int>();
    int n2 = j.at("split").at(1).get<int>();
    int k1 = j.at("type").at(0).get<int>();
    int k2 = j.at("type").at(1).get<int>();
    Group g = Group::from_json(j.at("group"));
    std::vector<TensorTerm> ts;
    for (const auto& e : j.at("terms")) {
        ts.push_back({simplex_from_json(e.at("cell1"), n1),
                      simplex_from_json(e.at("cell2"), n2),
                      GVal::from_json(e.at("coeff"))});
    }
    return make(n1, n2, k1, k2, g, std::move(ts));
}

TensorChain d1(const TensorChain& t) {
    if (t.k1() <= 0)
        return TensorChain::zero(t.n1(), t.n2(), t.k1() - 1, t.k2(), t.group());
    std::vector<TensorTerm> out;
    for (const auto& tm : t.terms()) {
        for (const auto& [face, sign] : boundary_faces(tm.cell1))
            out.push_back({face, tm.cell2, sign < 0 ? -tm.coeff : tm.coeff});
    }
    return TensorChain::make(t.n1(), t.n2(), t.k1() - 1, t.k2(), t.group(), std::move(out));
}

TensorChain d2(const TensorChain& t) {
    if (t.k2() <= 0)
        return TensorChain::zero(t.n1(), t.n2(), t.k1(), t.k2() - 1, t.group());
    bool flip = t.k1() % 2 != 0; // Koszul sign (-1)^{k1}
    std::vector<TensorTerm> out;
    for (const auto& tm : t.terms()) {
        for (const auto& [face, sign] : boundary_faces(tm.cell2)) {
            bool neg = (sign < 0) != flip;
            out.push_back({tm.cell1, face, neg ? -tm.coeff : tm.coeff});
        }
    }
    return TensorChain::make(t.n1(), t.n2(), t.k1(), t.k2() - 1, t.group(), std::move(out));
}

Chain embed(const TensorChain& t) {
    int n = t.n1() + t.n2();
    Chain acc = Chain::zero(n, t.k1() + t.k2(), t.group());
    for (const auto& tm : t.terms()) {
        Chain a = Chain::singleton(Group::Z(), tm.cell1);
        Chain b = Chain::singleton(t.group(), tm.cell2, tm.coeff.value());
        acc = acc + cartesian_product(a, b);
    }
    return acc;
}

IChainView i_map(const TensorChain& t) {
    IChainView v;
    v.n1 = t.n1();
    v.n2 = t.n2();
    v.k1 = t.k1();
    v.k2 = t.k2();
    v.group = t.group();
    auto cmp = [](const Simplex& a, const Simplex& b) { return simplex_cmp(a, b) < 0; };
    std::map<Simplex, std::vector<CellTerm>, decltype(cmp)> groups(cmp);
    for (const auto& tm : t.terms())
        groups[tm.cell1].push_back({tm.cell2, tm.coeff});
    for (auto& [cell1, ts] : groups) {
        Chain c = Chain::make(t.n2(), t.k2(), t.group(), std::move(ts));
        if (!c.is_empty())
            v.groups.emplace_back(cell1, std::move(c));
    }
    return v;
}

TensorChain i_inverse(const IChainView& v) {
    std::vector<TensorTerm> out;
    for (const auto& [cell1, c] : v.groups) {
        if (c.is_empty())
            continue;
        if (c.group() != v.group)
            throw GroupMismatch("i-view coefficient chain group differs from view group");
        if (c.ambient() != v.n2 || c.dim() != v.k2)
            throw DimensionMismatch("i-view coefficient chain does not match view type");
        for (const auto& t : c.terms())
            out.push_back({cell1, t.cell, t.coeff});
    }
    return TensorChain::make(v.n1, v.n2, v.k1, v.k2, v.group, std::move(out));
}

GVal chi(const Chain& c) {
    if (c.dim() != 0)
        throw DimensionMismatch("chi is defined for 0-chains only");
    GVal s = GVal::zero(c.group());
    for (const auto& t : c.terms())
        s = s + t.coeff;
    return s;
}

GVal chi_wedge(const TensorChain& t) {
    if (t.k1() != 0 || t.k2() != 0)
        throw TypeMismatch("chi_wedge is defined for type (0,0) tensor chains only");
    GVal s = GVal::zero(t.group());
    for (const auto& tm : t.terms())
        s = s + tm.coeff;
    return s;
}

TensorChain dyadic_collapse(const TensorChain& t, int level) {
    if (level < 0)
        throw UsageError("dyadic level must be nonnegative");
    if (t.k1() != 0)
        throw TypeMismatch("dyadic_collapse needs a type (0,k) tensor chain");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(level));
    std::vector<TensorTerm> out;
    for (const auto& tm : t.terms()) {
        Point p = tm.cell1.verts[0];
        for (auto& x : p)
            x = Rat(rat_floor(x * scale)) / Rat(scale);
        out.push_back({Simplex(t.n1(), {p}), tm.cell2, tm.coeff});
    }
    return TensorChain::make(t.n1(), t.n2(), t.k1(), t.k2(), t.group(), std::move(out));
}

TensorChain tensor_slice(const TensorChain& t, const SliceSpec& spec) {
    int n = t.n1() + t.n2();
    if (spec.gamma.size() != spec.at.size())
        throw UsageError("slice levels and axes differ in length");
    SliceSpec s1, s2;
    int prev = -1;
    for (size_t i = 0; i < spec.gamma.size(); ++i) {
        int axis = spec.gamma[i];
        if (axis < 0 || axis >= n)
            throw UsageError("slice axis out of range");
        if (axis <= prev)
            throw UsageError("slice axes must be strictly ascending");
        prev = axis;
        if (axis < t.n1()) {
            s1.gamma.push_back(axis);
            s1.at.push_back(spec.at[i]);
        } else {
            s2.gamma.push_back(axis - t.n1());
            s2.at.push_back(spec.at[i]);
        }
    }
    int r1 = static_cast<int>(s1.gamma.size());
    int r2 = static_cast<int>(s2.gamma.size());
    if (r1 > t.k1() || r2 > t.k2())
        throw DimensionMismatch("slicing a factor in more axes than its degree");
    std::vector<TensorTerm> out;
    for (const auto& tm : t.terms()) {
        Chain c1 = Chain::singleton(Group::Z(), tm.cell1);
        if (r1 > 0)
            c1 = slice(c1, s1);
        Chain c2 = Chain::singleton(Group::Z(), tm.cell2);
        if (r2 > 0)
            c2 = slice(c2, s2);
        for (const auto& t1 : c1.terms())
            for (const auto& t2 : c2.terms()) {
                mpz_class s = t1.coeff.value().get_num() * t2.coeff.value().get_num();
                out.push_back({t1.cell, t2.cell, tm.coeff.scaled(s)});
            }
    }
    return TensorChain::make(t.n1(), t.n2(), t.k1() - r1, t.k2() - r2, t.group(),
                             std::move(out));
}

namespace {

// --- j_decompose helpers -------------------------------------------------

// Primitive representative of the line spanned by (s,t) in the kernel of the
// 2-column matrix [c0 c1] (assumed rank <= 1 as a map R^2 -> R^m with at
// least one nonzero column handled by the caller).
std::pair<Rat, Rat> kernel_dir(const std::vector<Rat>& c0, const std::vector<Rat>& c1) {
    bool z0 = std::all_of(c0.begin(), c0.end(), [](const Rat& x) { return x == 0; });
    bool z1 = std::all_of(c1.begin(), c1.end(), [](const Rat& x) { return x == 0; });
    if (z0)
        return {1, 0};
    if (z1)
        return {0, 1};
    // c1 = lambda * c0 componentwise; read lambda off the first nonzero entry.
    for (size_t i = 0; i < c0.size(); ++i)
        if (c0[i] != 0)
            return {-c1[i] / c0[i], 1};
    return {1, 0}; // unreachable
}

// Scale a direction so its first nonzero coordinate is +1 (canonical).
void normalize_dir(RatVec& d) {
    for (const auto& x : d)
        if (x != 0) {
            Rat inv = 1 / x;
            for (auto& y : d)
                y *= inv;
            return;
        }
}

struct PlaneBucket {
    std::vector<CellTerm> cells;
};

// Exact test: does p lie on the closed segment [a, b] in the plane?
bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
    Rat cross = (b.first - a.first) * (p.second - a.second) -
                (b.second - a.second) * (p.first - a.first);
    if (cross != 0)
        return false;
    Rat dot = (p.first - a.first) * (b.first - a.first) +
              (p.second - a.second) * (b.second - a.second);
    Rat len2 = (b.first - a.first) * (b.first - a.first) +
               (b.second - a.second) * (b.second - a.second);
    return dot >= 0 && dot <= len2;
}

// Reassemble one coplanar family of profile (1,1) triangles into interval
// products.  Appends tensor terms; the caller verifies the result exactly.
void reassemble_plane(const PlaneBucket& bucket, int n1, int n2, const Group& g,
                      std::vector<TensorTerm>& out) {
    const Simplex& first = bucket.cells.front().cell;
    int n = n1 + n2;
    RatMat e = first.edge_matrix();
    std::vector<Rat> c0top(n1), c1top(n1), c0bot(n2), c1bot(n2);
    for (int i = 0; i < n1; ++i) {
        c0top[i] = e[i][0];
        c1top[i] = e[i][1];
    }
    for (int i = 0; i < n2; ++i) {
        c0bot[i] = e[n1 + i][0];
        c1bot[i] = e[n1 + i][1];
    }
    // Direction along the first factor: kernel of the bottom rows.
    auto [sa, ta] = kernel_dir(c0bot, c1bot);
    // Direction along the second factor: kernel of the top rows.
    auto [sb, tb] = kernel_dir(c0top, c1top);
    RatVec da(n), db(n);
    for (int i = 0; i < n; ++i) {
        da[i] = sa * e[i][0] + ta * e[i][1];
        db[i] = sb * e[i][0] + tb * e[i][1];
    }
    normalize_dir(da);
    normalize_dir(db);

    // Canonical base point: lexicographically smallest vertex in the bucket.
    const Point* base = &bucket.cells.front().cell.verts[0];
    for (const auto& ct : bucket.cells)
        for (const auto& v : ct.cell.verts)
            if (point_cmp(v, *base) < 0)
                base = &v;

    // In-plane (u, v) coordinates of every vertex: w = base + u*da + v*db.
    RatMat basis(n, RatVec(2));
    for (int i = 0; i < n; ++i) {
        basis[i][0] = da[i];
        basis[i][1] = db[i];
    }
    struct Tri {
        Point2 q[3];
        GVal coeff;
        int sign;
    };
    std::vector<Tri> tris;
    std::vector<Rat> us, vs;
    for (const auto& ct : bucket.cells) {
        Tri tr{{}, ct.coeff, 0};
        for (int j = 0; j < 3; ++j) {
            RatVec rhs(n);
            for (int i = 0; i < n; ++i)
                rhs[i] = ct.cell.verts[j][i] - (*base)[i];
            auto sol = solve_any(basis, rhs);
            if (!sol)
                throw NotTensorRepresentable("cell does not lie in a product plane");
            tr.q[j] = {(*sol)[0], (*sol)[1]};
            us.push_back((*sol)[0]);
            vs.push_back((*sol)[1]);
        }
        Rat det = (tr.q[1].first - tr.q[0].first) * (tr.q[2].second - tr.q[0].second) -
                  (tr.q[1].second - tr.q[0].second) * (tr.q[2].first - tr.q[0].first);
        tr.sign = sgn(det);
        if (tr.sign == 0)
            throw NotTensorRepresentable("degenerate cell in plane reassembly");
        tris.push_back(tr);
    }
    std::sort(us.begin(), us.end());
    us.erase(std::unique(us.begin(), us.end()), us.end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());

    static const std::pair<Rat, Rat> blends[] = {
        {Rat(1, 2), Rat(1, 2)}, {Rat(1, 3), Rat(1, 2)}, {Rat(1, 2), Rat(1, 3)},
        {Rat(1, 3), Rat(2, 5)}, {Rat(2, 5), Rat(1, 3)}, {Rat(3, 7), Rat(4, 7)},
        {Rat(1, 7), Rat(1, 7)}, {Rat(5, 7), Rat(2, 7)}};

    for (size_t i = 0; i + 1 < us.size(); ++i) {
        for (size_t j = 0; j + 1 < vs.size(); ++j) {
            // Pick a sample in the open box that avoids every triangle edge.
            std::optional<Point2> sample;
            for (const auto& [a, b] : blends) {
                Point2 p{us[i] + (us[i + 1] - us[i]) * a, vs[j] + (vs[j + 1] - vs[j]) * b};
                bool clean = true;
                for (const auto& tr : tris)
                    for (int eidx = 0; eidx < 3 && clean; ++eidx)
                        if (on_segment(p, tr.q[eidx], tr.q[(eidx + 1) % 3]))
                            clean = false;
                if (clean) {
                    sample = p;
                    break;
                }
            }
            if (!sample)
                throw NotTensorRepresentable("could not sample a plane region cleanly");
            GVal m = GVal::zero(g);
            for (const auto& tr : tris)
                if (locate_in_triangle(*sample, tr.q[0], tr.q[1], tr.q[2]) == Loc2::Inside)
                    m = m + (tr.sign < 0 ? -tr.coeff : tr.coeff);
            if (m.is_zero())
                continue;
            // Box [us_i, us_{i+1}] x [vs_j, vs_{j+1}] -> segment x segment.
            Point a1(n1), b1(n1), a2(n2), b2(n2);
            for (int x = 0; x < n1; ++x) {
                a1[x] = (*base)[x] + us[i] * da[x];
                b1[x] = (*base)[x] + us[i + 1] * da[x];
            }
            for (int x = 0; x < n2; ++x) {
                a2[x] = (*base)[n1 + x] + vs[j] * db[n1 + x];
                b2[x] = (*base)[n1 + x] + vs[j + 1] * db[n1 + x];
            }
            out.push_back({Simplex(n1, {a1, b1}), Simplex(n2, {a2, b2}), m});
        }
    }
}

} // namespace

std::map<TypeIndex, TensorChain> j_decompose(const Chain& c, int n1) {
    if (n1 < 0 || n1 > c.ambient())
        throw UsageError("splitting index out of range");
    int n2 = c.ambient() - n1;
    int k = c.dim();
    const Group& g = c.group();

    std::map<TypeIndex, std::vector<TensorTerm>> comps;
    std::map<AffineHull, PlaneBucket> planes; // profile (1,1) cells, per 2-plane

    for (const auto& t : c.terms()) {
        RatMat e = t.cell.edge_matrix();
        RatMat top(n1, RatVec(k)), bot(n2, RatVec(k));
        for (int i = 0; i < n1; ++i)
            for (int j = 0; j < k; ++j)
                top[i][j] = e[i][j];
        for (int i = 0; i < n2; ++i)
            for (int j = 0; j < k; ++j)
                bot[i][j] = e[n1 + i][j];
        int r1 = n1 == 0 ? 0 : mat_rank(top);
        int r2 = n2 == 0 ? 0 : mat_rank(bot);
        if (r1 + r2 != k)
            throw NotTensorRepresentable("cell spans a diagonal direction");
        if (r2 == 0) {
            // cell x point: vertex order (hence orientation) carries over.
            std::vector<Point> vs1;
            for (const auto& v : t.cell.verts)
                vs1.push_back(top_part(v, n1));
            comps[{k, 0}].push_back({Simplex(n1, vs1),
                                     Simplex(n2, {bot_part(t.cell.verts[0], n1)}),
                                     t.coeff});
        } else if (r1 == 0) {
            std::vector<Point> vs2;
            for (const auto& v : t.cell.verts)
                vs2.push_back(bot_part(v, n1));
            comps[{0, k}].push_back({Simplex(n1, {top_part(t.cell.verts[0], n1)}),
                                     Simplex(n2, vs2), t.coeff});
        } else if (r1 == 1 && r2 == 1 && k == 2) {
            planes[affine_hull(t.cell)].cells.push_back(t);
        } else {
            throw NotTensorRepresentable(
                "mixed cells of total degree >= 3 are not reassembled");
        }
    }

    for (const auto& [hull, bucket] : planes) {
        std::vector<TensorTerm> terms;
        reassemble_plane(bucket, n1, n2, g, terms);
        TensorChain part = TensorChain::make(n1, n2, 1, 1, g, terms);
        Chain orig = Chain::make(c.ambient(), 2, g, bucket.cells);
        if (!chain_is_null(embed(part) - orig))
            throw NotTensorRepresentable("plane multiplicities are not a box sum");
        auto& dst = comps[{1, 1}];
        dst.insert(dst.end(), terms.begin(), terms.end());
    }

    std::map<TypeIndex, TensorChain> out;
    for (auto& [ty, terms] : comps) {
        TensorChain tc = TensorChain::make(n1, n2, ty.k1, ty.k2, g, std::move(terms));
        if (!tc.is_empty())
            out.emplace(ty, std::move(tc));
    }
    return out;
}

} // namespace polychain
