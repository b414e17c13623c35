#include "polychain/chain.hpp"

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

} // namespace

Chain Chain::make(int ambient, int dim, const Group& g, std::vector<CellTerm> terms) {
    Chain c;
    c.ambient_ = ambient;
    c.dim_ = dim;
    c.group_ = g;
    for (auto& t : terms) {
        if (t.coeff.group() != g)
            throw GroupMismatch("cell coefficient group differs from chain group");
        if (t.cell.ambient != ambient || t.cell.dim() != dim)
            throw DimensionMismatch("cell dimensions do not match chain");
        for (const auto& v : t.cell.verts)
            if (static_cast<int>(v.size()) != ambient)
                throw DimensionMismatch("vertex dimension does not match ambient");
        if (t.coeff.is_zero() || t.cell.is_degenerate())
            continue;
        int parity = sort_vertices(t.cell);
        c.terms_.push_back({std::move(t.cell), parity ? -t.coeff : t.coeff});
    }
    std::sort(c.terms_.begin(), c.terms_.end(), [](const CellTerm& a, const CellTerm& b) {
        return simplex_cmp(a.cell, b.cell) < 0;
    });
    std::vector<CellTerm> merged;
    for (auto& t : c.terms_) {
        if (!merged.empty() && simplex_cmp(merged.back().cell, t.cell) == 0) {
            merged.back().coeff = merged.back().coeff + t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    c.terms_.clear();
    for (auto& t : merged)
        if (!t.coeff.is_zero())
            c.terms_.push_back(std::move(t));
    return c;
}

Chain Chain::zero(int ambient, int dim, const Group& g) {
    return make(ambient, dim, g, {});
}

Chain Chain::singleton(const Group& g, const Simplex& cell, const Rat& coeff) {
    return make(cell.ambient, cell.dim(), g, {{cell, GVal(g, coeff)}});
}

Chain Chain::operator+(const Chain& o) const {
    if (is_empty() && !o.is_empty())
        return o;
    if (!is_empty() && o.is_empty())
        return *this;
    if (group_ != o.group_)
        throw GroupMismatch("adding chains over different groups");
    if (!is_empty() && !o.is_empty() && (ambient_ != o.ambient_ || dim_ != o.dim_))
        throw DimensionMismatch("adding chains of different dimensions");
    std::vector<CellTerm> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return make(ambient_, dim_, group_, std::move(all));
}

Chain Chain::operator-() const {
    std::vector<CellTerm> ts = terms_;
    for (auto& t : ts)
        t.coeff = -t.coeff;
    Chain c = *this;
    c.terms_ = std::move(ts);
    return c;
}

Chain Chain::operator-(const Chain& o) const { return *this + (-o); }

Chain Chain::scaled(const mpz_class& n) const {
    std::vector<CellTerm> ts = terms_;
    for (auto& t : ts)
        t.coeff = t.coeff.scaled(n);
    return make(ambient_, dim_, group_, std::move(ts));
}

bool Chain::operator==(const Chain& o) const {
    if (group_ != o.group_)
        return false;
    if (terms_.empty() && o.terms_.empty())
        return true;
    if (ambient_ != o.ambient_ || dim_ != o.dim_ || terms_.size() != o.terms_.size())
        return false;
    for (size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].coeff == o.terms_[i].coeff) ||
            simplex_cmp(terms_[i].cell, o.terms_[i].cell) != 0)
            return false;
    return true;
}

Chain Chain::boundary() const {
    if (dim_ == 0)
        throw ZeroDimensional("boundary of a 0-chain");
    std::vector<CellTerm> out;
    for (const auto& t : terms_)
        for (auto& [face, sign] : boundary_faces(t.cell))
            out.push_back({face, sign < 0 ? -t.coeff : t.coeff});
    return make(ambient_, dim_ - 1, group_, std::move(out));
}

bool cells_overlap_positively(const Simplex& a, const Simplex& b, bool& unknown) {
    unknown = false;
    int k = a.dim();
    if (!(affine_hull(a) == affine_hull(b)))
        return false;
    if (k == 0)
        return true; // equal hull of points means equal points
    if (k == 1) {
        // common line: compare parameter intervals along a nonzero coordinate
        RatMat e = a.edge_matrix();
        int axis = -1;
        for (int i = 0; i < a.ambient; ++i)
            if (e[i][0] != 0) {
                axis = i;
                break;
            }
        auto span = [&](const Simplex& s) {
            Rat t0 = s.verts[0][axis], t1 = s.verts[1][axis];
            return std::pair<Rat, Rat>{std::min(t0, t1), std::max(t0, t1)};
        };
        auto [alo, ahi] = span(a);
        auto [blo, bhi] = span(b);
        return std::max(alo, blo) < std::min(ahi, bhi);
    }
    if (k == 2) {
        // common plane: project to two independent coordinates and clip
        RatMat e = a.edge_matrix();
        std::vector<int> gamma;
        for (const auto& g : k_subsets(a.ambient, 2)) {
            RatMat sub{{e[g[0]][0], e[g[0]][1]}, {e[g[1]][0], e[g[1]][1]}};
            if (mat_det(sub) != 0) {
                gamma = g;
                break;
            }
        }
        auto tri = [&](const Simplex& s) {
            std::vector<Point2> p;
            for (const auto& v : s.verts)
                p.emplace_back(v[gamma[0]], v[gamma[1]]);
            if (sgn(cross2(p[0], p[1], p[2])) < 0)
                std::swap(p[1], p[2]);
            return p;
        };
        std::vector<Point2> pa = tri(a), pb = tri(b);
        std::vector<Point2> clipped = pa;
        for (size_t i = 0; i < 3 && !clipped.empty(); ++i)
            clipped = clip_polygon_halfplane(clipped, pb[i], pb[(i + 1) % 3]);
        return !clipped.empty() && polygon_doubled_area(clipped) > 0;
    }
    unknown = true;
    return false;
}

MassReport Chain::mass(bool certify_overlap) const {
    MassReport rep;
    for (const auto& t : terms_) {
        Rat nrm = t.coeff.norm();
        Rat sq = squared_volume(t.cell);
        rep.terms.push_back({nrm, sq});
        rep.value += CertifiedReal(nrm) * CertifiedReal::sqrt_of(sq);
    }
    rep.interval = rep.value.interval();
    if (!certify_overlap)
        return rep;
    rep.certified = true;
    for (size_t i = 0; i < terms_.size() && rep.certified; ++i)
        for (size_t j = i + 1; j < terms_.size(); ++j) {
            bool unknown = false;
            if (cells_overlap_positively(terms_[i].cell, terms_[j].cell, unknown)) {
                rep.certified = false;
                rep.overlap_witness = {static_cast<int>(i), static_cast<int>(j)};
                break;
            }
            if (unknown) {
                rep.certified = false;
                rep.overlap_unknown = true;
                break;
            }
        }
    return rep;
}

Chain restrict_halfspace(const Chain& c, int axis, const Rat& level, bool upper) {
    std::vector<CellTerm> out;
    for (const auto& t : c.terms()) {
        bool all_on_plane = true;
        for (const auto& v : t.cell.verts)
            if (v[axis] != level) {
                all_on_plane = false;
                break;
            }
        if (all_on_plane)
            throw NonGenericBox("cell lies inside the restriction hyperplane x_" +
                                std::to_string(axis + 1) + " = " + rat_to_string(level));
        for (auto& piece : clip_halfspace(t.cell, axis, level, upper))
            out.push_back({std::move(piece), t.coeff});
    }
    return Chain::make(c.ambient(), c.dim(), c.group(), std::move(out));
}

Chain Chain::restrict_box(const Box& box) const {
    if (static_cast<int>(box.size()) != ambient_)
        throw DimensionMismatch("box arity differs from ambient dimension");
    Chain cur = *this;
    for (int axis = 0; axis < ambient_; ++axis) {
        if (box[axis].first)
            cur = restrict_halfspace(cur, axis, *box[axis].first, true);
        if (box[axis].second)
            cur = restrict_halfspace(cur, axis, *box[axis].second, false);
    }
    return cur;
}

Chain Chain::push_forward_projection(const std::vector<int>& target_axes) const {
    std::vector<bool> keep(ambient_, false);
    for (int a : target_axes) {
        if (a < 0 || a >= ambient_)
            throw UsageError("projection axis out of range");
        keep[a] = true;
    }
    std::vector<CellTerm> out;
    for (const auto& t : terms_) {
        Simplex s = t.cell;
        for (auto& v : s.verts)
            for (int i = 0; i < ambient_; ++i)
                if (!keep[i])
                    v[i] = 0;
        out.push_back({std::move(s), t.coeff});
    }
    return make(ambient_, dim_, group_, std::move(out));
}

Chain cartesian_product(const Chain& a, const Chain& b) {
    if (a.group().kind != GroupKind::Integers)
        throw GroupMismatch("first factor of a cartesian product must be an integer chain");
    int n = a.ambient() + b.ambient();
    int k1 = a.dim(), k2 = b.dim();
    std::vector<CellTerm> out;
    for (const auto& ta : a.terms()) {
        for (const auto& tb : b.terms()) {
            // product vertices w_ij = (p_i, q_j)
            auto w = [&](int i, int j) {
                Point p = ta.cell.verts[i];
                const Point& q = tb.cell.verts[j];
                p.insert(p.end(), q.begin(), q.end());
                return p;
            };
            // target orientation xi_a ^ xi_b as an n x (k1+k2) matrix
            RatMat target(n, RatVec(k1 + k2, 0));
            RatMat ea = ta.cell.edge_matrix();
            RatMat eb = tb.cell.edge_matrix();
            for (int i = 0; i < a.ambient(); ++i)
                for (int j = 0; j < k1; ++j)
                    target[i][j] = ea[i][j];
            for (int i = 0; i < b.ambient(); ++i)
                for (int j = 0; j < k2; ++j)
                    target[a.ambient() + i][k1 + j] = eb[i][j];
            // staircase triangulation of the product
            std::vector<std::vector<std::pair<int, int>>> paths;
            std::vector<std::pair<int, int>> cur{{0, 0}};
            auto rec = [&](auto&& self, int r, int c) -> void {
                if (r == k1 && c == k2) {
                    paths.push_back(cur);
                    return;
                }
                if (r < k1) {
                    cur.emplace_back(r + 1, c);
                    self(self, r + 1, c);
                    cur.pop_back();
                }
                if (c < k2) {
                    cur.emplace_back(r, c + 1);
                    self(self, r, c + 1);
                    cur.pop_back();
                }
            };
            rec(rec, 0, 0);
            GVal coeff = tb.coeff.scaled(ta.coeff.value().get_num());
            for (const auto& path : paths) {
                Simplex piece;
                piece.ambient = n;
                for (auto [i, j] : path)
                    piece.verts.push_back(w(i, j));
                if (piece.is_degenerate())
                    continue;
                int sign = sgn(wedge_pairing(piece.edge_matrix(), target));
                if (!sign)
                    continue;
                out.push_back({std::move(piece), sign < 0 ? -coeff : coeff});
            }
        }
    }
    return Chain::make(n, k1 + k2, b.group(), std::move(out));
}

bool chain_is_null(const Chain& c) {
    if (c.is_empty())
        return true;
    int k = c.dim();
    if (k == 0)
        return false; // canonical 0-chains are fully merged
    if (k > 2)
        return false; // canonical emptiness is the only complete check here

    // bucket cells by affine hull
    std::map<AffineHull, std::vector<const CellTerm*>> buckets;
    for (const auto& t : c.terms())
        buckets[affine_hull(t.cell)].push_back(&t);

    for (const auto& [hull, cells] : buckets) {
        // in-hull coordinates: pivot columns of the span parametrize the hull
        RatMat span;
        {
            RatMat e = cells[0]->cell.edge_matrix();
            for (int j = 0; j < k; ++j) {
                RatVec row(c.ambient());
                for (int i = 0; i < c.ambient(); ++i)
                    row[i] = e[i][j];
                span.push_back(row);
            }
        }
        auto pivots = rref(span);
        if (k == 1) {
            int axis = pivots[0];
            std::vector<Rat> breaks;
            struct Item {
                Rat lo, hi;
                GVal g;
            };
            std::vector<Item> items;
            for (const CellTerm* t : cells) {
                Rat t0 = t->cell.verts[0][axis], t1 = t->cell.verts[1][axis];
                GVal g = sgn(t1 - t0) < 0 ? -t->coeff : t->coeff;
                items.push_back({std::min(t0, t1), std::max(t0, t1), g});
                breaks.push_back(t0);
                breaks.push_back(t1);
            }
            std::sort(breaks.begin(), breaks.end());
            breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
            for (size_t i = 0; i + 1 < breaks.size(); ++i) {
                Rat mid = (breaks[i] + breaks[i + 1]) / 2;
                GVal acc = GVal::zero(c.group());
                for (const auto& it : items)
                    if (it.lo < mid && mid < it.hi)
                        acc = acc + it.g;
                if (!acc.is_zero())
                    return false;
            }
            continue;
        }
        // k == 2
        int ax = pivots[0], ay = pivots[1];
        std::vector<Seg2> segs;
        struct Tri {
            Point2 p[3];
            GVal g;
        };
        std::vector<Tri> tris;
        for (const CellTerm* t : cells) {
            Point2 p0{t->cell.verts[0][ax], t->cell.verts[0][ay]};
            Point2 p1{t->cell.verts[1][ax], t->cell.verts[1][ay]};
            Point2 p2{t->cell.verts[2][ax], t->cell.verts[2][ay]};
            int orient = sgn(cross2(p0, p1, p2));
            GVal g = orient < 0 ? -t->coeff : t->coeff;
            tris.push_back({{p0, p1, p2}, g});
            segs.push_back({p0, p1});
            segs.push_back({p1, p2});
            segs.push_back({p2, p0});
        }
        for (const auto& pt : face_samples(segs)) {
            GVal acc = GVal::zero(c.group());
            for (const auto& tr : tris)
                if (locate_in_triangle(pt, tr.p[0], tr.p[1], tr.p[2]) == Loc2::Inside)
                    acc = acc + tr.g;
            if (!acc.is_zero())
                return false;
        }
    }
    return true;
}

Json Chain::to_json() const {
    Json j;
    j["version"] = 1;
    j["ambient"] = ambient_;
    j["dim"] = dim_;
    j["group"] = group_.to_json();
    Json cells = Json::array();
    for (const auto& t : terms_) {
        Json c;
        c["vertices"] = simplex_to_json(t.cell);
        c["coeff"] = t.coeff.to_json();
        cells.push_back(c);
    }
    j["cells"] = cells;
    return j;
}

Chain Chain::from_json(const Json& j) {
    int ambient = j.at("ambient").get<int>();
    int dim = j.at("dim").get<int>();
    Group g = Group::from_json(j.at("group"));
    std::vector<CellTerm> terms;
    for (const auto& c : j.at("cells")) {
        Simplex s = simplex_from_json(c.at("vertices"), ambient);
        if (s.dim() != dim)
            throw ParseError("cell has wrong number of vertices");
        const Json& cj = c.at("coeff");
        GVal coeff = cj.is_object() ? GVal::from_json(cj)
                                    : GVal(g, cj.is_string()
                                                  ? rat_from_string(cj.get<std::string>())
                                                  : rat_from_string(cj.dump()));
        if (coeff.group() != g)
            throw GroupMismatch("cell coefficient group differs from chain group");
        terms.push_back({std::move(s), coeff});
    }
    return make(ambient, dim, g, std::move(terms));
}

} // namespace polychain
