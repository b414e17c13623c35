#include "polychain/acceptance.hpp"

#include "polychain/errors.hpp"
#include "polychain/flatnorm.hpp"
#include "polychain/lab.hpp"
#include "polychain/lp.hpp"
#include "polychain/slicing.hpp"
#include "polychain/tensor.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <sstream>
#include <thread>

namespace polychain {

namespace {

const Group kZ = Group::Z();

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ^ 0x9e3779b97f4a7c15ull) {
        if (s == 0)
            s = 0x2545f4914f6cdd1dull;
    }
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    Rat rat(long span = 3) { // random p/q with p in [-span, span], q in {1,2,3}
        Rat r(range(-span, span), range(1, 3));
        r.canonicalize();
        return r;
    }
    Rat level() { // generic-position slice levels
        Rat r(range(-4000, 4000), 997);
        r.canonicalize();
        return r;
    }
};

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double secs() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

CriterionResult finish(int id, const std::string& name, bool ok,
                       const std::string& detail, const Timer& t, double budget) {
    CriterionResult r;
    r.id = id;
    r.name = name;
    r.seconds = t.secs();
    bool in_time = budget <= 0 || r.seconds < budget;
    r.pass = ok && in_time;
    r.detail = detail;
    if (ok && !in_time)
        r.detail += " [exceeded " + std::to_string(budget) + "s budget]";
    return r;
}

// Non-degenerate random m-simplex in R^d, shifted along axis 0 by `offset`.
Simplex rand_simplex(Rng& rng, int d, int m, const Rat& offset) {
    while (true) {
        std::vector<Point> vs;
        for (int v = 0; v <= m; ++v) {
            Point p;
            for (int i = 0; i < d; ++i)
                p.push_back(rng.rat() + (i == 0 ? offset : Rat(0)));
            vs.push_back(std::move(p));
        }
        Simplex s(d, std::move(vs));
        if (!s.is_degenerate())
            return s;
    }
}

TensorChain rand_tensor(Rng& rng, int n1, int n2, int k1, int k2, const Group& g,
                        int max_terms = 3) {
    std::vector<TensorTerm> terms;
    int count = static_cast<int>(rng.range(1, max_terms));
    for (int t = 0; t < count; ++t)
        terms.push_back({rand_simplex(rng, n1, k1, Rat(10 * t)),
                         rand_simplex(rng, n2, k2, Rat(10 * t)),
                         GVal(g, Rat(rng.range(-3, 3)))});
    return TensorChain::make(n1, n2, k1, k2, g, std::move(terms));
}

// --------------------------------------------------------------------------
// 1. Flat-norm reference values on the padded unit complex.
// --------------------------------------------------------------------------

Chain four_corner_chain(const Rat& l) {
    return Chain::make(2, 0, kZ,
                       {{Simplex(2, {{0, 0}}), GVal::one(kZ)},
                        {Simplex(2, {{l, l}}), GVal::one(kZ)},
                        {Simplex(2, {{l, 0}}), -GVal::one(kZ)},
                        {Simplex(2, {{0, l}}), -GVal::one(kZ)}});
}

CriterionResult crit_flat_norm_values() {
    Timer t;
    auto cx = std::make_shared<CubicalComplex>(Point{-2, -2}, 1,
                                               std::vector<int>{5, 5}, 1);
    GridChain g = rasterize(cx, four_corner_chain(1));
    LPResult f = flat_norm(g);
    LPResult fw = tensor_flat_norm(g, TypeIndex{0, 0});
    bool ok = f.value == 2 && f.certified && fw.value == 1 && fw.certified;
    std::ostringstream d;
    d << "F = " << rat_to_string(f.value) << " (want 2), F-wedge = "
      << rat_to_string(fw.value) << " (want 1), both certified";
    return finish(1, "flat norm reference values", ok, d.str(), t, 5.0);
}

// --------------------------------------------------------------------------
// 2. Theta cycle: certified mass, cycle check, generic slice mass.
// --------------------------------------------------------------------------

CriterionResult crit_theta_cycle() {
    Timer t;
    CounterexampleResult r = build_counterexample(default_theta_spec(3));
    double width = r.report.mass.interval.second - r.report.mass.interval.first;
    Chain sl = slice(embed(r.a), SliceSpec{{0, 2}, {Rat(1, 3), Rat(2, 5)}});
    CertifiedReal slice_mass = sl.mass().value;
    bool ok = r.report.mass_matches && r.report.mass.certified &&
              r.report.expected_mass == CertifiedReal(Rat(75, 8)) &&
              width < 1e-9 && r.report.boundary_zero &&
              slice_mass == CertifiedReal(6);
    std::ostringstream d;
    d << "mass = " << r.report.mass.value.to_string() << " (want 75/8), boundary zero = "
      << (r.report.boundary_zero ? "yes" : "NO") << ", slice mass = "
      << slice_mass.to_string() << " (want 6)";
    return finish(2, "theta cycle mass and slice", ok, d.str(), t, 10.0);
}

// --------------------------------------------------------------------------
// 3. Decomposition lower-bound search.
// --------------------------------------------------------------------------

CriterionResult crit_search() {
    Timer t;
    SearchResult r3 = decomposition_lower_bound_search(3, 3, 2);
    SearchResult r5 = decomposition_lower_bound_search(5, 4, 2);
    bool ok = r3.found && r3.min_found == 8 && r3.parity_even && r5.found &&
              r5.min_found >= 16 && r5.parity_even;
    std::ostringstream d;
    d << "3 legs: min = " << (r3.found ? std::to_string(r3.min_found) : "none")
      << " (want 8), 5 legs: min = "
      << (r5.found ? std::to_string(r5.min_found) : "none")
      << " (want >= 16), parity even = " << (r3.parity_even && r5.parity_even ? "yes" : "NO");
    return finish(3, "decomposition lower-bound search", ok, d.str(), t, 60.0);
}

// --------------------------------------------------------------------------
// 4. Splitting test agrees with off-type slice vanishing.
// --------------------------------------------------------------------------

CriterionResult crit_split_vs_vanish(std::uint64_t seed) {
    Timer t;
    Rng rng(seed ^ 0x4444);
    int agree = 0, total = 200, n_split = 0, n_not = 0;
    std::string first_fail;
    for (int inst = 0; inst < total; ++inst) {
        int n1 = static_cast<int>(rng.range(1, 3));
        int n2 = static_cast<int>(rng.range(1, 4L - n1));
        int n = n1 + n2;
        int k1 = static_cast<int>(rng.range(0, std::min(2, n1)));
        int k2 = static_cast<int>(rng.range(std::max(0, 1 - k1),
                                            std::min(2 - k1, n2)));
        int k = k1 + k2;

        bool pure = rng.range(0, 9) < 4; // bias toward genuinely split chains
        std::vector<CellTerm> terms;
        int cells = static_cast<int>(rng.range(1, 3));
        for (int cidx = 0; cidx < cells; ++cidx) {
            Rat off(20 * cidx);
            Rat coeff(rng.range(1, 3) * (rng.range(0, 1) ? 1 : -1));
            if (pure || rng.range(0, 1) == 0) {
                int a = pure ? k1 : static_cast<int>(rng.range(std::max(0, k - n2),
                                                               std::min(k, n1)));
                Chain left = Chain::singleton(kZ, rand_simplex(rng, n1, a, off));
                Chain right = Chain::singleton(kZ, rand_simplex(rng, n2, k - a, off), coeff);
                Chain prod = cartesian_product(left, right);
                for (const auto& term : prod.terms())
                    terms.push_back(term);
            } else {
                terms.push_back({rand_simplex(rng, n, k, off), GVal(kZ, coeff)});
            }
        }
        Chain c = Chain::make(n, k, kZ, std::move(terms));
        if (c.is_empty())
            continue;

        SplitResult sr = splitting_test(c, k1, k2, n1);
        bool split_ok = sr.verdict == SplitVerdict::Split;
        (split_ok ? n_split : n_not) += 1;
        bool conj = true, decided = sr.verdict != SplitVerdict::NeedsCertifiedRep;
        for (int a = std::max(0, k - n2); a <= std::min(k, n1); ++a) {
            if (a == k1)
                continue;
            VanishResult vr = j_vanishing_test(c, a, k - a, n1);
            if (vr.verdict == VanishVerdict::Unknown)
                decided = false;
            conj = conj && vr.verdict == VanishVerdict::Vanishes;
        }
        if (decided && split_ok == conj) {
            ++agree;
        } else if (first_fail.empty()) {
            std::ostringstream os;
            os << "instance " << inst << ": split=" << (split_ok ? "yes" : "no")
               << " vanish-conj=" << (conj ? "yes" : "no");
            first_fail = os.str();
        }
    }
    std::ostringstream d;
    d << agree << "/" << total << " randomized chains agree (" << n_split
      << " split, " << n_not << " not)";
    if (!first_fail.empty())
        d << "; first disagreement: " << first_fail;
    return finish(4, "splitting equals off-type vanishing",
                  agree == total && n_split > 0 && n_not > 0, d.str(), t, 60.0);
}

// --------------------------------------------------------------------------
// 5. Algebraic identity suite.
// --------------------------------------------------------------------------

CriterionResult crit_identities(std::uint64_t seed) {
    Timer t;
    Rng rng(seed ^ 0x5555);
    const int reps = 500;
    long fails = 0;
    std::string what;
    auto note = [&](const char* name, bool ok) {
        if (!ok) {
            ++fails;
            if (what.empty())
                what = name;
        }
    };

    auto rand_group = [&](bool allow_q = true) {
        long pick = rng.range(0, allow_q ? 2 : 1);
        if (pick == 0)
            return kZ;
        if (pick == 1)
            return Group::Zmod(static_cast<unsigned long>(rng.range(2, 5)));
        return Group::Q();
    };

    for (int i = 0; i < reps; ++i) {
        // boundary of boundary vanishes
        int n = static_cast<int>(rng.range(2, 4));
        int k = static_cast<int>(rng.range(2, std::min(3, n)));
        std::vector<CellTerm> terms;
        Group g = rand_group();
        int cells = static_cast<int>(rng.range(1, 3));
        for (int c = 0; c < cells; ++c)
            terms.push_back({rand_simplex(rng, n, k, Rat(10 * c)),
                             GVal(g, Rat(rng.range(-3, 3)))});
        Chain c = Chain::make(n, k, g, std::move(terms));
        note("boundary^2", c.boundary().boundary().is_empty());

        // partial boundary algebra
        int n1 = static_cast<int>(rng.range(1, 2));
        int n2 = static_cast<int>(rng.range(1, 2));
        int k1 = static_cast<int>(rng.range(0, n1));
        int k2 = static_cast<int>(rng.range(0, n2));
        TensorChain tc = rand_tensor(rng, n1, n2, k1, k2, rand_group());
        note("d1 d1 = 0", d1(d1(tc)).is_empty());
        note("d2 d2 = 0", d2(d2(tc)).is_empty());
        note("d1 d2 = -d2 d1", d1(d2(tc)) == -d2(d1(tc)));
        if (k1 + k2 >= 1)
            note("boundary of embed splits",
                 embed(tc).boundary() == embed(d1(tc)) + embed(d2(tc)));

        // chi of a boundary vanishes
        int nc = static_cast<int>(rng.range(1, 4));
        std::vector<CellTerm> bterms;
        Group gb = rand_group();
        for (int cidx = 0, ct = static_cast<int>(rng.range(1, 3)); cidx < ct; ++cidx)
            bterms.push_back({rand_simplex(rng, nc, 1, Rat(10 * cidx)),
                              GVal(gb, Rat(rng.range(-3, 3)))});
        Chain b = Chain::make(nc, 1, gb, std::move(bterms));
        note("chi of boundary", chi(b.boundary()).is_zero());

        // reindexing round trip
        note("i round trip", i_inverse(i_map(tc)) == tc);

        // order-2 annihilation
        Group z2 = Group::Zmod(2);
        Chain z = Chain::singleton(z2,
                                   rand_simplex(rng, 2, static_cast<int>(rng.range(0, 2)),
                                                Rat(0)),
                                   Rat(rng.range(0, 3)));
        note("mod-2 annihilation", z.scaled(2).is_empty() && (z + z).is_empty());
    }

    // mass additivity of the type decomposition, on product-cell sums
    for (int i = 0; i < reps; ++i) {
        int n1 = static_cast<int>(rng.range(1, 2));
        int n2 = static_cast<int>(rng.range(1, 2));
        std::vector<TypeIndex> avail;
        for (int a = 0; a <= n1; ++a)
            for (int bb = 0; bb <= n2; ++bb)
                if (a + bb >= 1 && a + bb <= 2)
                    avail.push_back({a, bb});
        Chain total = Chain::zero(n1 + n2, 0, kZ);
        CertifiedReal sum_mass;
        bool first = true;
        int ncomp = static_cast<int>(rng.range(1, 2));
        int offidx = 0;
        for (int comp = 0; comp < ncomp; ++comp) {
            TypeIndex ty = avail[static_cast<size_t>(rng.range(0, static_cast<long>(avail.size()) - 1))];
            std::vector<TensorTerm> tt;
            for (int cidx = 0, ct = static_cast<int>(rng.range(1, 2)); cidx < ct; ++cidx) {
                ++offidx;
                tt.push_back({rand_simplex(rng, n1, ty.k1, Rat(15 * offidx)),
                              rand_simplex(rng, n2, ty.k2, Rat(15 * offidx)),
                              GVal(kZ, Rat(rng.range(-2, 2)))});
            }
            TensorChain part = TensorChain::make(n1, n2, ty.k1, ty.k2, kZ, std::move(tt));
            Chain e = embed(part);
            if (e.is_empty())
                continue;
            if (first) {
                total = e;
                first = false;
            } else if (e.dim() == total.dim()) {
                total = total + e;
            } else {
                continue; // mixed dimensions cannot be summed as one chain
            }
        }
        if (first || total.is_empty())
            continue;
        try {
            auto parts = j_decompose(total, n1);
            CertifiedReal per_type;
            for (const auto& kv : parts)
                per_type += embed(kv.second).mass().value;
            sum_mass = total.mass().value;
            note("type decomposition mass additivity", per_type == sum_mass);
        } catch (const NotTensorRepresentable&) {
            note("type decomposition representable", false);
        }
    }

    std::ostringstream d;
    d << reps << " instances per identity, " << fails << " failures";
    if (!what.empty())
        d << "; first: " << what;
    return finish(5, "algebraic identity suite", fails == 0, d.str(), t, 120.0);
}

// --------------------------------------------------------------------------
// 6. Slice calculus.
// --------------------------------------------------------------------------

CriterionResult crit_slice_calculus(std::uint64_t seed) {
    Timer t;
    Rng rng(seed ^ 0x6666);
    long violations = 0;
    std::string what;
    auto note = [&](const char* name, bool ok) {
        if (!ok) {
            ++violations;
            if (what.empty())
                what = name;
        }
    };

    // boundary commutes with slicing, 100 generic points per chain
    for (int inst = 0; inst < 5; ++inst) {
        int n = static_cast<int>(rng.range(2, 4));
        std::vector<CellTerm> terms;
        for (int cidx = 0, ct = static_cast<int>(rng.range(1, 3)); cidx < ct; ++cidx)
            terms.push_back({rand_simplex(rng, n, 2, Rat(10 * cidx)),
                             GVal(kZ, Rat(rng.range(-2, 2)))});
        Chain c = Chain::make(n, 2, kZ, std::move(terms));
        if (c.is_empty())
            continue;
        Chain bc = c.boundary();
        for (int pt = 0; pt < 100; ++pt) {
            int axis = static_cast<int>(rng.range(0, n - 1));
            SliceSpec spec{{axis}, {rng.level()}};
            try {
                Chain s1 = slice(c, spec).boundary();
                Chain s2 = slice(bc, spec);
                note("boundary/slice commutation", chain_is_null(s1 - s2));
            } catch (const NonGenericPoint&) {
                --pt; // resample
            }
        }
    }

    // partial boundaries vs factor slicing, with the parity twist
    for (int inst = 0; inst < 50; ++inst) {
        int n1 = static_cast<int>(rng.range(1, 2));
        int n2 = static_cast<int>(rng.range(1, 2));
        int k1 = static_cast<int>(rng.range(1, n1));
        int k2 = static_cast<int>(rng.range(1, n2));
        TensorChain tc = rand_tensor(rng, n1, n2, k1, k2, kZ, 2);
        bool first_factor = rng.range(0, 1) == 0;
        int axis = first_factor ? static_cast<int>(rng.range(0, n1 - 1))
                                : n1 + static_cast<int>(rng.range(0, n2 - 1));
        SliceSpec spec{{axis}, {rng.level()}};
        try {
            TensorChain sliced = tensor_slice(tc, spec);
            // d2(Sl t) == (-1)^{|gamma1|} Sl(d2 t); the slot being sliced must
            // keep positive degree on the boundary side, else that side is 0.
            if (!first_factor && k2 == 1) {
                note("d2/slice commutation", d2(sliced).is_empty());
            } else {
                TensorChain rhs2 = tensor_slice(d2(tc), spec);
                if (first_factor)
                    rhs2 = -rhs2;
                note("d2/slice commutation",
                     chain_is_null(embed(d2(sliced)) - embed(rhs2)));
            }
            // d1(Sl t) == Sl(d1 t), same caveat in the first slot.
            if (first_factor && k1 == 1) {
                note("d1/slice commutation", d1(sliced).is_empty());
            } else {
                TensorChain rhs1 = tensor_slice(d1(tc), spec);
                note("d1/slice commutation",
                     chain_is_null(embed(d1(sliced)) - embed(rhs1)));
            }
        } catch (const NonGenericPoint&) {
            --inst;
        }
    }

    // half-space boundary identity at 50 generic levels
    for (int lvl = 0; lvl < 50; ++lvl) {
        int n = static_cast<int>(rng.range(2, 3));
        int k = static_cast<int>(rng.range(1, 2));
        std::vector<CellTerm> terms;
        for (int cidx = 0, ct = static_cast<int>(rng.range(1, 2)); cidx < ct; ++cidx)
            terms.push_back({rand_simplex(rng, n, k, Rat(5 * cidx)),
                             GVal(kZ, Rat(rng.range(-2, 2)))});
        Chain c = Chain::make(n, k, kZ, std::move(terms));
        if (c.is_empty())
            continue;
        int axis = static_cast<int>(rng.range(0, n - 1));
        Rat level = rng.level();
        try {
            Chain lhs = restrict_halfspace(c, axis, level, false).boundary();
            Chain rhs = restrict_halfspace(c.boundary(), axis, level, false) +
                        hyperplane_intersection(c, axis, level);
            note("half-space boundary identity", chain_is_null(lhs - rhs));
        } catch (const NonGenericLevel&) {
            --lvl;
        }
    }

    // Riemann-sampled slice masses never exceed the mass
    std::vector<Chain> aligned;
    aligned.push_back(cartesian_product(
        Chain::singleton(kZ, Simplex(1, {{0}, {1}})),
        Chain::singleton(kZ, Simplex(1, {{0}, {1}}))));
    aligned.push_back(cartesian_product(
        Chain::singleton(kZ, Simplex(1, {{0}, {Rat(3, 2)}}), -2),
        Chain::singleton(kZ, Simplex(1, {{0}, {Rat(1, 2)}}))));
    aligned.push_back(Chain::singleton(kZ, Simplex(2, {{0, 0}, {1, 0}})));
    for (const Chain& c : aligned) {
        CertifiedReal mass = c.mass().value;
        for (int axis = 0; axis < 2; ++axis) {
            const int samples = 64;
            Rat lo(-1, 8), hi(2);
            Rat step = (hi - lo) / samples;
            CertifiedReal integral;
            for (int i = 0; i < samples; ++i) {
                Rat s = lo + step * i + step * Rat(1, 2) + step / 1009;
                try {
                    integral += slice(c, SliceSpec{{axis}, {s}}).mass().value *
                                CertifiedReal(step);
                } catch (const NonGenericPoint&) {
                    // skipping a sample only lowers the Riemann sum
                }
            }
            note("slice-mass integral bound",
                 integral <= mass + CertifiedReal(Rat(1, 1000000)));
        }
    }

    std::ostringstream d;
    d << violations << " violations";
    if (!what.empty())
        d << "; first: " << what;
    return finish(6, "slice calculus", violations == 0, d.str(), t, 0.0);
}

// --------------------------------------------------------------------------
// 7. Staircase truncations.
// --------------------------------------------------------------------------

CriterionResult crit_staircase() {
    Timer t;
    bool ok = true;
    std::string what;
    Rat prev(-1);
    for (int j = 0; j <= 10 && ok; ++j) {
        StaircasePair p = build_staircase({j});
        MassReport m1 = p.a1.mass();
        if (!(m1.certified && m1.value == CertifiedReal(1))) {
            ok = false;
            what = "mass of level " + std::to_string(j);
            break;
        }
        if (splitting_test(p.a1, 1, 0, 1).verdict != SplitVerdict::Split ||
            splitting_test(p.a2, 0, 1, 1).verdict != SplitVerdict::Split) {
            ok = false;
            what = "splitting verdict at level " + std::to_string(j);
            break;
        }
        Chain rim = (p.a1 + p.a2).boundary();
        bool rim_ok = rim.terms().size() == 2 &&
                      rim.terms()[0].coeff.norm() == 1 &&
                      rim.terms()[1].coeff.norm() == 1 &&
                      chi(rim).is_zero();
        if (!rim_ok) {
            ok = false;
            what = "rim atoms at level " + std::to_string(j);
            break;
        }
        Rat growth = p.a1.boundary().mass().value.rational_part();
        if (!(growth > prev && growth >= Rat(1L << j))) {
            ok = false;
            what = "boundary growth at level " + std::to_string(j);
            break;
        }
        prev = growth;
    }
    std::ostringstream d;
    if (ok)
        d << "levels 0..10: unit mass, clean splits, two rim atoms, boundary mass up to "
          << rat_to_string(prev);
    else
        d << "failed: " << what;
    return finish(7, "staircase truncations", ok, d.str(), t, 30.0);
}

// --------------------------------------------------------------------------
// 8. Dyadic collapse contraction bound.
// --------------------------------------------------------------------------

CriterionResult crit_collapse_bound() {
    Timer t;
    bool ok = true;
    std::string what;
    int checked = 0;

    struct Instance {
        TensorChain chain;
        std::shared_ptr<const CubicalComplex> cx;
    };
    std::vector<Instance> instances;

    auto vseg = [](const Rat& x, const Rat& y0, const Rat& y1, long coeff) {
        return TensorTerm{Simplex(1, {{x}}), Simplex(1, {{y0}, {y1}}),
                          GVal(kZ, Rat(coeff))};
    };
    instances.push_back(
        {TensorChain::make(1, 1, 0, 1, kZ,
                           {vseg(Rat(1, 8), Rat(0), Rat(1, 2), 1),
                            vseg(Rat(3, 8), Rat(1, 4), Rat(3, 4), -1),
                            vseg(Rat(7, 8), Rat(0), Rat(3, 4), 2),
                            vseg(Rat(5, 8), Rat(1, 8), Rat(3, 8), 1)}),
         std::make_shared<CubicalComplex>(Point{Rat(-1, 8), Rat(-1, 8)}, Rat(1, 8),
                                          std::vector<int>{9, 8}, 1)});
    instances.push_back(
        {TensorChain::make(1, 1, 0, 1, kZ,
                           {vseg(Rat(1, 16), Rat(0), Rat(1, 4), 1),
                            vseg(Rat(5, 16), Rat(1, 8), Rat(5, 16), -1),
                            vseg(Rat(7, 16), Rat(1, 16), Rat(3, 8), 1)}),
         std::make_shared<CubicalComplex>(Point{Rat(-1, 8), Rat(-1, 8)}, Rat(1, 16),
                                          std::vector<int>{10, 9}, 1)});

    for (const auto& inst : instances) {
        CertifiedReal n_norm =
            embed(inst.chain).mass().value + embed(d2(inst.chain)).mass().value;
        for (int i = 0; i <= 4 && ok; ++i) {
            TensorChain ti = dyadic_collapse(inst.chain, i);
            for (int j = i; j <= 4 && ok; ++j) {
                TensorChain tj = dyadic_collapse(inst.chain, j);
                Chain diff = embed(tj) - embed(ti);
                ++checked;
                if (chain_is_null(diff))
                    continue; // equal collapses, F = 0
                LPResult f = flat_norm(rasterize(inst.cx, diff));
                CertifiedReal bound =
                    CertifiedReal(Rat(1, 1L << i)) * n_norm; // sqrt(1) = 1
                if (!(CertifiedReal(f.value) <= bound && f.certified)) {
                    ok = false;
                    what = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                           "): F = " + rat_to_string(f.value);
                }
            }
        }
        if (!ok)
            break;
    }
    std::ostringstream d;
    if (ok)
        d << checked << " collapse level pairs within the contraction bound";
    else
        d << "violated: " << what;
    return finish(8, "dyadic collapse contraction", ok, d.str(), t, 60.0);
}

// --------------------------------------------------------------------------
// 9. LP enumeration oracle on tiny complexes.
// --------------------------------------------------------------------------

// Scatter column entries q/r (+/- split) into a dense LP and enumerate.
struct TinyLP {
    RatMat a;
    RatVec b, c;
    void init(size_t rows) {
        a.assign(rows, {});
        b.assign(rows, 0);
    }
    void add_pm_column(const std::vector<std::pair<long, Rat>>& entries, const Rat& cost) {
        for (auto& row : a) {
            row.push_back(0);
            row.push_back(0);
        }
        size_t plus = a.empty() ? 0 : a[0].size() - 2;
        for (const auto& [row, val] : entries) {
            a[static_cast<size_t>(row)][plus] = val;
            a[static_cast<size_t>(row)][plus + 1] = -val;
        }
        c.push_back(cost);
        c.push_back(cost);
    }
};

CriterionResult crit_lp_oracle() {
    Timer t;
    bool ok = true;
    int cases = 0;
    std::string what;

    // 1D grids, 1..5 edges: 0-chains, both norms (they coincide here).
    for (int n = 1; n <= 5 && ok; ++n) {
        auto cx = std::make_shared<CubicalComplex>(Point{0}, 1, std::vector<int>{n}, 1);
        std::vector<RatVec> chains;
        chains.push_back([&] {
            RatVec v(static_cast<size_t>(n) + 1, 0);
            v[0] = 1;
            v[static_cast<size_t>(n)] = -1;
            return v;
        }());
        chains.push_back([&] {
            RatVec v(static_cast<size_t>(n) + 1, 0);
            v[0] = 1;
            v[1] = -1;
            return v;
        }());
        chains.push_back([&] {
            RatVec v(static_cast<size_t>(n) + 1, 0);
            v[static_cast<size_t>(n) / 2] = 2;
            return v;
        }());
        for (const RatVec& coeffs : chains) {
            GridChain g{cx, 0, kZ, coeffs};
            TinyLP lp;
            lp.init(coeffs.size());
            lp.b = coeffs;
            for (long v = 0; v <= n; ++v)
                lp.add_pm_column({{v, 1}}, 1); // q columns, independent assembly
            for (long e = 0; e < n; ++e)
                lp.add_pm_column({{e, -1}, {e + 1, 1}}, 1); // r columns
            auto brute = lp_enumerate(lp.a, lp.b, lp.c);
            LPResult f = flat_norm(g);
            LPResult fw = tensor_flat_norm(g, TypeIndex{0, 0});
            ++cases;
            if (!(brute && f.value == *brute && fw.value == *brute && f.certified)) {
                ok = false;
                what = "1D n=" + std::to_string(n) + ": F=" + rat_to_string(f.value) +
                       " brute=" + (brute ? rat_to_string(*brute) : "none");
            }
        }
    }

    // 2D single square (9 cells): plain and tensor norms of the four corners.
    if (ok) {
        auto cx = std::make_shared<CubicalComplex>(Point{0, 0}, 1,
                                                   std::vector<int>{1, 1}, 1);
        GridChain g = rasterize(cx, four_corner_chain(1));
        TinyLP lp;
        lp.init(g.coeffs.size());
        lp.b = g.coeffs;
        for (long v = 0; v < 4; ++v)
            lp.add_pm_column({{v, 1}}, 1);
        for (long e = 0; e < 4; ++e) {
            std::vector<std::pair<long, Rat>> col;
            for (const auto& [vid, sgn] : cx->boundary(1, e))
                col.push_back({vid, Rat(sgn)});
            lp.add_pm_column(col, 1);
        }
        auto brute = lp_enumerate(lp.a, lp.b, lp.c);
        LPResult f = flat_norm(g);
        ++cases;
        if (!(brute && f.value == *brute && *brute == 2)) {
            ok = false;
            what = "2D plain norm: F=" + rat_to_string(f.value);
        }

        TinyLP wlp;
        wlp.init(g.coeffs.size());
        wlp.b = g.coeffs;
        for (long v = 0; v < 4; ++v)
            wlp.add_pm_column({{v, 1}}, 1);
        for (int k = 1; k <= 2 && ok; ++k) {
            for (long id = 0; id < cx->cell_count(k); ++id) {
                GridCell cell = cx->cell(k, id);
                TypeIndex ty = cx->cell_type(cell);
                std::vector<std::pair<long, Rat>> col;
                if (k == 1) {
                    auto faces = ty.k1 == 1 ? cx->boundary1(1, id) : cx->boundary2(1, id);
                    for (const auto& [vid, sgn] : faces)
                        col.push_back({vid, Rat(sgn)});
                } else {
                    std::map<long, Rat> acc;
                    for (const auto& [eid, s2] : cx->boundary2(2, id))
                        for (const auto& [vid, s1] : cx->boundary1(1, eid))
                            acc[vid] += Rat(s1) * s2;
                    for (const auto& [vid, val] : acc)
                        if (val != 0)
                            col.push_back({vid, val});
                }
                wlp.add_pm_column(col, cx->cell_volume(k));
            }
        }
        if (ok) {
            auto brute_w = lp_enumerate(wlp.a, wlp.b, wlp.c);
            LPResult fw = tensor_flat_norm(g, TypeIndex{0, 0});
            ++cases;
            if (!(brute_w && fw.value == *brute_w && *brute_w == 1)) {
                ok = false;
                what = "2D tensor norm: F-wedge=" + rat_to_string(fw.value);
            }
        }
    }

    std::ostringstream d;
    if (ok)
        d << cases << " tiny-complex optima match exhaustive enumeration";
    else
        d << "mismatch: " << what;
    return finish(9, "LP enumeration oracle", ok, d.str(), t, 0.0);
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, int threads) {
    std::vector<std::function<CriterionResult()>> items = {
        [] { return crit_flat_norm_values(); },
        [] { return crit_theta_cycle(); },
        [] { return crit_search(); },
        [seed] { return crit_split_vs_vanish(seed); },
        [seed] { return crit_identities(seed); },
        [seed] { return crit_slice_calculus(seed); },
        [] { return crit_staircase(); },
        [] { return crit_collapse_bound(); },
        [] { return crit_lp_oracle(); },
    };
    std::vector<CriterionResult> out(items.size());
    int workers = std::max(1, std::min<int>(threads, static_cast<int>(items.size())));
    if (workers == 1) {
        for (size_t i = 0; i < items.size(); ++i)
            out[i] = items[i]();
        return out;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (size_t i = next.fetch_add(1); i < items.size(); i = next.fetch_add(1))
                out[i] = items[i]();
        });
    for (auto& th : pool)
        th.join();
    return out;
}

} // namespace polychain
