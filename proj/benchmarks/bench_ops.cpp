#include <benchmark/benchmark.h>

#include <cstdint>
#include <memory>
#include <vector>

#include "polychain/chain.hpp"
#include "polychain/cubical.hpp"
#include "polychain/flatnorm.hpp"
#include "polychain/lab.hpp"
#include "polychain/slicing.hpp"
#include "polychain/tensor.hpp"

using namespace polychain;

namespace {

const Group kZ = Group::Z();

struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed * 6364136223846793005ull + 1) {}
    std::uint64_t next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
    long range(long lo, long hi) { return lo + static_cast<long>(next() % (hi - lo + 1)); }
    Rat rat() {
        Rat r(range(-12, 12), range(1, 4));
        r.canonicalize();
        return r;
    }
};

Simplex random_simplex(Lcg& g, int n, int k) {
    for (;;) {
        std::vector<std::vector<Rat>> verts(k + 1, std::vector<Rat>(n));
        for (auto& v : verts)
            for (auto& x : v) x = g.rat();
        Simplex s(n, verts);
        if (!s.is_degenerate()) return s;
    }
}

Chain random_chain(std::uint64_t seed, int n, int k, long terms) {
    Lcg g(seed);
    Chain c = Chain::zero(n, k, kZ);
    for (long i = 0; i < terms; ++i)
        c = c + Chain::singleton(kZ, random_simplex(g, n, k), Rat(g.range(1, 3)));
    return c;
}

} // namespace

static void BM_CanonicalSum(benchmark::State& state) {
    // Accumulating singletons exercises the sort/merge canonical form.
    const long terms = state.range(0);
    for (auto _ : state) {
        Chain c = random_chain(17, 3, 1, terms);
        benchmark::DoNotOptimize(c.terms().data());
    }
    state.SetItemsProcessed(state.iterations() * terms);
}
BENCHMARK(BM_CanonicalSum)->Arg(64)->Arg(256)->Arg(1024);

static void BM_Boundary(benchmark::State& state) {
    Chain c = random_chain(23, 3, 2, state.range(0));
    for (auto _ : state) {
        Chain b = c.boundary();
        benchmark::DoNotOptimize(b.terms().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Boundary)->Arg(64)->Arg(256)->Arg(1024);

static void BM_MassCertified(benchmark::State& state) {
    Chain c = random_chain(31, 3, 2, state.range(0));
    for (auto _ : state) {
        MassReport m = c.mass();
        benchmark::DoNotOptimize(m.value);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MassCertified)->Arg(16)->Arg(64)->Arg(256);

static void BM_Slice(benchmark::State& state) {
    Chain c = random_chain(41, 3, 2, state.range(0));
    SliceSpec spec{{0, 2}, {Rat(1, 7), Rat(3, 11)}};
    for (auto _ : state) {
        Chain s = slice(c, spec);
        benchmark::DoNotOptimize(s.terms().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Slice)->Arg(64)->Arg(256)->Arg(1024);

static void BM_TensorBoundary(benchmark::State& state) {
    Lcg g(53);
    std::vector<TensorTerm> terms;
    for (long i = 0; i < state.range(0); ++i)
        terms.push_back({random_simplex(g, 2, 1), random_simplex(g, 2, 1), GVal::one(kZ)});
    TensorChain t = TensorChain::make(2, 2, 1, 1, kZ, terms);
    for (auto _ : state) {
        TensorChain a = d1(t);
        TensorChain b = d2(t);
        benchmark::DoNotOptimize(a.terms().data());
        benchmark::DoNotOptimize(b.terms().data());
    }
}
BENCHMARK(BM_TensorBoundary)->Arg(64)->Arg(256);

static void BM_FlatNorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto cx = std::make_shared<CubicalComplex>(Point{Rat(-1), Rat(-1)}, Rat(1),
                                               std::vector<int>{n, n}, 1);
    Chain corners = Chain::zero(2, 0, kZ);
    corners = corners + Chain::singleton(kZ, Simplex(2, {{0, 0}}));
    corners = corners + Chain::singleton(kZ, Simplex(2, {{Rat(n - 2), 0}}), Rat(-1));
    corners = corners + Chain::singleton(kZ, Simplex(2, {{Rat(n - 2), Rat(n - 2)}}));
    corners = corners + Chain::singleton(kZ, Simplex(2, {{0, Rat(n - 2)}}), Rat(-1));
    GridChain g = rasterize(cx, corners);
    for (auto _ : state) {
        LPResult r = flat_norm(g);
        benchmark::DoNotOptimize(r.value);
    }
    state.counters["cells"] = static_cast<double>(n) * n;
}
BENCHMARK(BM_FlatNorm)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_TensorFlatNorm(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto cx = std::make_shared<CubicalComplex>(Point{Rat(-1), Rat(-1)}, Rat(1),
                                               std::vector<int>{n, n}, 1);
    Chain corners = Chain::zero(2, 0, kZ);
    corners = corners + Chain::singleton(kZ, Simplex(2, {{0, 0}}));
    corners = corners + Chain::singleton(kZ, Simplex(2, {{Rat(n - 2), 0}}), Rat(-1));
    corners = corners + Chain::singleton(kZ, Simplex(2, {{Rat(n - 2), Rat(n - 2)}}));
    corners = corners + Chain::singleton(kZ, Simplex(2, {{0, Rat(n - 2)}}), Rat(-1));
    GridChain g = rasterize(cx, corners);
    for (auto _ : state) {
        LPResult r = tensor_flat_norm(g, TypeIndex{0, 0});
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_TensorFlatNorm)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_StaircaseBoundary(benchmark::State& state) {
    StaircasePair p = build_staircase({static_cast<int>(state.range(0))});
    for (auto _ : state) {
        MassReport m = p.a1.boundary().mass();
        benchmark::DoNotOptimize(m.value);
    }
}
BENCHMARK(BM_StaircaseBoundary)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_IpSearch(benchmark::State& state) {
    for (auto _ : state) {
        SearchResult r = decomposition_lower_bound_search(3, 3, 2);
        benchmark::DoNotOptimize(r.min_found);
    }
}
BENCHMARK(BM_IpSearch)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
