#include <benchmark/benchmark.h>

#include <memory>

#include "conic/blocks.hpp"
#include "conic/brauer.hpp"
#include "conic/chartable.hpp"
#include "conic/field.hpp"
#include "conic/group.hpp"
#include "conic/incidence.hpp"
#include "conic/plane.hpp"

using namespace conic;

namespace {

std::shared_ptr<const PlaneCtx> plane_of(int64_t q) {
    static std::map<int64_t, std::shared_ptr<const PlaneCtx>> cache;
    auto it = cache.find(q);
    if (it == cache.end()) {
        auto F = std::make_shared<FieldCtx>(FieldCtx::from_order(q));
        it = cache.emplace(q, std::make_shared<PlaneCtx>(PlaneCtx::build(F))).first;
    }
    return it->second;
}

void BM_FieldMul(benchmark::State& state) {
    FieldCtx F = FieldCtx::from_order(27);
    uint32_t a = 5, b = 17;
    for (auto _ : state) {
        FieldElem x = F.mul(F.element(a), F.element(b));
        benchmark::DoNotOptimize(x);
        a = (a + 1) % 27;
        b = (b + 3) % 27;
    }
}
BENCHMARK(BM_FieldMul);

void BM_PlaneBuild(benchmark::State& state) {
    int64_t q = state.range(0);
    auto F = std::make_shared<FieldCtx>(FieldCtx::from_order(q));
    for (auto _ : state) {
        PlaneCtx p = PlaneCtx::build(F);
        benchmark::DoNotOptimize(p.n());
    }
}
BENCHMARK(BM_PlaneBuild)->Arg(9)->Arg(27);

void BM_PolarMatrixPower(benchmark::State& state) {
    auto p = plane_of(state.range(0));
    BitMatrix B = build_B(*p);
    for (auto _ : state) {
        BitMatrix b5 = B.pow(5);
        benchmark::DoNotOptimize(b5.get(0, 0));
    }
}
BENCHMARK(BM_PolarMatrixPower)->Arg(13)->Arg(27);

void BM_IncidenceRank(benchmark::State& state) {
    auto p = plane_of(state.range(0));
    auto part = build_partition(*p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(part.full.rank());
    }
}
BENCHMARK(BM_IncidenceRank)->Arg(13)->Arg(27);

void BM_GroupEnumeration(benchmark::State& state) {
    auto p = plane_of(state.range(0));
    for (auto _ : state) {
        GroupCtx G = GroupCtx::build(p);
        benchmark::DoNotOptimize(G.order());
    }
}
BENCHMARK(BM_GroupEnumeration)->Arg(9)->Arg(13);

void BM_ParitySweep(benchmark::State& state) {
    auto p = plane_of(state.range(0));
    GroupCtx G = GroupCtx::build(p);
    for (auto _ : state) {
        GroupParityReport rep = G.parity_profile();
        benchmark::DoNotOptimize(rep.ok);
    }
}
BENCHMARK(BM_ParitySweep)->Arg(9)->Arg(13);

void BM_CharTable(benchmark::State& state) {
    auto p = plane_of(state.range(0));
    GroupCtx G = GroupCtx::build(p);
    for (auto _ : state) {
        CharTable t = CharTable::build(G);
        benchmark::DoNotOptimize(t.n_rows());
    }
}
BENCHMARK(BM_CharTable)->Arg(9)->Arg(13);

void BM_BlockModuleDims(benchmark::State& state) {
    auto p = plane_of(state.range(0));
    GroupCtx G = GroupCtx::build(p);
    CharTable t = CharTable::build(G);
    BrauerReduction red = BrauerReduction::make(t.conductor());
    BlockSet bs = partition_blocks(t, red);
    compute_idempotents(bs, t, red, G);
    for (auto _ : state) {
        BlockModuleReport md = block_module_dims(G, t, bs, red);
        benchmark::DoNotOptimize(md.kernel_total);
    }
}
BENCHMARK(BM_BlockModuleDims)->Arg(9)->Arg(13);

}  // namespace

BENCHMARK_MAIN();
