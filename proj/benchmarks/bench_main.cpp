#include <benchmark/benchmark.h>

#include <random>

#include "hopps/oracle.hpp"
#include "hopps/parity_matrix.hpp"
#include "hopps/sat.hpp"
#include "hopps/synthesizer.hpp"

namespace {

using namespace hopps;

PhasePolyRep line3_instance() {
    PhasePolyRep rep{ParityMatrix::identity(3), ParityMatrix::from_bits({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}), ParityTable(3)};
    rep.table.add(BitVector{0, 1, 1}, Angle::symbol("a"));
    rep.table.add(BitVector{1, 1, 0}, Angle::symbol("b"));
    rep.table.add(BitVector{1, 0, 1}, Angle::symbol("c"));
    return rep;
}

// n+1 pigeons into n holes.
sat::SatInstance pigeonhole(int holes) {
    sat::SatInstance inst;
    std::vector<std::vector<int>> x(static_cast<std::size_t>(holes + 1));
    for (auto& row : x) {
        for (int h = 0; h < holes; ++h) row.push_back(inst.new_var());
    }
    for (const auto& row : x) {
        sat::Clause some;
        for (const int v : row) some.push_back(sat::Lit::pos(v));
        inst.add_clause(some);
    }
    for (int h = 0; h < holes; ++h) {
        for (std::size_t a = 0; a < x.size(); ++a) {
            for (std::size_t b = a + 1; b < x.size(); ++b) {
                inst.add_clause({sat::Lit::neg(x[a][static_cast<std::size_t>(h)]), sat::Lit::neg(x[b][static_cast<std::size_t>(h)])});
            }
        }
    }
    return inst;
}

void BM_Pigeonhole(benchmark::State& state) {
    const auto inst = pigeonhole(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(sat::solve(inst).status);
}
BENCHMARK(BM_Pigeonhole)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_SynthesizeLine3(benchmark::State& state) {
    SynthesisRequest req;
    req.rep = line3_instance();
    req.coupling = CouplingMap::line(3);
    req.mode = state.range(0) == 0 ? Mode::CnotOptimal : Mode::DepthOptimal;
    req.doubly = true;
    for (auto _ : state) benchmark::DoNotOptimize(synthesize(req).cnot_count);
}
BENCHMARK(BM_SynthesizeLine3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_OracleLine3(benchmark::State& state) {
    const auto rep = line3_instance();
    const auto cm = CouplingMap::line(3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(state.range(0) == 0 ? oracle_min_count(rep, cm).value : oracle_min_depth(rep, cm).value);
    }
}
BENCHMARK(BM_OracleLine3)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ApplyCnot(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    auto p = ParityMatrix::identity(n);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> q(0, n - 1);
    for (auto _ : state) {
        const std::size_t c = q(rng);
        std::size_t t = q(rng);
        if (t == c) t = (t + 1) % n;
        p.apply_cnot(c, t);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_ApplyCnot)->Arg(8)->Arg(64)->Arg(256);

} // namespace

BENCHMARK_MAIN();
