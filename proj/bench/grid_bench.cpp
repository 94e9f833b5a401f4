#include <benchmark/benchmark.h>

#include <cmath>

#include "oesnn/detector.hpp"
#include "oesnn/grid.hpp"
#include "oesnn/rng.hpp"

namespace {

oesnn::Series make_series(std::size_t n) {
    oesnn::Rng rng(42);
    oesnn::Series s;
    s.key = "bench/sine.csv";
    s.category = "bench";
    s.labels.kind = oesnn::LabelSet::Kind::points;
    for (std::size_t i = 0; i < n; ++i) {
        s.timestamps.push_back(oesnn::Timestamp::from_index(i));
        s.values.push_back(std::sin(static_cast<double>(i) * 0.063) + rng.normal(0.0, 0.05) + (i % 397 == 0 ? 0.4 : 0.0));
        if (i % 397 == 0) s.labels.points.push_back(s.timestamps.back());
    }
    return s;
}

oesnn::GridSpec bench_grid() {
    oesnn::GridSpec g;
    g.window_sizes = {50, 100, 150, 200};
    g.epsilons = {2, 3, 4, 5};
    return g;
}

void BM_GridSerial(benchmark::State& state) {
    const auto s = make_series(static_cast<std::size_t>(state.range(0)));
    const auto g = bench_grid();
    for (auto _ : state) benchmark::DoNotOptimize(oesnn::grid_search_serial(s, g));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.cell_count()) * state.range(0));
}
BENCHMARK(BM_GridSerial)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_GridParallel(benchmark::State& state) {
    const auto s = make_series(static_cast<std::size_t>(state.range(0)));
    const auto g = bench_grid();
    for (auto _ : state) benchmark::DoNotOptimize(oesnn::grid_search(s, g, 0));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.cell_count()) * state.range(0));
}
BENCHMARK(BM_GridParallel)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_DetectorStep(benchmark::State& state) {
    oesnn::DetectorConfig c;
    c.no_size = static_cast<std::size_t>(state.range(0));
    oesnn::Detector det(c);
    oesnn::Rng rng(1);
    double t = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(det.step(std::sin(t) + rng.normal(0.0, 0.05)));
        t += 0.063;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_DetectorStep)->Arg(10)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
