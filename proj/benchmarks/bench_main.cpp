#include <citeangle/angle.hpp>
#include <citeangle/beauty.hpp>
#include <citeangle/classifier.hpp>
#include <citeangle/report.hpp>
#include <citeangle/synth.hpp>

#include <benchmark/benchmark.h>

using namespace citeangle;

namespace {

const std::vector<Count>& sample_counts() {
    static const auto counts = [] {
        GenSpec spec;
        spec.kind = SeriesKind::asb;
        spec.seed = 17;
        return generate_series(spec, "B").counts;
    }();
    return counts;
}

void BM_AngleProfile(benchmark::State& state) {
    const auto& counts = sample_counts();
    for (auto _ : state) benchmark::DoNotOptimize(angle_profile(counts));
}
BENCHMARK(BM_AngleProfile);

void BM_BeautyScores(benchmark::State& state) {
    const auto& counts = sample_counts();
    for (auto _ : state) benchmark::DoNotOptimize(beauty_scores(counts));
}
BENCHMARK(BM_BeautyScores);

void BM_Classify(benchmark::State& state) {
    const auto& counts = sample_counts();
    const CriteriaConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(classify(counts, config));
}
BENCHMARK(BM_Classify);

void BM_GenerateCorpus(benchmark::State& state) {
    const GenSpec spec;
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate_corpus(spec, n, 1, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateCorpus)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_ClassifyCorpus(benchmark::State& state) {
    const auto generated = generate_corpus(GenSpec{}, static_cast<std::size_t>(state.range(0)), 1, 1);
    const CriteriaConfig config;
    for (auto _ : state) benchmark::DoNotOptimize(classify_corpus(generated.corpus, config, {1}));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ClassifyCorpus)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
