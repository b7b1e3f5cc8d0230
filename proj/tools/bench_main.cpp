// Timing comparison of the serial reference path against the OpenMP path for
// the three data-parallel kernels: forest fitting, bootstrap replication and
// band-depth computation.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "imbtext/classifier.hpp"
#include "imbtext/corpus.hpp"
#include "imbtext/parallel.hpp"
#include "imbtext/rng.hpp"
#include "imbtext/stats.hpp"
#include "imbtext/vectorize.hpp"

using namespace imbtext;

namespace {

double seconds(void (*fn)(Exec), Exec exec) {
    auto t0 = std::chrono::steady_clock::now();
    fn(exec);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

DocTermMatrix bench_matrix() {
    SyntheticSpec spec;
    spec.n_docs = 1500;
    spec.minority_ratio = 0.2;
    spec.vocab_size = 120;
    spec.length_mean = 20.0;
    spec.seed = 42;
    auto [d0, d1] = default_synthetic_dists(spec.vocab_size, 0.6);
    spec.class0_word_dist = d0;
    spec.class1_word_dist = d1;
    auto [corpus, oracle] = generate_synthetic(spec);
    Vocabulary vocab = fit_vocabulary(corpus, 1);
    return transform(corpus, vocab);
}

void bench_forest(Exec exec) {
    static DocTermMatrix matrix = bench_matrix();
    ForestConfig cfg;
    cfg.n_trees = 60;
    cfg.seed = 7;
    fit_forest(matrix, cfg, exec);
}

void bench_bootstrap(Exec exec) {
    GainSample sample;
    Rng rng(99);
    sample.values.assign(5, std::vector<double>(40));
    for (auto& row : sample.values) {
        double m = rng.normal(0.0, 1.0);
        for (double& v : row) v = m + rng.normal(0.0, 2.0);
    }
    bootstrap_test(sample, 20000, 11, exec);
}

void bench_depths(Exec exec) {
    CurveEnsemble ensemble;
    ensemble.grid = uniform_grid(101);
    Rng rng(5);
    for (int c = 0; c < 400; ++c) {
        std::vector<double> curve(101);
        double bend = rng.uniform(0.5, 3.0);
        for (std::size_t g = 0; g < 101; ++g)
            curve[g] = std::pow(ensemble.grid[g], 1.0 / bend);
        ensemble.curves.push_back(std::move(curve));
    }
    functional_boxplot(ensemble, exec);
}

void run_case(const char* name, void (*fn)(Exec)) {
    fn(Exec::serial); // warm-up
    double s = seconds(fn, Exec::serial);
    double p = seconds(fn, Exec::parallel);
    std::printf("%-20s serial %8.3fs   openmp %8.3fs   speedup %.2fx\n", name, s, p, s / p);
}

} // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());
    run_case("forest_fit", bench_forest);
    run_case("bootstrap_test", bench_bootstrap);
    run_case("band_depth", bench_depths);
    return 0;
}
