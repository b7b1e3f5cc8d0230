#pragma once

#include <cstdint>
#include <vector>

#include "imbtext/metrics.hpp"
#include "imbtext/parallel.hpp"

namespace imbtext {

// I x J grid of percentage gains: row i = one train repetition, column j = one
// augmentation replicate of that repetition.
struct GainSample {
    std::vector<std::vector<double>> values;

    std::size_t rows() const { return values.size(); }
    std::size_t cols() const { return values.empty() ? 0 : values[0].size(); }
    void validate() const;
};

struct VarianceComponents {
    double mu = 0.0;       // grand mean
    double sigma2 = 0.0;   // between-repetition variance (clamped at 0)
    double sigma2_r = 0.0; // within-repetition variance
};

struct BootstrapResult {
    double T = 0.0; // observed grand mean
    double sigma2_hat = 0.0;
    double sigma2_r_hat = 0.0;
    double p_value = 1.0;
    std::size_t B = 0;
    bool degenerate = false; // both variance estimates were zero
};

// Balanced one-way random-effects fit: mu = grand mean,
// sigma2_r = SSE / (I*J), sigma2 = max(0, between-mean variance - sigma2_r/J).
// `center_at_zero` switches the between-row spread to be taken around 0
// instead of the grand mean (the restricted variant).
VarianceComponents fit_variance_components(const GainSample& sample, bool center_at_zero = false);

// Two-sided test of zero mean gain: simulates B grand means from the fitted
// null (mu = 0) and reports the fraction at least as extreme as the observed
// one. Deterministic given seed; replicates run in parallel under Exec::parallel.
BootstrapResult bootstrap_test(const GainSample& sample, std::size_t B = 1000,
                               std::uint64_t seed = 0, Exec exec = Exec::parallel,
                               bool center_at_zero = false);

// Curves sampled on a shared increasing grid in [0, 1].
struct CurveEnsemble {
    std::vector<double> grid;
    std::vector<std::vector<double>> curves;

    std::size_t grid_size() const { return grid.size(); }
    std::size_t size() const { return curves.size(); }
    void validate() const;
};

struct FunctionalBoxplot {
    std::vector<double> depths;
    std::size_t median_index = 0;
    std::vector<double> band_lower, band_upper;   // envelope of the deepest half
    std::vector<double> fence_lower, fence_upper; // band +/- 1.5 x band height, clipped to [0,1]
    std::vector<std::size_t> outlier_indices;     // curves crossing a fence anywhere
};

std::vector<double> uniform_grid(std::size_t points);

// TPR of the curve at each grid FPR: linear interpolation between knots, with
// the supremum TPR at repeated FPR values (vertical segments).
std::vector<double> interpolate_roc(const RocCurve& curve, const std::vector<double>& grid);

// Modified band depth with curve pairs: depth of f = fraction of (pair, grid
// point) combinations whose band contains f. Needs >= 3 curves.
FunctionalBoxplot functional_boxplot(const CurveEnsemble& ensemble, Exec exec = Exec::parallel);

std::string functional_boxplot_json(const CurveEnsemble& ensemble, const FunctionalBoxplot& box,
                                    const std::vector<double>& reference_curve = {});

} // namespace imbtext
