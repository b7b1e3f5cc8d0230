#include "imbtext/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "imbtext/rng.hpp"

namespace imbtext {

void GainSample::validate() const {
    if (rows() < 2) throw std::invalid_argument("GainSample: needs at least two repetitions");
    std::size_t j = values[0].size();
    if (j < 2) throw std::invalid_argument("GainSample: needs at least two replicates");
    for (const auto& row : values) {
        if (row.size() != j) throw std::invalid_argument("GainSample: ragged matrix");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("GainSample: non-finite value");
    }
}

VarianceComponents fit_variance_components(const GainSample& sample, bool center_at_zero) {
    sample.validate();
    std::size_t i_n = sample.rows(), j_n = sample.cols();

    double grand = 0.0;
    std::vector<double> row_means(i_n, 0.0);
    for (std::size_t i = 0; i < i_n; ++i) {
        for (double v : sample.values[i]) row_means[i] += v;
        row_means[i] /= double(j_n);
        grand += row_means[i];
    }
    grand /= double(i_n);

    double sse = 0.0;
    for (std::size_t i = 0; i < i_n; ++i)
        for (double v : sample.values[i]) sse += (v - row_means[i]) * (v - row_means[i]);

    VarianceComponents vc;
    vc.mu = grand;
    vc.sigma2_r = sse / double(i_n * j_n);
    double center = center_at_zero ? 0.0 : grand;
    double between = 0.0;
    for (double rm : row_means) between += (rm - center) * (rm - center);
    between /= double(i_n);
    vc.sigma2 = std::max(0.0, between - vc.sigma2_r / double(j_n));
    return vc;
}

BootstrapResult bootstrap_test(const GainSample& sample, std::size_t B, std::uint64_t seed,
                               Exec exec, bool center_at_zero) {
    if (B == 0) throw std::invalid_argument("bootstrap_test: B must be positive");
    VarianceComponents vc = fit_variance_components(sample, center_at_zero);
    std::size_t i_n = sample.rows(), j_n = sample.cols();

    double t_obs = 0.0;
    for (const auto& row : sample.values)
        for (double v : row) t_obs += v;
    t_obs /= double(i_n * j_n);

    BootstrapResult result;
    result.T = t_obs;
    result.sigma2_hat = vc.sigma2;
    result.sigma2_r_hat = vc.sigma2_r;
    result.B = B;

    if (vc.sigma2 == 0.0 && vc.sigma2_r == 0.0) {
        result.degenerate = true;
        result.p_value = t_obs == 0.0 ? 1.0 : 0.0;
        return result;
    }

    double sd_between = std::sqrt(vc.sigma2);
    double sd_within = std::sqrt(vc.sigma2_r);
    std::vector<double> stats(B);
    for_each_index(B, exec, [&](std::size_t b) {
        Rng rng(derive_seed(seed, std::string_view("bootstrap"), std::uint64_t(b)));
        double sum = 0.0;
        for (std::size_t i = 0; i < i_n; ++i) {
            double m = sd_between > 0.0 ? rng.normal(0.0, sd_between) : 0.0;
            for (std::size_t j = 0; j < j_n; ++j)
                sum += m + (sd_within > 0.0 ? rng.normal(0.0, sd_within) : 0.0);
        }
        stats[b] = sum / double(i_n * j_n);
    });

    std::size_t exceed = 0;
    for (double t : stats)
        if (std::fabs(t) >= std::fabs(t_obs)) ++exceed;
    result.p_value = double(exceed) / double(B);
    return result;
}

void CurveEnsemble::validate() const {
    if (grid.size() < 2) throw std::invalid_argument("CurveEnsemble: grid needs >= 2 points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]))
            throw std::invalid_argument("CurveEnsemble: grid must be strictly increasing");
    for (const auto& c : curves)
        if (c.size() != grid.size())
            throw std::invalid_argument("CurveEnsemble: curve length does not match grid");
}

std::vector<double> uniform_grid(std::size_t points) {
    if (points < 2) throw std::invalid_argument("uniform_grid: needs >= 2 points");
    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) grid[i] = double(i) / double(points - 1);
    return grid;
}

std::vector<double> interpolate_roc(const RocCurve& curve, const std::vector<double>& grid) {
    if (curve.size() < 2) throw std::invalid_argument("interpolate_roc: degenerate curve");
    std::vector<double> out(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double q = grid[g];
        // last knot with fpr <= q carries the supremum TPR at that fpr
        std::size_t lo = 0;
        for (std::size_t i = 0; i < curve.size(); ++i)
            if (curve.fpr[i] <= q) lo = i;
        if (curve.fpr[lo] == q) {
            out[g] = curve.tpr[lo];
            continue;
        }
        std::size_t hi = lo;
        while (hi < curve.size() && curve.fpr[hi] <= q) ++hi;
        if (hi == curve.size()) {
            out[g] = curve.tpr.back();
            continue;
        }
        double x0 = curve.fpr[lo], y0 = curve.tpr[lo];
        double x1 = curve.fpr[hi], y1 = curve.tpr[hi];
        out[g] = y0 + (q - x0) * (y1 - y0) / (x1 - x0);
    }
    return out;
}

FunctionalBoxplot functional_boxplot(const CurveEnsemble& ensemble, Exec exec) {
    ensemble.validate();
    std::size_t n = ensemble.size();
    if (n < 3) throw std::invalid_argument("functional_boxplot: needs at least 3 curves");
    std::size_t g_n = ensemble.grid_size();

    // Rank-based modified band depth: at each grid point, a pair band misses a
    // curve value v exactly when both pair members are strictly below or
    // strictly above v. Integer accumulation so the result matches the
    // pair-enumeration definition bit for bit.
    std::vector<std::vector<double>> sorted_at(g_n);
    for (std::size_t t = 0; t < g_n; ++t) {
        sorted_at[t].resize(n);
        for (std::size_t c = 0; c < n; ++c) sorted_at[t][c] = ensemble.curves[c][t];
        std::sort(sorted_at[t].begin(), sorted_at[t].end());
    }

    auto pairs_of = [](std::uint64_t k) { return k * (k - 1) / 2; };
    std::uint64_t total_pairs = pairs_of(n);

    FunctionalBoxplot box;
    box.depths.resize(n);
    std::vector<std::uint64_t> covered(n, 0);
    for_each_index(n, exec, [&](std::size_t c) {
        std::uint64_t sum = 0;
        for (std::size_t t = 0; t < g_n; ++t) {
            const auto& vals = sorted_at[t];
            double v = ensemble.curves[c][t];
            std::uint64_t below =
                std::uint64_t(std::lower_bound(vals.begin(), vals.end(), v) - vals.begin());
            std::uint64_t above =
                std::uint64_t(vals.end() - std::upper_bound(vals.begin(), vals.end(), v));
            sum += total_pairs - pairs_of(below) - pairs_of(above);
        }
        covered[c] = sum;
    });
    for (std::size_t c = 0; c < n; ++c)
        box.depths[c] = double(covered[c]) / (double(total_pairs) * double(g_n));

    // deepest curve = median; deepest ceil(n/2) curves span the central band
    std::vector<std::size_t> order(n);
    for (std::size_t c = 0; c < n; ++c) order[c] = c;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return box.depths[a] > box.depths[b];
    });
    box.median_index = order[0];

    std::size_t half = (n + 1) / 2;
    box.band_lower.assign(g_n, std::numeric_limits<double>::infinity());
    box.band_upper.assign(g_n, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < half; ++i) {
        const auto& curve = ensemble.curves[order[i]];
        for (std::size_t t = 0; t < g_n; ++t) {
            box.band_lower[t] = std::min(box.band_lower[t], curve[t]);
            box.band_upper[t] = std::max(box.band_upper[t], curve[t]);
        }
    }

    box.fence_lower.resize(g_n);
    box.fence_upper.resize(g_n);
    for (std::size_t t = 0; t < g_n; ++t) {
        double height = box.band_upper[t] - box.band_lower[t];
        box.fence_lower[t] = std::max(0.0, box.band_lower[t] - 1.5 * height);
        box.fence_upper[t] = std::min(1.0, box.band_upper[t] + 1.5 * height);
    }

    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t t = 0; t < g_n; ++t) {
            if (ensemble.curves[c][t] < box.fence_lower[t] ||
                ensemble.curves[c][t] > box.fence_upper[t]) {
                box.outlier_indices.push_back(c);
                break;
            }
        }
    }
    return box;
}

std::string functional_boxplot_json(const CurveEnsemble& ensemble, const FunctionalBoxplot& box,
                                    const std::vector<double>& reference_curve) {
    nlohmann::json j;
    j["grid"] = ensemble.grid;
    j["depths"] = box.depths;
    j["median_index"] = box.median_index;
    j["median"] = ensemble.curves[box.median_index];
    j["band_lower"] = box.band_lower;
    j["band_upper"] = box.band_upper;
    j["fence_lower"] = box.fence_lower;
    j["fence_upper"] = box.fence_upper;
    j["outliers"] = box.outlier_indices;
    if (!reference_curve.empty()) j["reference_curve"] = reference_curve;
    return j.dump(2);
}

} // namespace imbtext
