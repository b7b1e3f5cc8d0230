// Independent brute-force oracles used by the tests. These stay deliberately
// naive (quadratic pair counts, exhaustive scans) so they cannot share a bug
// with the implementations they check.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "imbtext/decision.hpp"
#include "imbtext/metrics.hpp"
#include "imbtext/stats.hpp"

namespace oracle {

// Mann-Whitney statistic by explicit pair enumeration, ties counted 1/2.
// Accumulated in integers and divided exactly like the implementation.
inline double auc_pair_counting(std::span<const double> scores, std::span<const int> labels) {
    std::uint64_t twice_sum = 0, n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        ++n_pos;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] == 1) continue;
            if (scores[i] > scores[j]) twice_sum += 2;
            else if (scores[i] == scores[j]) twice_sum += 1;
        }
    }
    for (int l : labels) n_neg += (l != 1);
    return double(twice_sum) / (2.0 * double(n_pos) * double(n_neg));
}

// Expected-loss minimizer by direct enumeration.
inline std::size_t expected_loss_argmin(const std::vector<double>& probs,
                                        const imbtext::LossMatrix& loss) {
    std::size_t best = 0;
    double best_cost = 0.0;
    for (std::size_t j = 0; j < probs.size(); ++j) {
        double cost = 0.0;
        for (std::size_t k = 0; k < probs.size(); ++k) cost += loss.at(k, j) * probs[k];
        if (j == 0 || cost < best_cost) {
            best = j;
            best_cost = cost;
        }
    }
    return best;
}

// Modified band depth by pair enumeration; same integer-count division shape
// as the implementation so equality can be exact.
inline std::vector<double> mbd_bruteforce(const imbtext::CurveEnsemble& ensemble) {
    std::size_t n = ensemble.size(), g = ensemble.grid_size();
    std::vector<double> depths(n, 0.0);
    std::uint64_t pairs = std::uint64_t(n) * (n - 1) / 2;
    for (std::size_t c = 0; c < n; ++c) {
        std::uint64_t covered = 0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) {
                for (std::size_t t = 0; t < g; ++t) {
                    double lo = std::min(ensemble.curves[a][t], ensemble.curves[b][t]);
                    double hi = std::max(ensemble.curves[a][t], ensemble.curves[b][t]);
                    double v = ensemble.curves[c][t];
                    if (lo <= v && v <= hi) ++covered;
                }
            }
        }
        depths[c] = double(covered) / (double(pairs) * double(g));
    }
    return depths;
}

// Best objective value over an even cutoff grid (the threshold optimizer must
// do at least this well, and exactly this well on lattice-valued scores).
inline double grid_scan_best(std::span<const double> scores, std::span<const int> labels,
                             imbtext::Objective objective, std::size_t grid_points = 10001) {
    double best = 0.0;
    bool have = false;
    std::vector<int> predicted(scores.size());
    for (std::size_t k = 0; k < grid_points; ++k) {
        double cutoff = double(k) / double(grid_points - 1);
        for (std::size_t i = 0; i < scores.size(); ++i)
            predicted[i] = scores[i] >= cutoff ? 1 : 0;
        imbtext::ConfusionCounts c = imbtext::confusion_counts(predicted, labels);
        double value;
        switch (objective) {
            case imbtext::Objective::balanced_accuracy: value = imbtext::balanced_accuracy(c); break;
            case imbtext::Objective::f1: value = imbtext::f1_score(c); break;
            default: value = imbtext::accuracy(c); break;
        }
        if (!have || value > best) {
            best = value;
            have = true;
        }
    }
    return best;
}

} // namespace oracle
