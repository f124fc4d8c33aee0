// Independent test oracles: deliberately simple O(n^2)/direct implementations
// kept apart from the library code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "gossim/geometry.hpp"
#include "gossim/rng.hpp"

namespace oracles {

// All-pairs neighbor sets by direct distance checks.
inline std::vector<std::vector<int>> brute_force_neighbors(
    const gossim::Snapshot& snap, double r, gossim::Boundary boundary) {
    const int n = snap.n();
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j &&
                gossim::distance(snap.positions[i], snap.positions[j], boundary) <= r)
                adj[i].push_back(j);
    return adj;
}

// Crossing pairs by direct pair enumeration.
inline std::int64_t brute_force_crossing(const gossim::Snapshot& snap, double r,
                                         gossim::Boundary boundary,
                                         const gossim::NodeSet& cut) {
    const int n = snap.n();
    std::int64_t count = 0;
    for (int i = 0; i < n; ++i) {
        if (!cut.contains(i)) continue;
        for (int j = 0; j < n; ++j) {
            if (cut.contains(j)) continue;
            if (gossim::distance(snap.positions[i], snap.positions[j], boundary) <= r)
                ++count;
        }
    }
    return count;
}

// Kolmogorov-Smirnov distance of a sample against the uniform CDF on [0,1].
inline double ks_uniform(std::vector<double> sample) {
    std::sort(sample.begin(), sample.end());
    const double m = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double x = sample[i];
        d = std::max(d, std::abs((i + 1) / m - x));
        d = std::max(d, std::abs(x - i / m));
    }
    return d;
}

// Complete-graph push-pull rounds-to-completion: every node contacts a
// uniform random other node. Direct simulation, no geometry involved.
inline int complete_graph_pushpull(int n, gossim::Rng& rng, int max_rounds = 10000) {
    std::vector<char> informed(static_cast<std::size_t>(n), 0);
    informed[0] = 1;
    int count = 1;
    for (int t = 1; t <= max_rounds; ++t) {
        std::vector<char> next = informed;
        for (int i = 0; i < n; ++i) {
            int j = static_cast<int>(rng.next_below(static_cast<std::uint32_t>(n - 1)));
            if (j >= i) ++j;
            if (informed[i] && !next[j]) { next[j] = 1; ++count; }
            if (informed[j] && !next[i]) { next[i] = 1; ++count; }
        }
        informed.swap(next);
        if (count == n) return t;
    }
    return -1;
}

struct Stats {
    double mean = 0.0;
    double std_error = 0.0;
};

inline Stats mean_se(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                                static_cast<double>(xs.size()));
    }
    return s;
}

// Pearson correlation.
inline double correlation(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double m = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) { mx += xs[i]; my += ys[i]; }
    mx /= m;
    my /= m;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace oracles
