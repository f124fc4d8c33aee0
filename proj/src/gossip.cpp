#include "gossim/gossip.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "gossim/rng.hpp"

namespace gossim {

const char* to_string(GossipMode mode) {
    switch (mode) {
        case GossipMode::PushPull: return "pushpull";
        case GossipMode::PushOnly: return "push";
        case GossipMode::PullOnly: return "pull";
    }
    return "?";
}

NodeSet gossip_round(const SpatialIndex& index, const NodeSet& informed,
                     GossipMode mode, std::uint64_t seed, std::int64_t slot) {
    const int n = index.n();
    if (informed.universe() != n)
        throw std::invalid_argument("gossip_round: informed set universe mismatch");

    NodeSet next = informed;
    const bool push = mode != GossipMode::PullOnly;
    const bool pull = mode != GossipMode::PushOnly;
    for (int i = 0; i < n; ++i) {
        const auto nbrs = index.neighbors(i);
        if (nbrs.empty()) continue;
        Rng rng = substream(seed, stream::kGossip, static_cast<std::uint64_t>(slot),
                            static_cast<std::uint64_t>(i));
        const int j = nbrs[rng.next_below(static_cast<std::uint32_t>(nbrs.size()))];
        if (push && informed.contains(i)) next.insert(j);
        if (pull && informed.contains(j)) next.insert(i);
    }
    return next;
}

SpreadTrajectory run_spread(const WorldConfig& world, const MobilitySpec& spec,
                            int source, GossipMode mode, std::int64_t max_slots,
                            std::uint64_t seed) {
    if (source < 0 || source >= world.n)
        throw std::invalid_argument("run_spread: source out of range");
    if (max_slots < 1)
        throw std::invalid_argument("run_spread: max_slots must be >= 1");

    auto [snap, state] = init_stationary(spec, world, seed);
    NodeSet informed(world.n);
    informed.insert(source);

    SpreadTrajectory traj;
    traj.source = source;
    traj.seed = seed;
    traj.sizes.reserve(64);
    traj.sizes.push_back(1);

    for (std::int64_t t = 1; t <= max_slots; ++t) {
        snap = step(spec, state, snap, world, seed);
        const SpatialIndex index(snap, world.r, world.boundary);
        informed = gossip_round(index, informed, mode, seed, t);
        traj.sizes.push_back(informed.size());
        if (informed.full()) {
            traj.completion_slot = t;
            break;
        }
    }
    return traj;
}

std::optional<std::int64_t> spreading_time(std::span<const SpreadTrajectory> runs,
                                           double epsilon) {
    if (runs.empty())
        throw std::invalid_argument("spreading_time: empty run collection");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("spreading_time: epsilon must be in (0,1)");

    std::map<int, std::vector<std::int64_t>> completions;  // source -> slots
    std::map<int, std::int64_t> counts;
    for (const auto& run : runs) {
        ++counts[run.source];
        if (run.completion_slot) completions[run.source].push_back(*run.completion_slot);
    }

    std::int64_t worst = 0;
    for (auto& [source, m] : counts) {
        // Smallest t with (#incomplete at t)/m <= eps: the k-th completion.
        const auto k = static_cast<std::int64_t>(
            std::ceil(static_cast<double>(m) * (1.0 - epsilon) - 1e-12));
        const std::int64_t need = std::max<std::int64_t>(k, 1);
        auto& done = completions[source];
        if (static_cast<std::int64_t>(done.size()) < need) return std::nullopt;
        std::nth_element(done.begin(), done.begin() + (need - 1), done.end());
        worst = std::max(worst, done[static_cast<std::size_t>(need - 1)]);
    }
    return worst;
}

MeanEstimate increment_estimate(const WorldConfig& world, const MobilitySpec& spec,
                                const NodeSet& informed, GossipMode mode,
                                std::int64_t samples, std::uint64_t seed) {
    if (samples < 1)
        throw std::invalid_argument("increment_estimate: samples must be >= 1");
    if (informed.empty())
        throw std::invalid_argument("increment_estimate: informed set is empty");

    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t s = 0; s < samples; ++s) {
        const std::uint64_t sample_seed = substream(seed, stream::kSample,
                                                    static_cast<std::uint64_t>(s))
                                              .next_u64();
        auto [snap, state] = init_stationary(spec, world, sample_seed);
        const Snapshot moved = step(spec, state, snap, world, sample_seed);
        const SpatialIndex index(moved, world.r, world.boundary);
        const NodeSet after = gossip_round(index, informed, mode, sample_seed, 1);
        const double delta = after.size() - informed.size();
        sum += delta;
        sumsq += delta * delta;
    }
    MeanEstimate est;
    est.samples = samples;
    est.mean = sum / static_cast<double>(samples);
    if (samples > 1) {
        const double var =
            (sumsq - sum * sum / static_cast<double>(samples)) /
            static_cast<double>(samples - 1);
        est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
    }
    return est;
}

}  // namespace gossim
