#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gossim/geometry.hpp"
#include "gossim/mobility.hpp"

namespace gossim {

enum class GossipMode { PushPull, PushOnly, PullOnly };

const char* to_string(GossipMode mode);

// One gossip phase on the post-move graph. Every node with at least one
// neighbor contacts exactly one of them uniformly at random; deliveries are
// evaluated against the informed set at the start of the round. Isolated
// nodes skip the phase.
NodeSet gossip_round(const SpatialIndex& index, const NodeSet& informed,
                     GossipMode mode, std::uint64_t seed, std::int64_t slot);

struct SpreadTrajectory {
    std::vector<int> sizes;  // sizes[t] = |S(t)|, sizes[0] = 1
    std::optional<std::int64_t> completion_slot;
    int source = 0;
    std::uint64_t seed = 0;
};

// Move-and-gossip loop: per slot, move every node, rebuild the index, run one
// gossip round. Stops when everyone is informed or after max_slots (the
// trajectory is returned either way; completion_slot stays empty on timeout).
SpreadTrajectory run_spread(const WorldConfig& world, const MobilitySpec& spec,
                            int source, GossipMode mode, std::int64_t max_slots,
                            std::uint64_t seed);

// Empirical epsilon-spreading time: per source, the smallest t with at most an
// epsilon fraction of that source's runs incomplete at t; maximized over the
// sources present. Empty when some source never reaches that fraction within
// the recorded horizon.
std::optional<std::int64_t> spreading_time(std::span<const SpreadTrajectory> runs,
                                           double epsilon);

struct MeanEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;
};

// Monte-Carlo estimate of E[|S(t+1)| - |S(t)|] conditioned on the informed
// set, over the joint move+gossip randomness from a stationary start.
MeanEstimate increment_estimate(const WorldConfig& world, const MobilitySpec& spec,
                                const NodeSet& informed, GossipMode mode,
                                std::int64_t samples, std::uint64_t seed);

}  // namespace gossim
