#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gossim/geometry.hpp"

namespace gossim {

enum class MobilityKind {
    Static,
    FullyRandom,
    PartiallyRandom,
    VelocityConstrained,
    AreaConstrained1D,
    AreaConstrained2D,
};

const char* to_string(MobilityKind kind);

struct MobilitySpec {
    MobilityKind kind = MobilityKind::Static;
    int k = 0;           // PartiallyRandom: number of mobile nodes
    double v_max = 0.0;  // VelocityConstrained: per-slot speed bound
    int n_v = 0;         // AreaConstrained1D: vertically moving nodes
    int n_h = 0;         // AreaConstrained1D: horizontally moving nodes
    double r_c = 0.0;    // AreaConstrained2D: roaming radius around home

    static MobilitySpec statics();
    static MobilitySpec fully_random();
    static MobilitySpec partially_random(int k);
    static MobilitySpec velocity(double v_max);
    static MobilitySpec area1d(int n_v, int n_h);
    static MobilitySpec area2d(double r_c);

    // Throws std::invalid_argument naming the offending field.
    void validate(int n) const;

    // Compact descriptor for CSV output, e.g. "velocity(v=0.1)".
    std::string label() const;

    // The model's scalar parameter (k, v_max, n_v or r_c; 0 otherwise).
    double param() const;
};

// Quenched auxiliary data, drawn once at initialization and immutable for
// the rest of the run.
struct MobilityState {
    NodeSet mobile;                              // PartiallyRandom
    std::vector<std::uint8_t> moves_vertically;  // AreaConstrained1D
    std::vector<Position> anchors;               // AC1D fixed line / AC2D home
};

// Draw the stationary snapshot (slot 0) and auxiliary state.
std::pair<Snapshot, MobilityState> init_stationary(const MobilitySpec& spec,
                                                   const WorldConfig& world,
                                                   std::uint64_t seed);

// One move phase. Per-node transitions come from substreams of
// (seed, slot+1, node), so the result does not depend on update order.
Snapshot step(const MobilitySpec& spec, const MobilityState& state,
              const Snapshot& snap, const WorldConfig& world, std::uint64_t seed);

// |X_i(t+1) - X_i(t)| under the configured distance.
double speed_of(const Snapshot& before, const Snapshot& after, int i,
                Boundary boundary);

}  // namespace gossim
