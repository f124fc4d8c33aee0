#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gossim/geometry.hpp"
#include "gossim/mobility.hpp"

namespace gossim {

enum class QuotientKind { ExactPij, EdgeCountApprox };

const char* to_string(QuotientKind kind);

struct ConductanceEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t samples = 0;  // valid samples that entered the mean
    std::string cut_id;
    QuotientKind kind = QuotientKind::ExactPij;
};

// A cut is a node set fixed at slot t, before the move. Geometric rules
// rematerialize their id set from each sampled pre-move snapshot; fixed rules
// always return the same ids. materialize() yields the smaller side and may
// be empty (degenerate sample, skipped by the estimators).
struct CutRule {
    std::string id;
    std::function<NodeSet(const Snapshot&)> materialize;

    static CutRule fixed(std::string id, NodeSet set);
    // axis 0: vertical line x = offset; axis 1: horizontal line y = offset.
    static CutRule axis_sweep(int axis, double offset);
    static CutRule bisection();
};

struct CutFamily {
    int vertical_offsets = 0;    // evenly spaced vertical sweep lines
    int horizontal_offsets = 0;  // evenly spaced horizontal sweep lines
    bool bisection = false;
    int random_balanced = 0;     // random id sets of size floor(n/2)
    bool exhaustive = false;     // every set of size 1..floor(n/2); n <= 14

    static CutFamily sweep_default();  // 32 lines per axis + bisection
    static CutFamily bisection_only();
    static CutFamily random_only(int count);
    static CutFamily exhaustive_only();
};

std::vector<CutRule> make_cuts(const CutFamily& family, int n, std::uint64_t seed);

// Sum over i in cut of (neighbors outside cut)/degree, divided by |cut|.
// Isolated nodes contribute zero.
double exact_pij_quotient(const SpatialIndex& index, const NodeSet& cut);

// Crossing-edge count scaled by P(n,r)/|cut| with P(n,r) = 1/(n pi r^2).
double edge_count_quotient_value(const SpatialIndex& index, const NodeSet& cut);

// Pre-move configuration held fixed across samples (move randomness only).
struct FrozenStart {
    Snapshot snap;
    MobilityState state;
};

// One sample of the cut quotient: draw a stationary snapshot, apply one move
// step, evaluate the exact-P_ij quotient of the fixed cut on the post-move
// graph.
double cut_quotient_sample(const WorldConfig& world, const MobilitySpec& spec,
                           const NodeSet& cut, std::uint64_t seed);

ConductanceEstimate estimate_cut_quotient(const WorldConfig& world,
                                          const MobilitySpec& spec,
                                          const NodeSet& cut, std::int64_t samples,
                                          std::uint64_t seed);

ConductanceEstimate edge_count_quotient(const WorldConfig& world,
                                        const MobilitySpec& spec, const NodeSet& cut,
                                        std::int64_t samples, std::uint64_t seed);

// Shared-sample estimator over a set of cut rules (common random numbers:
// every rule sees the same pre/post snapshot pairs). With frozen set, the
// pre-move snapshot is held fixed and only the move is resampled.
std::vector<ConductanceEstimate> estimate_rule_quotients(
    const WorldConfig& world, const MobilitySpec& spec,
    std::span<const CutRule> rules, QuotientKind kind, std::int64_t samples,
    std::uint64_t seed, const FrozenStart* frozen = nullptr);

ConductanceEstimate estimate_rule_quotient(const WorldConfig& world,
                                           const MobilitySpec& spec,
                                           const CutRule& rule, QuotientKind kind,
                                           std::int64_t samples, std::uint64_t seed,
                                           const FrozenStart* frozen = nullptr);

// Family member with the smallest estimated mean (ties resolved by generation
// order); the returned set is the winner materialized on the reference
// pre-move snapshot.
std::pair<NodeSet, ConductanceEstimate> minimize_over_family(
    const WorldConfig& world, const MobilitySpec& spec, const CutFamily& family,
    std::int64_t samples, std::uint64_t seed, const FrozenStart* frozen = nullptr);

// Exact minimization over every cut of size 1..floor(n/2); refuses n > 14.
std::pair<NodeSet, ConductanceEstimate> brute_force_min(
    const WorldConfig& world, const MobilitySpec& spec, std::int64_t samples,
    std::uint64_t seed, const FrozenStart* frozen = nullptr);

}  // namespace gossim
