#include "gossim/conductance.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "gossim/rng.hpp"

namespace gossim {

const char* to_string(QuotientKind kind) {
    return kind == QuotientKind::ExactPij ? "exact_pij" : "edge_count";
}

CutRule CutRule::fixed(std::string id, NodeSet set) {
    return {std::move(id), [set = std::move(set)](const Snapshot&) { return set; }};
}

CutRule CutRule::axis_sweep(int axis, double offset) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s@%.4f", axis == 0 ? "vsweep" : "hsweep", offset);
    return {buf, [axis, offset](const Snapshot& snap) {
                const int n = snap.n();
                NodeSet below(n);
                for (int i = 0; i < n; ++i) {
                    const double c = axis == 0 ? snap.positions[i].x : snap.positions[i].y;
                    if (c < offset) below.insert(i);
                }
                // Smaller side; ties go to the below-line set.
                return below.size() * 2 <= n ? below : below.complement();
            }};
}

CutRule CutRule::bisection() {
    CutRule rule = axis_sweep(0, 0.5);
    rule.id = "bisection";
    return rule;
}

CutFamily CutFamily::sweep_default() {
    CutFamily f;
    f.vertical_offsets = 32;
    f.horizontal_offsets = 32;
    f.bisection = true;
    return f;
}

CutFamily CutFamily::bisection_only() {
    CutFamily f;
    f.bisection = true;
    return f;
}

CutFamily CutFamily::random_only(int count) {
    CutFamily f;
    f.random_balanced = count;
    return f;
}

CutFamily CutFamily::exhaustive_only() {
    CutFamily f;
    f.exhaustive = true;
    return f;
}

std::vector<CutRule> make_cuts(const CutFamily& family, int n, std::uint64_t seed) {
    std::vector<CutRule> rules;
    for (int axis = 0; axis < 2; ++axis) {
        const int count = axis == 0 ? family.vertical_offsets : family.horizontal_offsets;
        for (int k = 1; k <= count; ++k)
            rules.push_back(CutRule::axis_sweep(axis, static_cast<double>(k) / (count + 1)));
    }
    if (family.bisection) rules.push_back(CutRule::bisection());
    if (family.random_balanced > 0) {
        Rng rng = substream(seed, stream::kCut);
        for (int c = 0; c < family.random_balanced; ++c) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "random#%d", c);
            rules.push_back(CutRule::fixed(buf, sample_node_subset(rng, n, n / 2)));
        }
    }
    if (family.exhaustive) {
        if (n > 14)
            throw std::invalid_argument("make_cuts: exhaustive family refused for n > 14");
        const std::uint32_t limit = 1u << n;
        for (std::uint32_t mask = 1; mask < limit - 1; ++mask) {
            if (2 * __builtin_popcount(mask) > n) continue;
            NodeSet set(n);
            for (int i = 0; i < n; ++i)
                if (mask & (1u << i)) set.insert(i);
            char buf[32];
            std::snprintf(buf, sizeof buf, "set#%x", mask);
            rules.push_back(CutRule::fixed(buf, std::move(set)));
        }
    }
    if (rules.empty()) throw std::invalid_argument("make_cuts: empty cut family");
    return rules;
}

double exact_pij_quotient(const SpatialIndex& index, const NodeSet& cut) {
    double sum = 0.0;
    cut.for_each([&](int i) {
        const auto nbrs = index.neighbors(i);
        if (nbrs.empty()) return;
        int cross = 0;
        for (int j : nbrs)
            if (!cut.contains(j)) ++cross;
        sum += static_cast<double>(cross) / static_cast<double>(nbrs.size());
    });
    return sum / static_cast<double>(cut.size());
}

double edge_count_quotient_value(const SpatialIndex& index, const NodeSet& cut) {
    const double n = index.n();
    const double r = index.radius();
    const double p_nr = 1.0 / (n * M_PI * r * r);
    return p_nr * static_cast<double>(index.crossing_edges(cut)) /
           static_cast<double>(cut.size());
}

namespace {

struct Accumulator {
    double sum = 0.0;
    double sumsq = 0.0;
    std::int64_t count = 0;

    void add(double x) {
        sum += x;
        sumsq += x * x;
        ++count;
    }

    ConductanceEstimate estimate(const std::string& id, QuotientKind kind) const {
        ConductanceEstimate est;
        est.cut_id = id;
        est.kind = kind;
        est.samples = count;
        if (count > 0) est.mean = sum / static_cast<double>(count);
        if (count > 1) {
            const double var = (sumsq - sum * sum / static_cast<double>(count)) /
                               static_cast<double>(count - 1);
            est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
        }
        return est;
    }
};

double quotient_value(const SpatialIndex& index, const NodeSet& cut, QuotientKind kind) {
    return kind == QuotientKind::ExactPij ? exact_pij_quotient(index, cut)
                                          : edge_count_quotient_value(index, cut);
}

}  // namespace

double cut_quotient_sample(const WorldConfig& world, const MobilitySpec& spec,
                           const NodeSet& cut, std::uint64_t seed) {
    if (cut.empty() || cut.universe() != world.n)
        throw std::invalid_argument("cut_quotient_sample: invalid cut");
    auto [snap, state] = init_stationary(spec, world, seed);
    const Snapshot moved = step(spec, state, snap, world, seed);
    const SpatialIndex index(moved, world.r, world.boundary);
    return exact_pij_quotient(index, cut);
}

std::vector<ConductanceEstimate> estimate_rule_quotients(
    const WorldConfig& world, const MobilitySpec& spec,
    std::span<const CutRule> rules, QuotientKind kind, std::int64_t samples,
    std::uint64_t seed, const FrozenStart* frozen) {
    if (samples < 1)
        throw std::invalid_argument("estimate_rule_quotients: samples must be >= 1");
    if (rules.empty())
        throw std::invalid_argument("estimate_rule_quotients: no cut rules");

    std::vector<Accumulator> acc(rules.size());

    // Frozen mode: the pre-move snapshot is fixed, so cuts materialize once.
    std::vector<NodeSet> frozen_cuts;
    if (frozen) {
        frozen_cuts.reserve(rules.size());
        for (const auto& rule : rules) frozen_cuts.push_back(rule.materialize(frozen->snap));
    }

    for (std::int64_t s = 0; s < samples; ++s) {
        const std::uint64_t sample_seed =
            substream(seed, stream::kSample, static_cast<std::uint64_t>(s)).next_u64();
        if (frozen) {
            const Snapshot moved = step(spec, frozen->state, frozen->snap, world, sample_seed);
            const SpatialIndex index(moved, world.r, world.boundary);
            for (std::size_t c = 0; c < rules.size(); ++c)
                if (!frozen_cuts[c].empty())
                    acc[c].add(quotient_value(index, frozen_cuts[c], kind));
        } else {
            auto [snap, state] = init_stationary(spec, world, sample_seed);
            const Snapshot moved = step(spec, state, snap, world, sample_seed);
            const SpatialIndex index(moved, world.r, world.boundary);
            for (std::size_t c = 0; c < rules.size(); ++c) {
                const NodeSet cut = rules[c].materialize(snap);
                if (!cut.empty()) acc[c].add(quotient_value(index, cut, kind));
            }
        }
    }

    std::vector<ConductanceEstimate> out;
    out.reserve(rules.size());
    for (std::size_t c = 0; c < rules.size(); ++c)
        out.push_back(acc[c].estimate(rules[c].id, kind));
    return out;
}

ConductanceEstimate estimate_rule_quotient(const WorldConfig& world,
                                           const MobilitySpec& spec,
                                           const CutRule& rule, QuotientKind kind,
                                           std::int64_t samples, std::uint64_t seed,
                                           const FrozenStart* frozen) {
    return estimate_rule_quotients(world, spec, {&rule, 1}, kind, samples, seed,
                                   frozen)[0];
}

ConductanceEstimate estimate_cut_quotient(const WorldConfig& world,
                                          const MobilitySpec& spec, const NodeSet& cut,
                                          std::int64_t samples, std::uint64_t seed) {
    if (cut.empty() || cut.universe() != world.n)
        throw std::invalid_argument("estimate_cut_quotient: invalid cut");
    return estimate_rule_quotient(world, spec, CutRule::fixed("cut", cut),
                                  QuotientKind::ExactPij, samples, seed);
}

ConductanceEstimate edge_count_quotient(const WorldConfig& world,
                                        const MobilitySpec& spec, const NodeSet& cut,
                                        std::int64_t samples, std::uint64_t seed) {
    if (cut.empty() || cut.universe() != world.n)
        throw std::invalid_argument("edge_count_quotient: invalid cut");
    return estimate_rule_quotient(world, spec, CutRule::fixed("cut", cut),
                                  QuotientKind::EdgeCountApprox, samples, seed);
}

namespace {

std::pair<NodeSet, ConductanceEstimate> minimize_rules(
    const WorldConfig& world, const MobilitySpec& spec,
    const std::vector<CutRule>& rules, std::int64_t samples, std::uint64_t seed,
    const FrozenStart* frozen) {
    const auto estimates = estimate_rule_quotients(world, spec, rules,
                                                   QuotientKind::ExactPij, samples,
                                                   seed, frozen);
    std::size_t best = rules.size();
    for (std::size_t c = 0; c < rules.size(); ++c) {
        if (estimates[c].samples == 0) continue;
        if (best == rules.size() || estimates[c].mean < estimates[best].mean) best = c;
    }
    if (best == rules.size())
        throw std::invalid_argument("minimize_over_family: family generates no valid cut");

    // Winner materialized on the reference pre-move snapshot.
    NodeSet winner;
    if (frozen) {
        winner = rules[best].materialize(frozen->snap);
    } else {
        const std::uint64_t sample_seed = substream(seed, stream::kSample, 0).next_u64();
        winner = rules[best].materialize(init_stationary(spec, world, sample_seed).first);
    }
    return {std::move(winner), estimates[best]};
}

}  // namespace

std::pair<NodeSet, ConductanceEstimate> minimize_over_family(
    const WorldConfig& world, const MobilitySpec& spec, const CutFamily& family,
    std::int64_t samples, std::uint64_t seed, const FrozenStart* frozen) {
    return minimize_rules(world, spec, make_cuts(family, world.n, seed), samples,
                          seed, frozen);
}

std::pair<NodeSet, ConductanceEstimate> brute_force_min(
    const WorldConfig& world, const MobilitySpec& spec, std::int64_t samples,
    std::uint64_t seed, const FrozenStart* frozen) {
    if (world.n > 14)
        throw std::invalid_argument("brute_force_min: refused for n > 14 (2^n cuts)");
    return minimize_rules(world, spec, make_cuts(CutFamily::exhaustive_only(), world.n, seed),
                          samples, seed, frozen);
}

}  // namespace gossim
