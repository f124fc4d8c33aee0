#include "gossim/mobility.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "gossim/rng.hpp"

namespace gossim {

const char* to_string(MobilityKind kind) {
    switch (kind) {
        case MobilityKind::Static: return "static";
        case MobilityKind::FullyRandom: return "fully-random";
        case MobilityKind::PartiallyRandom: return "partial";
        case MobilityKind::VelocityConstrained: return "velocity";
        case MobilityKind::AreaConstrained1D: return "area1d";
        case MobilityKind::AreaConstrained2D: return "area2d";
    }
    return "?";
}

MobilitySpec MobilitySpec::statics() { return {}; }

MobilitySpec MobilitySpec::fully_random() {
    MobilitySpec s;
    s.kind = MobilityKind::FullyRandom;
    return s;
}

MobilitySpec MobilitySpec::partially_random(int k) {
    MobilitySpec s;
    s.kind = MobilityKind::PartiallyRandom;
    s.k = k;
    return s;
}

MobilitySpec MobilitySpec::velocity(double v_max) {
    MobilitySpec s;
    s.kind = MobilityKind::VelocityConstrained;
    s.v_max = v_max;
    return s;
}

MobilitySpec MobilitySpec::area1d(int n_v, int n_h) {
    MobilitySpec s;
    s.kind = MobilityKind::AreaConstrained1D;
    s.n_v = n_v;
    s.n_h = n_h;
    return s;
}

MobilitySpec MobilitySpec::area2d(double r_c) {
    MobilitySpec s;
    s.kind = MobilityKind::AreaConstrained2D;
    s.r_c = r_c;
    return s;
}

void MobilitySpec::validate(int n) const {
    switch (kind) {
        case MobilityKind::Static:
        case MobilityKind::FullyRandom:
            break;
        case MobilityKind::PartiallyRandom:
            if (k < 0 || k > n)
                throw std::invalid_argument("model.k must be in [0, n]");
            break;
        case MobilityKind::VelocityConstrained:
            if (v_max < 0.0 || v_max > std::sqrt(2.0))
                throw std::invalid_argument("model.vmax must be in [0, sqrt(2)]");
            break;
        case MobilityKind::AreaConstrained1D:
            if (n_v < 0 || n_h < 0 || n_v + n_h != n)
                throw std::invalid_argument("model.nv + model.nh must equal n");
            break;
        case MobilityKind::AreaConstrained2D:
            if (!(r_c > 0.0))
                throw std::invalid_argument("model.rc must be > 0");
            break;
    }
}

std::string MobilitySpec::label() const {
    char buf[64];
    switch (kind) {
        case MobilityKind::Static: return "static";
        case MobilityKind::FullyRandom: return "fully-random";
        case MobilityKind::PartiallyRandom:
            std::snprintf(buf, sizeof buf, "partial(k=%d)", k);
            return buf;
        case MobilityKind::VelocityConstrained:
            std::snprintf(buf, sizeof buf, "velocity(v=%g)", v_max);
            return buf;
        case MobilityKind::AreaConstrained1D:
            std::snprintf(buf, sizeof buf, "area1d(nv=%d,nh=%d)", n_v, n_h);
            return buf;
        case MobilityKind::AreaConstrained2D:
            std::snprintf(buf, sizeof buf, "area2d(rc=%g)", r_c);
            return buf;
    }
    return "?";
}

double MobilitySpec::param() const {
    switch (kind) {
        case MobilityKind::PartiallyRandom: return k;
        case MobilityKind::VelocityConstrained: return v_max;
        case MobilityKind::AreaConstrained1D: return n_v;
        case MobilityKind::AreaConstrained2D: return r_c;
        default: return 0.0;
    }
}

namespace {

inline double wrap01(double x) {
    x -= std::floor(x);
    return x < 1.0 ? x : 0.0;
}

inline Position disk_offset(Rng& rng, double radius) {
    const double rho = radius * std::sqrt(rng.next_unit());
    const double theta = 2.0 * M_PI * rng.next_unit();
    return {rho * std::cos(theta), rho * std::sin(theta)};
}

inline bool in_unit_square(const Position& p) {
    return p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0;
}

// Uniform on the disk around `center` intersected with the world: wrap on the
// torus, rejection-resample on the square.
inline Position disk_move(Rng& rng, const Position& center, double radius,
                          Boundary boundary) {
    if (boundary == Boundary::Torus) {
        const Position d = disk_offset(rng, radius);
        return {wrap01(center.x + d.x), wrap01(center.y + d.y)};
    }
    for (;;) {
        const Position d = disk_offset(rng, radius);
        const Position p{center.x + d.x, center.y + d.y};
        if (in_unit_square(p)) return p;
    }
}

}  // namespace

std::pair<Snapshot, MobilityState> init_stationary(const MobilitySpec& spec,
                                                   const WorldConfig& world,
                                                   std::uint64_t seed) {
    world.validate();
    spec.validate(world.n);
    const int n = world.n;

    MobilityState state;
    Rng aux = substream(seed, stream::kAux);
    switch (spec.kind) {
        case MobilityKind::PartiallyRandom:
            state.mobile = sample_node_subset(aux, n, spec.k);
            break;
        case MobilityKind::AreaConstrained1D: {
            const NodeSet vertical = sample_node_subset(aux, n, spec.n_v);
            state.moves_vertically.assign(static_cast<std::size_t>(n), 0);
            state.anchors.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                state.moves_vertically[i] = vertical.contains(i) ? 1 : 0;
                Rng node = substream(seed, stream::kAux, 1, static_cast<std::uint64_t>(i));
                if (state.moves_vertically[i])
                    state.anchors[i] = {node.next_unit(), 0.0};  // fixed x line
                else
                    state.anchors[i] = {0.0, node.next_unit()};  // fixed y line
            }
            break;
        }
        case MobilityKind::AreaConstrained2D: {
            state.anchors.resize(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                Rng node = substream(seed, stream::kAux, 1, static_cast<std::uint64_t>(i));
                state.anchors[i] = {node.next_unit(), node.next_unit()};
            }
            break;
        }
        default:
            break;
    }

    Snapshot snap;
    snap.slot = 0;
    snap.positions.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng rng = substream(seed, stream::kInit, static_cast<std::uint64_t>(i));
        switch (spec.kind) {
            case MobilityKind::AreaConstrained1D:
                if (state.moves_vertically[i])
                    snap.positions[i] = {state.anchors[i].x, rng.next_unit()};
                else
                    snap.positions[i] = {rng.next_unit(), state.anchors[i].y};
                break;
            case MobilityKind::AreaConstrained2D:
                snap.positions[i] =
                    disk_move(rng, state.anchors[i], spec.r_c, world.boundary);
                break;
            default:
                snap.positions[i] = {rng.next_unit(), rng.next_unit()};
                break;
        }
    }
    return {std::move(snap), std::move(state)};
}

Snapshot step(const MobilitySpec& spec, const MobilityState& state,
              const Snapshot& snap, const WorldConfig& world, std::uint64_t seed) {
    const int n = snap.n();
    Snapshot next;
    next.slot = snap.slot + 1;
    next.positions.resize(static_cast<std::size_t>(n));

    for (int i = 0; i < n; ++i) {
        Rng rng = substream(seed, stream::kMove, static_cast<std::uint64_t>(next.slot),
                            static_cast<std::uint64_t>(i));
        const Position& cur = snap.positions[i];
        switch (spec.kind) {
            case MobilityKind::Static:
                next.positions[i] = cur;
                break;
            case MobilityKind::FullyRandom:
                next.positions[i] = {rng.next_unit(), rng.next_unit()};
                break;
            case MobilityKind::PartiallyRandom:
                next.positions[i] = state.mobile.contains(i)
                                        ? Position{rng.next_unit(), rng.next_unit()}
                                        : cur;
                break;
            case MobilityKind::VelocityConstrained:
                next.positions[i] = spec.v_max > 0.0
                                        ? disk_move(rng, cur, spec.v_max, world.boundary)
                                        : cur;
                break;
            case MobilityKind::AreaConstrained1D:
                if (state.moves_vertically[i])
                    next.positions[i] = {state.anchors[i].x, rng.next_unit()};
                else
                    next.positions[i] = {rng.next_unit(), state.anchors[i].y};
                break;
            case MobilityKind::AreaConstrained2D:
                next.positions[i] =
                    disk_move(rng, state.anchors[i], spec.r_c, world.boundary);
                break;
        }
    }
    return next;
}

double speed_of(const Snapshot& before, const Snapshot& after, int i,
                Boundary boundary) {
    if (after.slot != before.slot + 1)
        throw std::invalid_argument("speed_of: snapshots are not consecutive slots");
    if (i < 0 || i >= before.n() || before.n() != after.n())
        throw std::invalid_argument("speed_of: node id out of range");
    return distance(before.positions[i], after.positions[i], boundary);
}

}  // namespace gossim
