#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "gossim/conductance.hpp"
#include "oracles.hpp"

using namespace gossim;

namespace {

NodeSet ids_of(int n, std::initializer_list<int> members) {
    NodeSet set(n);
    for (int i : members) set.insert(i);
    return set;
}

// Two tight 5-node clumps in opposite corners, out of contact range.
FrozenStart dumbbell() {
    FrozenStart start;
    start.snap.positions = {{0.10, 0.10}, {0.12, 0.10}, {0.10, 0.12}, {0.12, 0.12},
                            {0.11, 0.11}, {0.90, 0.90}, {0.88, 0.90}, {0.90, 0.88},
                            {0.88, 0.88}, {0.89, 0.89}};
    return start;
}

}  // namespace

TEST_CASE("forced quotient of a connected pair") {
    const WorldConfig world{2, std::sqrt(2.0), Boundary::Square, 0};
    const NodeSet cut = ids_of(2, {0});
    for (std::uint64_t s = 0; s < 20; ++s)
        CHECK(cut_quotient_sample(world, MobilitySpec::fully_random(), cut, s) == 1.0);
    const auto est = estimate_cut_quotient(world, MobilitySpec::fully_random(), cut, 50, 1);
    CHECK(est.mean == 1.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("hand-computed quotient on a fixed four-node layout") {
    // chain 0 - 1 - 2 with 3 isolated; r = 0.15
    FrozenStart start;
    start.snap.positions = {{0.10, 0.5}, {0.20, 0.5}, {0.30, 0.5}, {0.80, 0.5}};
    const WorldConfig world{4, 0.15, Boundary::Square, 0};

    // S' = {1, 3}: node 1 has nbrs {0, 2} both outside -> 2/2; node 3 isolated -> 0.
    // quotient = (1 + 0) / 2
    const auto est = estimate_rule_quotient(world, MobilitySpec::statics(),
                                            CutRule::fixed("hand", ids_of(4, {1, 3})),
                                            QuotientKind::ExactPij, 10, 3, &start);
    CHECK(est.mean == doctest::Approx(0.5));
    CHECK(est.std_error == 0.0);  // static + frozen: no randomness left

    // S' = {0, 1}: node 0 nbr {1} inside -> 0; node 1 nbrs {0 in, 2 out} -> 1/2.
    const auto est2 = estimate_rule_quotient(world, MobilitySpec::statics(),
                                             CutRule::fixed("hand2", ids_of(4, {0, 1})),
                                             QuotientKind::ExactPij, 10, 3, &start);
    CHECK(est2.mean == doctest::Approx(0.25));
}

TEST_CASE("static estimates vary only through the redrawn snapshot") {
    const WorldConfig world{60, 0.2, Boundary::Square, 0};
    const NodeSet cut = ids_of(60, {0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
    const auto est = estimate_cut_quotient(world, MobilitySpec::statics(), cut, 200, 5);
    CHECK(est.std_error > 0.0);  // RGG randomness across samples
    const auto est_again = estimate_cut_quotient(world, MobilitySpec::statics(), cut, 200, 5);
    CHECK(est.mean == est_again.mean);
}

TEST_CASE("zero-velocity matches static within two standard errors") {
    const WorldConfig world{300, WorldConfig::default_radius(300), Boundary::Torus, 0};
    const auto bisect = CutRule::bisection();
    const auto st = estimate_rule_quotient(world, MobilitySpec::statics(), bisect,
                                           QuotientKind::ExactPij, 400, 11);
    const auto vel = estimate_rule_quotient(world, MobilitySpec::velocity(0.0), bisect,
                                            QuotientKind::ExactPij, 400, 12);
    const double se = std::hypot(st.std_error, vel.std_error);
    CHECK(std::abs(st.mean - vel.mean) <= 2.0 * se + 1e-12);
}

TEST_CASE("fully random bisection quotient is order one") {
    const WorldConfig world{1000, WorldConfig::default_radius(1000), Boundary::Torus, 0};
    const auto est = estimate_rule_quotient(world, MobilitySpec::fully_random(),
                                            CutRule::bisection(), QuotientKind::ExactPij,
                                            400, 21);
    CHECK(est.mean > 0.2);
    CHECK(est.mean < 0.8);
}

TEST_CASE("static bisection attains the sweep-family minimum") {
    const WorldConfig world{500, WorldConfig::default_radius(500), Boundary::Torus, 0};
    const auto rules = make_cuts(CutFamily::sweep_default(), 500, 31);
    const auto ests = estimate_rule_quotients(world, MobilitySpec::statics(), rules,
                                              QuotientKind::ExactPij, 300, 31);
    const auto* bisection = &ests.back();
    for (const auto& est : ests)
        if (est.cut_id == "bisection") bisection = &est;
    double min_mean = 1e9, min_se = 0.0;
    for (const auto& est : ests) {
        if (est.samples == 0) continue;
        if (est.mean < min_mean) {
            min_mean = est.mean;
            min_se = est.std_error;
        }
    }
    CHECK(bisection->mean <= min_mean + 2.0 * std::hypot(min_se, bisection->std_error));
}

TEST_CASE("fully random quotients are flat across balanced cuts") {
    const WorldConfig world{400, WorldConfig::default_radius(400), Boundary::Torus, 0};
    CutFamily family = CutFamily::random_only(8);
    family.bisection = true;
    const auto rules = make_cuts(family, 400, 41);
    const auto ests = estimate_rule_quotients(world, MobilitySpec::fully_random(), rules,
                                              QuotientKind::ExactPij, 300, 41);
    double lo = 1e9, hi = 0.0;
    for (const auto& est : ests) {
        lo = std::min(lo, est.mean);
        hi = std::max(hi, est.mean);
    }
    CHECK(hi / lo <= 1.3);
}

TEST_CASE("family minimum never beats the exhaustive oracle") {
    for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const int n = 10;
        const WorldConfig world{n, WorldConfig::default_radius(n), Boundary::Square, 0};
        const MobilitySpec spec = MobilitySpec::velocity(0.2);
        FrozenStart start;
        auto [snap, state] = init_stationary(spec, world, seed * 1000);
        start.snap = std::move(snap);
        start.state = std::move(state);

        CutFamily family = CutFamily::sweep_default();
        family.random_balanced = 4;
        const auto heuristic =
            minimize_over_family(world, spec, family, 200, seed, &start);
        const auto exhaustive = brute_force_min(world, spec, 200, seed, &start);
        CHECK(heuristic.second.mean >= exhaustive.second.mean - 1e-12);
    }
}

TEST_CASE("brute force separates the dumbbell clusters") {
    const WorldConfig world{10, 0.1, Boundary::Square, 0};
    const FrozenStart start = dumbbell();
    const auto [cut, est] = brute_force_min(world, MobilitySpec::statics(), 20, 7, &start);
    CHECK(est.mean == 0.0);
    CHECK(cut.size() == 5);
    const auto members = cut.ids();
    const bool left = members == std::vector<int>{0, 1, 2, 3, 4};
    const bool right = members == std::vector<int>{5, 6, 7, 8, 9};
    CHECK((left || right));
}

TEST_CASE("brute force refuses large n") {
    const WorldConfig world{15, 0.3, Boundary::Square, 0};
    CHECK_THROWS_AS(brute_force_min(world, MobilitySpec::statics(), 10, 1),
                    std::invalid_argument);
}

TEST_CASE("quotients are invariant under node relabeling") {
    const int n = 40;
    Rng rng(52);
    Snapshot snap;
    snap.positions.resize(n);
    for (auto& p : snap.positions) p = {rng.next_unit(), rng.next_unit()};
    const NodeSet cut = sample_node_subset(rng, n, 13);

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.next_below(static_cast<std::uint32_t>(i + 1))]);

    Snapshot relabeled;
    relabeled.positions.resize(n);
    NodeSet cut2(n);
    for (int i = 0; i < n; ++i) {
        relabeled.positions[perm[i]] = snap.positions[i];
        if (cut.contains(i)) cut2.insert(perm[i]);
    }

    const SpatialIndex index(snap, 0.25, Boundary::Square);
    const SpatialIndex index2(relabeled, 0.25, Boundary::Square);
    CHECK(exact_pij_quotient(index, cut) ==
          doctest::Approx(exact_pij_quotient(index2, cut2)).epsilon(1e-12));
    CHECK(index.crossing_edges(cut) == index2.crossing_edges(cut2));
}

TEST_CASE("edge-count quotient complement identity under shared samples") {
    const int n = 200;
    const WorldConfig world{n, WorldConfig::default_radius(n), Boundary::Torus, 0};
    Rng rng(62);
    const NodeSet cut = sample_node_subset(rng, n, 70);
    const auto a = edge_count_quotient(world, MobilitySpec::velocity(0.1), cut, 150, 9);
    const auto b = edge_count_quotient(world, MobilitySpec::velocity(0.1),
                                       cut.complement(), 150, 9);
    CHECK(a.mean * cut.size() ==
          doctest::Approx(b.mean * cut.complement().size()).epsilon(1e-12));
}

TEST_CASE("edge-count quotient is zero without contacts") {
    FrozenStart start;
    start.snap.positions = {{0.1, 0.1}, {0.5, 0.5}, {0.9, 0.9}, {0.1, 0.9}};
    const WorldConfig world{4, 0.05, Boundary::Square, 0};
    const auto est = estimate_rule_quotient(world, MobilitySpec::statics(),
                                            CutRule::fixed("half", ids_of(4, {0, 1})),
                                            QuotientKind::EdgeCountApprox, 10, 3, &start);
    CHECK(est.mean == 0.0);
}

TEST_CASE("edge-count expectation matches the mixing closed form") {
    const int n = 300;
    const double r = WorldConfig::default_radius(n);
    const WorldConfig world{n, r, Boundary::Torus, 0};
    NodeSet cut(n);
    for (int i = 0; i < n / 2; ++i) cut.insert(i);
    const auto est = edge_count_quotient(world, MobilitySpec::fully_random(), cut, 400, 77);
    // E[N] = |S||S~|pi r^2 exactly on the torus; quotient = P(n,r) E[N]/|S|
    const double expected = (1.0 / (n * M_PI * r * r)) * (n / 2.0) * M_PI * r * r;
    CHECK(est.mean == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("degenerate frozen snapshots yield no valid cut") {
    const WorldConfig world{2, 0.5, Boundary::Square, 0};
    FrozenStart start;
    start.snap.positions = {{0.9, 0.9}, {0.9, 0.9}};
    CHECK_THROWS_AS(minimize_over_family(world, MobilitySpec::statics(),
                                         CutFamily::sweep_default(), 10, 1, &start),
                    std::invalid_argument);
}

TEST_CASE("estimator input validation") {
    const WorldConfig world{10, 0.3, Boundary::Square, 0};
    const NodeSet cut = ids_of(10, {0, 1});
    CHECK_THROWS_AS(estimate_cut_quotient(world, MobilitySpec::statics(), cut, 0, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(estimate_cut_quotient(world, MobilitySpec::statics(), NodeSet(10), 5, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_cuts(CutFamily{}, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_cuts(CutFamily::exhaustive_only(), 15, 1), std::invalid_argument);
}
