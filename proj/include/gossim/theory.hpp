#pragma once

#include <cstdint>

#include "gossim/mobility.hpp"

namespace gossim {

enum class PredictionKind { OrderOnly, ClosedForm, Approximation };

const char* to_string(PredictionKind kind);

struct Prediction {
    MobilitySpec model;
    double phi = 0.0;
    PredictionKind kind = PredictionKind::OrderOnly;  // OrderOnly: constant fixed to 1
};

// Static RGG conductance sqrt(log n / n), order constant fixed to 1.
double static_phi(double n);

// Mobile-conductance prediction for a model at (n, r). Closed form for the
// partially-random and 1-d area-constrained rows, order-only (constant 1)
// for the three Theta rows.
Prediction table1_phi(const MobilitySpec& spec, int n, double r);

// Normalized post-move density of the cut-side population at signed offset l
// from the cut line, for the velocity-constrained move (fraction in [0, 1]).
double density_profile(double l, double v_max);

// Expected number of post-move contact pairs across a bisection of the unit
// square: double integral of the mixed density profiles against the circular
// chord, times n^2. v_max = 0 degenerates to the static step profile.
double contact_pairs_integral(double v_max, double r, double n);

// Piecewise closed-form approximation of the velocity-model mobile
// conductance (single cut interface).
double velocity_phi(double v_max, double r);

// ceil(c * (log n + log(1/epsilon)) / phi).
std::int64_t spreading_time_bound(int n, double epsilon, double phi, double c);

// ceil(log2 n): the informed set can at most double per slot under push.
int optimal_time_floor(int n);

}  // namespace gossim
