#pragma once

#include "shockprof/model_core.hpp"

namespace shockprof {

/// Normalized flux constants: q1 = 1, q0 = q_tilde^(-1/2) > 0.
struct ShockParams {
    double q_tilde;
    double q0;
    double q1;
};

ShockParams shock_params(double q_tilde);

/// Upstream saddle (minus) and downstream attractor (plus), both with v > 0.
struct EquilibriumPair {
    GodunovState psi_minus;
    GodunovState psi_plus;
    double v_minus_sq;
    double v_plus_sq;
};

/// Squared velocity of the downstream rest point, in (1/8, 1/2).
double v_plus_squared(double q_tilde);
/// Squared velocity of the upstream rest point, above 1/2.
double v_minus_squared(double q_tilde);

/// State on the one-parameter family F^1 = 0 (q1 = 1) with velocity v.
GodunovState state_from_v(double v);

/// Rest points for q_tilde in (3/4, 1). Within `degenerate_band` of 3/4 the
/// two states coalesce and DegenerateShock is thrown.
EquilibriumPair rest_points(double q_tilde);

inline constexpr double degenerate_band = 1e-8;

/// Inverse of v_plus_squared: q_tilde = (4z + 1)^2 / (16 z (1 + z)) for z in (1/8, 1/2).
double q_of_vplus(double z);

/// True iff the flux constants admit two distinct rest points.
bool admissible(double q0, double q1);

} // namespace shockprof
