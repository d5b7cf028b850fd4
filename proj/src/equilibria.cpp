#include "shockprof/equilibria.hpp"

#include <cmath>
#include <string>

#include "shockprof/errors.hpp"

namespace shockprof {

namespace {

void require_q(double q_tilde) {
    if (!(q_tilde > 0.75 && q_tilde < 1.0)) {
        throw Error(ErrorCode::QOutOfRange, "q_tilde = " + std::to_string(q_tilde) + " not in (3/4,1)");
    }
}

} // namespace

ShockParams shock_params(double q_tilde) {
    require_q(q_tilde);
    return {q_tilde, 1.0 / std::sqrt(q_tilde), 1.0};
}

double v_plus_squared(double q_tilde) {
    require_q(q_tilde);
    // Rationalized: ((2q-1) - s)/(4(1-q)) == 1/(4((2q-1) + s)) because
    // (2q-1)^2 - q(4q-3) = 1 - q. Avoids cancellation as q -> 1.
    const double s = std::sqrt(q_tilde * (4.0 * q_tilde - 3.0));
    return 1.0 / (4.0 * ((2.0 * q_tilde - 1.0) + s));
}

double v_minus_squared(double q_tilde) {
    require_q(q_tilde);
    const double s = std::sqrt(q_tilde * (4.0 * q_tilde - 3.0));
    return ((2.0 * q_tilde - 1.0) + s) / (4.0 * (1.0 - q_tilde));
}

GodunovState state_from_v(double v) {
    const double scale = std::pow((4.0 / 3.0) * v * v + 1.0 / 3.0, 0.25);
    return {scale * std::sqrt(1.0 + v * v), scale * v};
}

EquilibriumPair rest_points(double q_tilde) {
    require_q(q_tilde);
    if (q_tilde - 0.75 < degenerate_band) {
        throw Error(ErrorCode::DegenerateShock,
                    "q_tilde = " + std::to_string(q_tilde) + " is within the coalescence band of 3/4");
    }
    const double vp2 = v_plus_squared(q_tilde);
    const double vm2 = v_minus_squared(q_tilde);
    return {state_from_v(std::sqrt(vm2)), state_from_v(std::sqrt(vp2)), vm2, vp2};
}

double q_of_vplus(double z) {
    if (!(z > 0.125 && z < 0.5)) {
        throw Error(ErrorCode::ZOutOfRange, "z = " + std::to_string(z) + " not in (1/8,1/2)");
    }
    const double w = 4.0 * z + 1.0;
    return w * w / (16.0 * z * (1.0 + z));
}

bool admissible(double q0, double q1) {
    if (!(q1 > 0.0)) return false;
    const double a = q0 * q0, b = q1 * q1;
    return b < a && a < (4.0 / 3.0) * b;
}

} // namespace shockprof
