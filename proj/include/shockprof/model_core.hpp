#pragma once

#include <optional>

#include "shockprof/mat2.hpp"

namespace shockprof {

/// Point of the planar state space: psi0 > |psi1|.
struct GodunovState {
    double psi0 = 1.0;
    double psi1 = 0.0;

    Vec2 vec() const { return {psi0, psi1}; }
    static GodunovState from(Vec2 p) { return {p.x, p.y}; }
    bool in_domain() const { return psi0 > 0.0 && psi0 > std::abs(psi1); }
};

/// Temperature and 2-velocity (u, v), with u^2 - v^2 = 1.
struct Kinematics {
    double theta = 1.0;
    double u = 1.0;
    double v = 0.0;
};

/// Kinematics from the velocity component alone (u = sqrt(1 + v^2), theta = 1).
/// The dissipation and linearization matrices depend on (u, v) only.
Kinematics kinematics_from_v(double v);

Kinematics kinematics(GodunovState psi);

Mat2 b_visc(const Kinematics& kin);
Mat2 b_one(const Kinematics& kin);
Mat2 b_two(const Kinematics& kin);

/// eps*B_visc - B_1 - 9 eps/(4 - eps) * B_2, for 0 < eps <= 1.
Mat2 b_sharp(const Kinematics& kin, double eps);

/// Flux residual F(psi) with flux constants (q0, q1); zero exactly at rest points.
Vec2 flux_residual(GodunovState psi, double q0, double q1);

/// Scaled linearization matrix A(psi). The Jacobian of the flux residual in
/// (psi0, psi1) equals (4 theta^5 / 3) * A.
Mat2 lin_matrix(const Kinematics& kin);

/// trace(adj(B#) A) by matrix arithmetic.
double trace_adj_identity(const Kinematics& kin, double eps);

// Closed forms. Production code goes through the matrix routes above; these
// are the cross-check side of the identity tests and of `verify`.
namespace closed_form {
double det_b_sharp(double v, double eps);
double det_lin_matrix(double v);
double trace_adj(double v, double eps);
} // namespace closed_form

enum class CausalityClass { StrictlyCausal, SharplyCausal, Acausal };

const char* to_string(CausalityClass c);

struct CausalityVerdict {
    CausalityClass cls = CausalityClass::Acausal;
    /// eps = 4 eta / (3 mu), present whenever the triple is causal.
    std::optional<double> epsilon;
};

/// Bound nu_max = (1/(3 eta) - 1/(9 mu))^-1. Equality within 1e-10 relative is
/// reported as sharply causal.
CausalityVerdict causality_check(double eta, double mu, double nu);

} // namespace shockprof
