#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shockprof/equilibria.hpp"
#include "shockprof/model_core.hpp"

namespace shockprof {

/// Right-hand side of the profile ODE psi' = B#(psi, eps)^-1 F(psi, q_tilde).
/// Throws SingularBsharp on the locus (eps + 8) v^2 + eps - 1 = 0.
Vec2 vector_field(GodunovState psi, double eps, double q_tilde);

/// Central finite-difference Jacobian of vector_field; the step is scaled by
/// max(1, |psi|).
Mat2 field_jacobian(GodunovState psi, double eps, double q_tilde, double step = 1e-6);

/// Discriminant (trace^2 - 4 det) of field_jacobian at the downstream rest
/// point. Negative means focus.
double jacobian_discriminant_at_plus(double eps, double q_tilde);

/// Unit eigenvector of the saddle's unstable eigenvalue, oriented so that v
/// decreases along it (towards the downstream state).
Vec2 unstable_direction(double eps, double q_tilde);

/// Lengths are fractions of the shock amplitude |psi_minus - psi_plus|.
struct ShootOptions {
    double offset = 1e-7;
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double capture_radius = 1e-8;
    double escape_radius = 1e2;
    double max_pseudo_time = 1e6;
    std::size_t max_steps = 2'000'000;
    /// Retry with the opposite eigenvector sign when the preferred one escapes.
    bool two_sided = true;

    void validate() const;
};

enum class Verdict { ConvergedToPlus, Escaped, Stalled, HitSingularLocus };

const char* to_string(Verdict v);

struct ProfileSample {
    double t;
    GodunovState psi;
    Kinematics kin;
};

struct ComponentStats {
    int extrema = 0;
    int sign_changes = 0;
};

struct CoordinateReport {
    std::string system;                   // "psi", "theta_v", "u_v"
    std::array<std::string, 2> components;
    std::array<ComponentStats, 2> stats{};
    bool oscillatory = false;             // some component has >= 2 sign changes
};

struct OscillationReport {
    std::array<CoordinateReport, 3> systems;
    bool oscillatory = false;             // any system oscillatory

    bool oscillatory_in_all() const;
    const CoordinateReport& system(const std::string& name) const;
};

/// Counts strict local extrema and sign changes of (component - limit) in the
/// (psi0, psi1), (theta, v) and (u, v) coordinates. Needs at least 3 samples.
OscillationReport oscillation_report(std::span<const ProfileSample> samples, GodunovState psi_plus);

struct ProfileResult {
    std::vector<ProfileSample> samples;
    Verdict verdict = Verdict::Stalled;
    OscillationReport oscillation;
    EquilibriumPair rest;
    double amplitude = 0.0;   // |psi_minus - psi_plus|
    int branch = +1;          // +1: preferred eigenvector sign, -1: flipped
    std::size_t steps = 0;
    std::size_t rejected = 0;

    const ProfileSample& endpoint() const { return samples.back(); }
    double final_distance() const;
};

/// Shoots along the unstable manifold of psi_minus and integrates with an
/// adaptive Dormand-Prince 5(4) pair until capture at psi_plus, escape, the
/// singular locus, or the pseudo-time budget.
ProfileResult shoot(double eps, double q_tilde, const ShootOptions& opts = {});

/// Single-branch shot with an explicit eigenvector sign (+1 or -1).
ProfileResult shoot_branch(double eps, double q_tilde, int sign, const ShootOptions& opts = {});

} // namespace shockprof
