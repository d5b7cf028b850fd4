#include "shockprof/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "shockprof/errors.hpp"

namespace shockprof {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::StateOutsideDomain: return "StateOutsideDomain";
    case ErrorCode::EpsilonOutOfRange: return "EpsilonOutOfRange";
    case ErrorCode::EpsilonAboveHat: return "EpsilonAboveHat";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::QOutOfRange: return "QOutOfRange";
    case ErrorCode::ZOutOfRange: return "ZOutOfRange";
    case ErrorCode::DegenerateShock: return "DegenerateShock";
    case ErrorCode::ParamsOutOfOmega: return "ParamsOutOfOmega";
    case ErrorCode::SingularBsharp: return "SingularBsharp";
    case ErrorCode::RootFindingFailure: return "RootFindingFailure";
    case ErrorCode::NotASaddle: return "NotASaddle";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::InvalidOptions: return "InvalidOptions";
    }
    return "Unknown";
}

Kinematics kinematics_from_v(double v) {
    return {1.0, std::sqrt(1.0 + v * v), v};
}

Kinematics kinematics(GodunovState psi) {
    if (!(psi.psi0 > std::abs(psi.psi1)) || !std::isfinite(psi.psi0)) {
        throw Error(ErrorCode::StateOutsideDomain,
                    "psi0 = " + std::to_string(psi.psi0) + " must exceed |psi1| = " +
                        std::to_string(std::abs(psi.psi1)));
    }
    // (psi0 - psi1)(psi0 + psi1) keeps precision for near-null states.
    const double theta = 1.0 / std::sqrt((psi.psi0 - psi.psi1) * (psi.psi0 + psi.psi1));
    return {theta, theta * psi.psi0, theta * psi.psi1};
}

Mat2 b_visc(const Kinematics& k) {
    const double u = k.u, v = k.v;
    const double off = -u * u * u * v;
    return {u * u * v * v, off, off, u * u * u * u};
}

Mat2 b_one(const Kinematics& k) {
    const double u = k.u, v = k.v;
    const double w = 4.0 * v * v + 1.0;
    const double off = -4.0 * u * v * w;
    return {16.0 * u * u * v * v, off, off, w * w};
}

Mat2 b_two(const Kinematics& k) {
    const double u = k.u, v = k.v;
    const double s = u * u + v * v;
    const double off = -2.0 * s * u * v;
    return {s * s, off, off, 4.0 * u * u * v * v};
}

Mat2 b_sharp(const Kinematics& k, double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::EpsilonOutOfRange, "eps = " + std::to_string(eps) + " not in (0,1]");
    }
    return eps * b_visc(k) - b_one(k) - (9.0 * eps / (4.0 - eps)) * b_two(k);
}

Vec2 flux_residual(GodunovState psi, double q0, double q1) {
    const Kinematics k = kinematics(psi);
    const double t2 = k.theta * k.theta;
    const double t4 = t2 * t2;
    return {-(4.0 / 3.0) * t4 * k.v * k.u + q0,
            t4 * ((4.0 / 3.0) * k.v * k.v + 1.0 / 3.0) - q1};
}

Mat2 lin_matrix(const Kinematics& k) {
    const double u = k.u, v = k.v, v2 = v * v;
    const double off = -u * (6.0 * v2 + 1.0);
    return {v * (6.0 * v2 + 5.0), off, off, 3.0 * v * (2.0 * v2 + 1.0)};
}

double trace_adj_identity(const Kinematics& k, double eps) {
    return (b_sharp(k, eps).adjugate() * lin_matrix(k)).trace();
}

namespace closed_form {

double det_b_sharp(double v, double eps) {
    return 9.0 * eps * ((8.0 + eps) * v * v + eps - 1.0) / (eps - 4.0);
}

double det_lin_matrix(double v) { return 2.0 * v * v - 1.0; }

double trace_adj(double v, double eps) {
    const double e2 = eps * eps;
    return 3.0 * v / (eps - 4.0) * ((8.0 + e2) * v * v + e2 - 6.0 * eps - 4.0);
}

} // namespace closed_form

const char* to_string(CausalityClass c) {
    switch (c) {
    case CausalityClass::StrictlyCausal: return "StrictlyCausal";
    case CausalityClass::SharplyCausal: return "SharplyCausal";
    case CausalityClass::Acausal: return "Acausal";
    }
    return "Unknown";
}

CausalityVerdict causality_check(double eta, double mu, double nu) {
    if (!(eta > 0.0 && mu > 0.0 && nu > 0.0)) {
        throw Error(ErrorCode::NonPositiveParameter, "eta, mu, nu must all be positive");
    }
    constexpr double rel_tol = 1e-10;
    const double mu_min = 4.0 * eta / 3.0;
    if (mu < mu_min * (1.0 - rel_tol)) {
        return {CausalityClass::Acausal, std::nullopt};
    }
    const double nu_max = 1.0 / (1.0 / (3.0 * eta) - 1.0 / (9.0 * mu));
    if (nu > nu_max * (1.0 + rel_tol)) {
        return {CausalityClass::Acausal, std::nullopt};
    }
    // mu within tolerance of 4 eta / 3 would give eps a hair above 1.
    const double eps = std::min(1.0, 4.0 * eta / (3.0 * mu));
    const bool sharp = std::abs(nu - nu_max) <= rel_tol * nu_max;
    return {sharp ? CausalityClass::SharplyCausal : CausalityClass::StrictlyCausal, eps};
}

} // namespace shockprof
