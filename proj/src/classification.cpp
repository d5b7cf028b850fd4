#include "shockprof/classification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "shockprof/equilibria.hpp"
#include "shockprof/errors.hpp"

namespace shockprof {

namespace {

void require_eps(double eps, double lo_open = 0.0) {
    if (!(eps > lo_open && eps <= 1.0)) {
        throw Error(ErrorCode::EpsilonOutOfRange, "eps = " + std::to_string(eps) + " not in (0,1]");
    }
}

// Upper-root separation below which the pair is rebuilt from the discriminant.
constexpr double close_pair_threshold = 1e-4;

double horner(const PCoefficients& c, double z) {
    return ((c.a3 * z + c.a2) * z + c.a1) * z + c.a0;
}

double horner_derivative(const PCoefficients& c, double z) {
    return (3.0 * c.a3 * z + 2.0 * c.a2) * z + c.a1;
}

} // namespace

PCoefficients p_coefficients(double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::EpsilonOutOfRange, "eps = " + std::to_string(eps) + " not in [0,1]");
    }
    const double e = eps, e2 = e * e, e3 = e2 * e, e4 = e2 * e2;
    return {
        e * (4.0 * e2 - 20.0 * e + 16.0),
        e4 - 16.0 * e3 + 84.0 * e2 - 112.0 * e + 16.0,
        2.0 * e4 - 20.0 * e3 - 24.0 * e2 + 160.0 * e - 64.0,
        e4 + 16.0 * e2 + 64.0,
    };
}

double p_eval(double z, double eps) { return horner(p_coefficients(eps), z); }

double epsilon_hat() {
    const double s6 = std::sqrt(6.0);
    return (2.0 / 3.0) * (3.0 * s6 - 2.0 * std::sqrt(16.0 - 6.0 * s6) - 4.0);
}

double discriminant_factor(double eps) {
    const double e = eps;
    return ((((-4.0 * e + 179.0) * e - 844.0) * e + 880.0) * e - 32.0) * e + 64.0;
}

CubicRoots cubic_roots(double eps) {
    require_eps(eps);
    const PCoefficients c = p_coefficients(eps);

    // Monic form z^3 + b z^2 + cc z + d, depressed by z = t - b/3.
    const double b = c.a2 / c.a3, cc = c.a1 / c.a3, d = c.a0 / c.a3;
    const double p = cc - b * b / 3.0;
    const double q = 2.0 * b * b * b / 27.0 - b * cc / 3.0 + d;
    if (!(p < 0.0)) {
        throw Error(ErrorCode::RootFindingFailure, "depressed cubic lacks three real roots");
    }
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    constexpr double third_turn = 2.0 * std::numbers::pi / 3.0;

    std::array<double, 3> w{};
    for (int k = 0; k < 3; ++k) {
        w[k] = m * std::cos(phi - third_turn * k) - b / 3.0;
    }
    std::sort(w.begin(), w.end());

    auto polish = [&](double& root) {
        for (int it = 0; it < 2; ++it) {
            const double f = horner(c, root);
            const double df = horner_derivative(c, root);
            if (f == 0.0 || df == 0.0) break;
            root -= f / df;
        }
    };

    // As eps -> 0 the upper pair collides at 1/2 with separation ~ eps^(5/2),
    // below the resolution of the trigonometric formula. There the pair is
    // rebuilt from the Vieta midpoint and the factored discriminant
    //   disc = a3^4 (w1 - w2)^2 (w1 - w3)^2 (w3 - w2)^2.
    polish(w[0]);
    if (w[2] - w[1] < close_pair_threshold) {
        const double mid = 0.5 * (-b - w[0]);
        const double disc = 1296.0 * std::pow(eps, 5) * std::pow(4.0 - eps, 3) * discriminant_factor(eps);
        const double a3_sq = c.a3 * c.a3;
        const double far = (w[0] - mid) * (w[0] - mid);
        double half_sep_sq = 0.0;
        for (int it = 0; it < 4; ++it) {
            const double g = far - half_sep_sq;
            half_sep_sq = disc / (4.0 * a3_sq * a3_sq * g * g);
        }
        const double half_sep = std::sqrt(half_sep_sq);
        w[1] = mid - half_sep;
        w[2] = mid + half_sep;
    } else {
        polish(w[1]);
        polish(w[2]);
    }

    const double tol = 1e-10 * std::max(1.0, std::abs(c.a3));
    for (double root : w) {
        if (!(std::abs(horner(c, root)) <= tol)) {
            throw Error(ErrorCode::RootFindingFailure,
                        "residual polishing stalled at eps = " + std::to_string(eps));
        }
    }
    std::sort(w.begin(), w.end());
    return {w[0], w[1], w[2], eps};
}

double separatrix_q1(double eps) {
    require_eps(eps);
    return q_of_vplus(cubic_roots(eps).w3);
}

double separatrix_q2(double eps) {
    require_eps(eps);
    if (eps >= epsilon_hat()) {
        throw Error(ErrorCode::EpsilonAboveHat,
                    "eps = " + std::to_string(eps) + " is not below epsilon_hat; q2 is undefined");
    }
    const double w2 = cubic_roots(eps).w2;
    // Just below epsilon_hat the root may land on 1/8 in floating point; the
    // curve's limit there is q_tilde = 1.
    if (w2 <= 0.125) return 1.0;
    return q_of_vplus(w2);
}

const char* to_string(RegionLabel r) {
    switch (r) {
    case RegionLabel::NodeBelow: return "NodeBelow";
    case RegionLabel::Focus: return "Focus";
    case RegionLabel::NodeAbove: return "NodeAbove";
    case RegionLabel::Separatrix1: return "Separatrix1";
    case RegionLabel::Separatrix2: return "Separatrix2";
    }
    return "Unknown";
}

bool is_node(RegionLabel r) { return r == RegionLabel::NodeBelow || r == RegionLabel::NodeAbove; }

RegionLabel classify(double eps, double q_tilde) {
    if (!(eps > 0.0 && eps <= 1.0 && q_tilde > 0.75 && q_tilde < 1.0)) {
        throw Error(ErrorCode::ParamsOutOfOmega, "(eps, q_tilde) = (" + std::to_string(eps) + ", " +
                                                     std::to_string(q_tilde) + ") outside Omega");
    }
    const double p_value = p_eval(v_plus_squared(q_tilde), eps);

    const double q1 = separatrix_q1(eps);
    if (std::abs(q_tilde - q1) <= separatrix_band) return RegionLabel::Separatrix1;
    const bool has_q2 = eps < epsilon_hat();
    const double q2 = has_q2 ? separatrix_q2(eps) : 1.0;
    if (has_q2 && std::abs(q_tilde - q2) <= separatrix_band) return RegionLabel::Separatrix2;

    RegionLabel by_curves = RegionLabel::Focus;
    if (q_tilde < q1) {
        by_curves = RegionLabel::NodeBelow;
    } else if (has_q2 && q_tilde > q2) {
        by_curves = RegionLabel::NodeAbove;
    }

    const bool focus_by_sign = p_value < 0.0;
    if (focus_by_sign != (by_curves == RegionLabel::Focus)) {
        throw Error(ErrorCode::InternalInconsistency,
                    "sign of P and separatrix comparison disagree at (" + std::to_string(eps) + ", " +
                        std::to_string(q_tilde) + ")");
    }
    return by_curves;
}

Spectrum spectrum_of(const Mat2& m) { return spectrum_from(m.trace(), m.det()); }

Spectrum spectrum_from(double tr, double det) {
    const double disc = tr * tr - 4.0 * det;
    Spectrum s{{}, {}, tr, det, disc};
    if (disc >= 0.0) {
        // Avoid cancellation in the smaller-magnitude root.
        const double r = std::sqrt(disc);
        const double big = tr >= 0.0 ? 0.5 * (tr + r) : 0.5 * (tr - r);
        const double small = big != 0.0 ? det / big : 0.0;
        s.lambda1 = std::max(big, small);
        s.lambda2 = std::min(big, small);
    } else {
        const double im = 0.5 * std::sqrt(-disc);
        s.lambda1 = {0.5 * tr, im};
        s.lambda2 = {0.5 * tr, -im};
    }
    return s;
}

Spectrum local_spectrum(GodunovState psi, double eps) {
    const Kinematics k = kinematics(psi);
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::EpsilonOutOfRange, "eps = " + std::to_string(eps) + " not in (0,1]");
    }
    // B# only depends on (u, v). Its entries grow like v^6 while det B# ~ eps v^2,
    // so the entrywise determinant cancels badly for small eps.
    const double v2 = k.v * k.v;
    const double locus = (8.0 + eps) * v2 + eps - 1.0;
    if (std::abs(locus) <= 1e-12 * ((8.0 + eps) * v2 + 1.0)) {
        throw Error(ErrorCode::SingularBsharp, "B# is singular at v = " + std::to_string(k.v));
    }
    const double det_b = closed_form::det_b_sharp(k.v, eps);
    return spectrum_from(closed_form::trace_adj(k.v, eps) / det_b, closed_form::det_lin_matrix(k.v) / det_b);
}

} // namespace shockprof
