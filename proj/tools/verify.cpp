#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "shockprof/classification.hpp"
#include "shockprof/equilibria.hpp"
#include "shockprof/model_core.hpp"

namespace shockprof::cli {

namespace {

constexpr double tol = 1e-10;

// |a - b| relative to `scale`, the magnitude of the terms that cancel.
double rel(double a, double b, double scale) {
    return std::abs(a - b) / std::max({std::abs(b), scale, 1e-300});
}

} // namespace

std::vector<IdentityCheck> run_identity_suite(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> v2_dist(0.0, 2.0);
    std::uniform_real_distribution<double> eps_dist(0.0, 1.0);
    std::uniform_real_distribution<double> sign_dist(-1.0, 1.0);

    IdentityCheck det_b{"det B# closed form", 0.0, tol, samples};
    IdentityCheck det_a{"det A = 2v^2 - 1", 0.0, tol, samples};
    IdentityCheck tr_adj{"trace(adj(B#) A) closed form", 0.0, tol, samples};
    IdentityCheck sign_dp{"sign(D) = sign(P(v^2, eps)) [violations]", 0.0, 0.0, samples};

    for (std::size_t i = 0; i < samples; ++i) {
        const double v = std::copysign(std::sqrt(v2_dist(rng)), sign_dist(rng));
        const double eps = 1.0 - eps_dist(rng); // (0, 1]
        const Kinematics k = kinematics_from_v(v);
        const Mat2 bs = b_sharp(k, eps);
        const Mat2 a = lin_matrix(k);
        det_b.max_error = std::max(det_b.max_error, rel(bs.det(), closed_form::det_b_sharp(v, eps), bs.frobenius_sq()));
        det_a.max_error = std::max(det_a.max_error, rel(a.det(), closed_form::det_lin_matrix(v), a.frobenius_sq()));
        const double tr = trace_adj_identity(k, eps);
        const double tr_scale = std::sqrt(bs.frobenius_sq() * a.frobenius_sq());
        tr_adj.max_error = std::max(tr_adj.max_error, rel(tr, closed_form::trace_adj(v, eps), tr_scale));

        const double d = tr * tr - 4.0 * bs.det() * a.det();
        const double p = p_eval(v * v, eps);
        if (std::abs(p) > 1e-10 && (d > 0.0) != (p > 0.0)) sign_dp.max_error += 1.0;
    }

    IdentityCheck p_half{"P(1/2, eps) = 9/8 eps^2 (eps - 4)^2", 0.0, tol, 0};
    IdentityCheck p_third{"P(1/3, eps) = 16/27 (eps - 1)^2 (eps^2 - 4 eps + 1)", 0.0, tol, 0};
    IdentityCheck disc_fact{"disc_z(P) = 1296 eps^5 (4 - eps)^3 D~(eps)", 0.0, tol, 0};
    IdentityCheck disc_pos{"D~(eps) > 0 on (0, 1) [violations]", 0.0, 0.0, 0};
    const std::size_t n_eps = std::max<std::size_t>(samples / 10, 10);
    for (std::size_t i = 1; i < n_eps; ++i) {
        const double e = static_cast<double>(i) / static_cast<double>(n_eps);
        const PCoefficients c = p_coefficients(e);
        const double scale = c.a3 * 8.0; // |P| magnitude at z ~ 1/2
        p_half.max_error = std::max(p_half.max_error, rel(p_eval(0.5, e), 9.0 / 8.0 * e * e * (e - 4) * (e - 4), scale));
        p_third.max_error = std::max(
            p_third.max_error,
            rel(p_eval(1.0 / 3.0, e), 16.0 / 27.0 * (e - 1) * (e - 1) * (e * e - 4 * e + 1), scale));

        const double a = c.a3, b = c.a2, cc = c.a1, d = c.a0;
        const double terms[] = {18 * a * b * cc * d, -4 * b * b * b * d, b * b * cc * cc, -4 * a * cc * cc * cc,
                                -27 * a * a * d * d};
        double disc = 0.0, mag = 0.0;
        for (double t : terms) {
            disc += t;
            mag += std::abs(t);
        }
        const double factored = 1296.0 * std::pow(e, 5) * std::pow(4.0 - e, 3) * discriminant_factor(e);
        disc_fact.max_error = std::max(disc_fact.max_error, rel(disc, factored, mag));
        if (!(discriminant_factor(e) > 0.0)) disc_pos.max_error += 1.0;
        ++p_half.samples;
        ++p_third.samples;
        ++disc_fact.samples;
        ++disc_pos.samples;
    }

    const double eh = epsilon_hat();
    IdentityCheck p_eighth{"P(1/8, eps_hat) = 0", std::abs(p_eval(0.125, eh)) / 81.0, tol, 1};

    const CubicRoots r1 = cubic_roots(1.0);
    const double root_err = std::max({std::abs(r1.w1 + 1.0), std::abs(r1.w2), std::abs(r1.w3 - 1.0 / 3.0)});
    IdentityCheck roots{"roots of P(., 1) = (-1, 0, 1/3)", root_err, 1e-12, 1};
    IdentityCheck q1_at_1{"q1(1) = 49/64", std::abs(separatrix_q1(1.0) - 49.0 / 64.0), 1e-12, 1};

    IdentityCheck round_trip{"v+^2(q_of_vplus(z)) = z", 0.0, tol, samples / 10};
    std::uniform_real_distribution<double> z_dist(0.125, 0.5);
    for (std::size_t i = 0; i < round_trip.samples; ++i) {
        const double z = z_dist(rng);
        if (z <= 0.125) continue;
        round_trip.max_error = std::max(round_trip.max_error, rel(v_plus_squared(q_of_vplus(z)), z, 0.0));
    }

    return {det_b, det_a, tr_adj, sign_dp, p_half, p_third, p_eighth, disc_fact, disc_pos, roots, q1_at_1, round_trip};
}

} // namespace shockprof::cli
