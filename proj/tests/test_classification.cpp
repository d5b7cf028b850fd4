#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "shockprof/classification.hpp"
#include "shockprof/equilibria.hpp"
#include "shockprof/errors.hpp"
#include "shockprof/profile.hpp"

using namespace shockprof;
using doctest::Approx;

TEST_CASE("coefficients of P") {
    const PCoefficients one = p_coefficients(1.0);
    CHECK(one.a0 == 0.0);
    CHECK(one.a1 == -27.0);
    CHECK(one.a2 == 54.0);
    CHECK(one.a3 == 81.0);
    const PCoefficients zero = p_coefficients(0.0);
    CHECK(zero.a0 == 0.0);
    CHECK(zero.a1 == 16.0);
    CHECK(zero.a2 == -64.0);
    CHECK(zero.a3 == 64.0);
    CHECK(p_coefficients(0.5).a0 == Approx(3.5));
    CHECK_THROWS_AS(p_coefficients(1.5), Error);
    CHECK_THROWS_AS(p_coefficients(-0.1), Error);
}

TEST_CASE("factored special values of P") {
    for (double z : {-0.3, 0.1, 0.7}) {
        CHECK(p_eval(z, 1.0) == Approx(27.0 * z * (3 * z * z + 2 * z - 1)).epsilon(1e-13));
        CHECK(p_eval(z, 0.0) == Approx(16.0 * z * (2 * z - 1) * (2 * z - 1)).epsilon(1e-13));
    }
    for (double e : {0.1, 0.4, 0.9, 1.0}) {
        CHECK(p_eval(0.5, e) == Approx(9.0 / 8.0 * e * e * (e - 4) * (e - 4)).epsilon(1e-13));
    }
    CHECK(p_eval(0.5, 1.0) == Approx(81.0 / 8.0));
    CHECK(std::abs(p_eval(1.0 / 3.0, 2.0 - std::sqrt(3.0))) < 1e-10);
    CHECK(std::abs(p_eval(0.125, epsilon_hat())) < 1e-10);
}

TEST_CASE("epsilon_hat") {
    const double eh = epsilon_hat();
    CHECK(eh == Approx(0.7103).epsilon(5e-5 / 0.7103));
    CHECK(eh == Approx(0.71028987072932393).epsilon(1e-14));
    // P(1/8, eps) = 9 eps^2/512 * (9y^2 + 96y - 608) with y = eps + 8/(3 eps).
    const double y = eh + 8.0 / (3.0 * eh);
    CHECK(std::abs(9 * y * y + 96 * y - 608) < 1e-9);
}

TEST_CASE("cubic roots at eps = 1") {
    const CubicRoots r = cubic_roots(1.0);
    CHECK(std::abs(r.w1 + 1.0) < 1e-12);
    CHECK(std::abs(r.w2) < 1e-12);
    CHECK(std::abs(r.w3 - 1.0 / 3.0) < 1e-12);
}

TEST_CASE("cubic roots at eps_hat") {
    CHECK(std::abs(cubic_roots(epsilon_hat()).w2 - 0.125) < 1e-9);
}

TEST_CASE("cubic roots agree with the bisection oracle") {
    // Frozen with 40-digit arithmetic.
    const CubicRoots half = cubic_roots(0.5);
    CHECK(half.w1 == Approx(-0.67780762740836332).epsilon(1e-13));
    CHECK(half.w2 == Approx(0.21839789764757227).epsilon(1e-13));
    CHECK(half.w3 == Approx(0.34738034500413356).epsilon(1e-13));

    for (double e : {0.05, 0.2, 0.5, 0.7, 0.85, 0.99}) {
        const auto ref = oracle::cubic_roots_by_bisection(e);
        REQUIRE(ref.size() == 3);
        const CubicRoots r = cubic_roots(e);
        CHECK(std::abs(r.w1 - ref[0]) < 1e-9);
        CHECK(std::abs(r.w2 - ref[1]) < 1e-9);
        CHECK(std::abs(r.w3 - ref[2]) < 1e-9);
    }
}

TEST_CASE("near-collision of the upper roots as eps -> 0") {
    // 60-digit references; separation ~ 2.25 eps^(5/2).
    const CubicRoots a = cubic_roots(1e-4);
    CHECK(a.w2 == Approx(0.49992500926261167126).epsilon(1e-14));
    CHECK(a.w3 == Approx(0.49992500948757510221).epsilon(1e-14));
    CHECK((a.w3 - a.w2) == Approx(2.2496e-10).epsilon(1e-3));
    const CubicRoots b = cubic_roots(1e-6);
    CHECK(b.w2 < b.w3);
    CHECK(b.w3 < 0.5);
    CHECK(b.w1 == Approx(-1.0000017499992499928e-6).epsilon(1e-12));
}

TEST_CASE("root brackets across (0, 1]") {
    const double eh = epsilon_hat();
    for (int i = 0; i < 1000; ++i) {
        const double e = 1e-4 + (1.0 - 1e-4) * (i + 0.5) / 1000.0;
        const CubicRoots r = cubic_roots(e);
        REQUIRE(r.w1 < 0.0);
        REQUIRE(r.w1 < r.w2);
        REQUIRE(r.w2 < r.w3);
        REQUIRE(r.w3 > 1.0 / 3.0);
        REQUIRE(r.w3 < 0.5);
        if (e < eh) {
            REQUIRE(r.w2 > 0.125);
        } else if (e > eh) {
            REQUIRE(r.w2 > 0.0);
            REQUIRE(r.w2 < 0.125);
        }
        REQUIRE(discriminant_factor(e) > 0.0);
        const double scale = std::max(1.0, p_coefficients(e).a3);
        REQUIRE(std::abs(p_eval(r.w1, e)) <= 1e-10 * scale);
        REQUIRE(std::abs(p_eval(r.w2, e)) <= 1e-10 * scale);
        REQUIRE(std::abs(p_eval(r.w3, e)) <= 1e-10 * scale);
    }
    CHECK_THROWS_AS(cubic_roots(0.0), Error);
    CHECK_THROWS_AS(cubic_roots(1.1), Error);
}

TEST_CASE("separatrices") {
    CHECK(std::abs(separatrix_q1(1.0) - 49.0 / 64.0) < 1e-12);
    CHECK(std::abs(separatrix_q2(epsilon_hat() - 1e-4) - 1.0) < 1e-2);
    CHECK(std::abs(separatrix_q1(1e-4) - 0.75) < 1e-2);
    CHECK(std::abs(separatrix_q2(1e-4) - 0.75) < 1e-2);
    CHECK_THROWS_AS(separatrix_q2(epsilon_hat()), Error);
    CHECK_THROWS_AS(separatrix_q2(0.9), Error);
    CHECK_THROWS_AS(separatrix_q1(0.0), Error);
    try {
        separatrix_q2(0.8);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EpsilonAboveHat);
    }
    for (int i = 1; i < 200; ++i) {
        const double e = epsilon_hat() * i / 200.0;
        const double q1 = separatrix_q1(e), q2 = separatrix_q2(e);
        REQUIRE(q1 < q2);
        REQUIRE(q1 > 0.75);
        REQUIRE(q2 <= 1.0);
    }
}

TEST_CASE("classify examples") {
    CHECK_THROWS_AS(classify(1.0, 0.70), Error); // below 3/4: outside the parameter square
    CHECK(classify(1.0, 0.76) == RegionLabel::NodeBelow);
    CHECK(classify(1.0, 0.80) == RegionLabel::Focus);
    CHECK(classify(0.3, 0.9999) == RegionLabel::NodeAbove);
    CHECK(oracle::v_plus_sq_by_bisection(0.9999) < oracle::cubic_roots_by_bisection(0.3)[1]);
    CHECK(classify(1.0, 49.0 / 64.0) == RegionLabel::Separatrix1);
    CHECK(classify(0.5, separatrix_q2(0.5)) == RegionLabel::Separatrix2);
    CHECK_THROWS_AS(classify(0.0, 0.8), Error);
    CHECK_THROWS_AS(classify(0.5, 1.0), Error);
}

TEST_CASE("P-sign and separatrix routes agree on a 200x200 grid") {
    int counts[5] = {};
    for (int i = 0; i < 200; ++i) {
        const double e = 1e-6 + (1.0 - 1e-6) * i / 199.0;
        const double q1 = separatrix_q1(e);
        const double q2 = e < epsilon_hat() ? separatrix_q2(e) : 2.0;
        for (int j = 0; j < 200; ++j) {
            const double q = 0.75 + 1e-6 + (0.25 - 2e-6) * j / 199.0;
            if (std::abs(q - q1) < 1e-8 || std::abs(q - q2) < 1e-8) continue;
            const RegionLabel r = classify(e, q); // throws on disagreement
            const bool focus_by_sign = p_eval(v_plus_squared(q), e) < 0.0;
            REQUIRE(focus_by_sign == (r == RegionLabel::Focus));
            ++counts[static_cast<int>(r)];
        }
    }
    CHECK(counts[0] > 0);
    CHECK(counts[1] > 0);
    CHECK(counts[2] > 0);
}

TEST_CASE("sign of the linearization discriminant equals sign of P") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> v2d(0.0, 2.0), ed(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double v = std::sqrt(v2d(rng));
        const double e = 1.0 - ed(rng);
        const Kinematics k = kinematics_from_v(v);
        const Mat2 bs = b_sharp(k, e);
        const Mat2 a = lin_matrix(k);
        const double tr = (bs.adjugate() * a).trace();
        const double d = tr * tr - 4.0 * bs.det() * a.det();
        const double p = p_eval(v * v, e);
        if (std::abs(p) <= 1e-10) continue;
        REQUIRE((d > 0.0) == (p > 0.0));
        const double terms = tr * tr + 4.0 * std::abs(bs.det() * a.det());
        REQUIRE(std::abs(d - 9.0 / ((e - 4) * (e - 4)) * p) <= 1e-12 * terms);
    }
}

TEST_CASE("saddle and attractor spectra") {
    for (int i = 0; i < 30; ++i) {
        for (int j = 0; j < 30; ++j) {
            const double e = 0.01 + 0.99 * i / 29.0;
            const double q = 0.751 + 0.248 * j / 29.0;
            const EquilibriumPair r = rest_points(q);
            const Spectrum minus = local_spectrum(r.psi_minus, e);
            const Spectrum plus = local_spectrum(r.psi_plus, e);
            REQUIRE(minus.is_saddle());
            REQUIRE(plus.is_attractor());
            REQUIRE(plus.is_complex() == (classify(e, q) == RegionLabel::Focus));
        }
    }
    const Spectrum s = local_spectrum(rest_points(0.8).psi_plus, 1.0);
    CHECK(s.lambda1.imag() != 0.0);
    CHECK(s.lambda1.real() < 0.0);
}

TEST_CASE("local spectrum guards the singular locus") {
    // eps = 1: B# is singular at v = 0.
    CHECK_THROWS_AS(local_spectrum({1.0, 0.0}, 1.0), Error);
    const double v = std::sqrt((1.0 - 0.5) / 8.5);
    CHECK_THROWS_AS(local_spectrum(state_from_v(v), 0.5), Error);
}

TEST_CASE("finite-difference Jacobian gives the same node/focus split") {
    for (int i = 0; i < 25; ++i) {
        for (int j = 0; j < 25; ++j) {
            const double e = 0.02 + 0.98 * i / 24.0;
            const double q = 0.752 + 0.246 * j / 24.0;
            const RegionLabel r = classify(e, q);
            const double d = jacobian_discriminant_at_plus(e, q);
            REQUIRE((d < 0.0) == (r == RegionLabel::Focus));
        }
    }
}
