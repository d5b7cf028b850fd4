#include "shockprof/profile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "shockprof/classification.hpp"
#include "shockprof/errors.hpp"

namespace shockprof {

namespace {

enum class FieldStatus { Ok, OutsideDomain, Singular };

/// Profile ODE right-hand side with the flux constants fixed.
struct ProfileField {
    double eps;
    double q0;
    double q1;
    double singular_sign; // sign of (eps + 8) v^2 + eps - 1 on the starting side

    FieldStatus eval(Vec2 p, Vec2& out) const {
        const GodunovState psi = GodunovState::from(p);
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !psi.in_domain()) {
            return FieldStatus::OutsideDomain;
        }
        const Kinematics k = kinematics(psi);
        if (singular_sign != 0.0 && singular_factor(k.v) * singular_sign <= 0.0) {
            return FieldStatus::Singular;
        }
        const double v2 = k.v * k.v;
        if (std::abs(singular_factor(k.v)) <= 1e-12 * ((eps + 8.0) * v2 + 1.0)) return FieldStatus::Singular;
        // Entrywise det B# cancels for small eps; B# only depends on (u, v).
        const Mat2 bs = b_sharp(k, eps);
        const double det = closed_form::det_b_sharp(k.v, eps);
        const double t2 = k.theta * k.theta;
        const double t4 = t2 * t2;
        const Vec2 f{-(4.0 / 3.0) * t4 * k.v * k.u + q0,
                     t4 * ((4.0 / 3.0) * k.v * k.v + 1.0 / 3.0) - q1};
        out = (1.0 / det) * (bs.adjugate() * f);
        return FieldStatus::Ok;
    }

    double singular_factor(double v) const { return (eps + 8.0) * v * v + eps - 1.0; }
};

ProfileField make_field(double eps, double q_tilde) {
    const ShockParams sp = shock_params(q_tilde);
    if (!(eps > 0.0 && eps <= 1.0)) {
        throw Error(ErrorCode::EpsilonOutOfRange, "eps = " + std::to_string(eps) + " not in (0,1]");
    }
    return {eps, sp.q0, sp.q1, 0.0};
}

Mat2 jacobian_of(ProfileField field, Vec2 p, double step) {
    // Keep the whole stencil on the centre's side of the singular locus,
    // shrinking it when the centre sits close to the locus.
    field.singular_sign = std::copysign(1.0, field.singular_factor(kinematics(GodunovState::from(p)).v));
    double h = step * std::max(1.0, p.norm());
    for (int attempt = 0; attempt < 4; ++attempt, h *= 0.1) {
        Vec2 fxp, fxm, fyp, fym;
        const bool ok = field.eval(p + Vec2{h, 0.0}, fxp) == FieldStatus::Ok &&
                        field.eval(p - Vec2{h, 0.0}, fxm) == FieldStatus::Ok &&
                        field.eval(p + Vec2{0.0, h}, fyp) == FieldStatus::Ok &&
                        field.eval(p - Vec2{0.0, h}, fym) == FieldStatus::Ok;
        if (!ok) continue;
        const double inv = 1.0 / (2.0 * h);
        return {(fxp.x - fxm.x) * inv, (fyp.x - fym.x) * inv,
                (fxp.y - fxm.y) * inv, (fyp.y - fym.y) * inv};
    }
    throw Error(ErrorCode::SingularBsharp, "finite-difference stencil touches the singular locus");
}

// Dormand-Prince 5(4) tableau with Hairer's dense-output coefficients.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
} // namespace dp

/// Continuous extension over one accepted step.
struct DenseStep {
    Vec2 r1, r2, r3, r4, r5;

    Vec2 at(double s) const {
        return r1 + s * (r2 + (1.0 - s) * (r3 + s * (r4 + (1.0 - s) * r5)));
    }
};

struct StepOutcome {
    FieldStatus status = FieldStatus::Ok;
    Vec2 y_new;
    Vec2 k7;
    double err_ratio = 0.0;
    DenseStep dense;
};

StepOutcome dp_step(const ProfileField& f, Vec2 y, Vec2 k1, double h, double rtol, double atol) {
    using namespace dp;
    StepOutcome out;
    Vec2 k2, k3, k4, k5, k6;
    auto stage = [&](Vec2 arg, Vec2& k) {
        out.status = f.eval(arg, k);
        return out.status == FieldStatus::Ok;
    };
    if (!stage(y + (h * a21) * k1, k2)) return out;
    if (!stage(y + h * (a31 * k1 + a32 * k2), k3)) return out;
    if (!stage(y + h * (a41 * k1 + a42 * k2 + a43 * k3), k4)) return out;
    if (!stage(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5)) return out;
    if (!stage(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6)) return out;
    const Vec2 y5 = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    Vec2 k7;
    if (!stage(y5, k7)) return out;

    const Vec2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double scale = rtol * std::max(y.norm(), y5.norm()) + atol;
    out.err_ratio = err.norm() / scale;
    out.y_new = y5;
    out.k7 = k7;

    const Vec2 r2 = y5 - y;
    const Vec2 r3 = h * k1 - r2;
    const Vec2 r4 = r2 - h * k7 - r3;
    const Vec2 r5 = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
    out.dense = {y, r2, r3, r4, r5};
    return out;
}

/// First s in (0, 1] where |y(s) - center| <= radius, by scanning then bisection.
double locate_capture(const DenseStep& d, Vec2 center, double radius) {
    constexpr int scan = 32;
    double lo = 0.0, hi = 1.0;
    for (int i = 1; i <= scan; ++i) {
        const double s = static_cast<double>(i) / scan;
        if ((d.at(s) - center).norm() <= radius) {
            hi = s;
            break;
        }
        lo = s;
    }
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((d.at(mid) - center).norm() <= radius) hi = mid; else lo = mid;
    }
    return hi;
}

ProfileSample make_sample(double t, Vec2 p) {
    const GodunovState psi = GodunovState::from(p);
    return {t, psi, kinematics(psi)};
}

} // namespace

Vec2 vector_field(GodunovState psi, double eps, double q_tilde) {
    const ProfileField field = make_field(eps, q_tilde);
    const Kinematics k = kinematics(psi);
    Vec2 out;
    if (field.eval(psi.vec(), out) != FieldStatus::Ok) {
        throw Error(ErrorCode::SingularBsharp, "B# is singular at v = " + std::to_string(k.v));
    }
    return out;
}

Mat2 field_jacobian(GodunovState psi, double eps, double q_tilde, double step) {
    return jacobian_of(make_field(eps, q_tilde), psi.vec(), step);
}

double jacobian_discriminant_at_plus(double eps, double q_tilde) {
    const EquilibriumPair rest = rest_points(q_tilde);
    const Mat2 j = field_jacobian(rest.psi_plus, eps, q_tilde);
    return j.trace() * j.trace() - 4.0 * j.det();
}

Vec2 unstable_direction(double eps, double q_tilde) {
    const EquilibriumPair rest = rest_points(q_tilde);
    const Mat2 j = field_jacobian(rest.psi_minus, eps, q_tilde);
    const Spectrum s = spectrum_of(j);
    if (!(s.det < 0.0)) {
        throw Error(ErrorCode::NotASaddle, "eigenvalue product at psi_minus is " + std::to_string(s.det));
    }
    const double lambda = s.lambda1.real();
    // Null vector of (J - lambda I); take the better-conditioned row.
    const Vec2 from_row1{j.b, lambda - j.a};
    const Vec2 from_row2{lambda - j.d, j.c};
    Vec2 dir = from_row1.norm() >= from_row2.norm() ? from_row1 : from_row2;
    dir = (1.0 / dir.norm()) * dir;
    // dv is proportional to psi0 * d1 - psi1 * d0.
    const GodunovState pm = rest.psi_minus;
    if (pm.psi0 * dir.y - pm.psi1 * dir.x > 0.0) dir = -1.0 * dir;
    return dir;
}

void ShootOptions::validate() const {
    const bool positive = offset > 0.0 && rel_tol > 0.0 && abs_tol > 0.0 && capture_radius > 0.0 &&
                          escape_radius > 0.0 && max_pseudo_time > 0.0 && max_steps > 0;
    if (!positive || !(capture_radius < escape_radius)) {
        throw Error(ErrorCode::InvalidOptions,
                    "shoot options must be positive with capture_radius < escape_radius");
    }
}

const char* to_string(Verdict v) {
    switch (v) {
    case Verdict::ConvergedToPlus: return "ConvergedToPlus";
    case Verdict::Escaped: return "Escaped";
    case Verdict::Stalled: return "Stalled";
    case Verdict::HitSingularLocus: return "HitSingularLocus";
    }
    return "Unknown";
}

double ProfileResult::final_distance() const {
    return (endpoint().psi.vec() - rest.psi_plus.vec()).norm();
}

ProfileResult shoot_branch(double eps, double q_tilde, int sign, const ShootOptions& opts) {
    opts.validate();
    ProfileResult result;
    result.rest = rest_points(q_tilde);
    result.branch = sign >= 0 ? +1 : -1;
    ProfileField field = make_field(eps, q_tilde);

    const Vec2 plus = result.rest.psi_plus.vec();
    const Vec2 minus = result.rest.psi_minus.vec();
    const double amp = (minus - plus).norm();
    result.amplitude = amp;
    const double capture = opts.capture_radius * amp;
    const double escape = opts.escape_radius * amp;

    const Vec2 dir = static_cast<double>(result.branch) * unstable_direction(eps, q_tilde);
    Vec2 y = minus + (opts.offset * amp) * dir;
    field.singular_sign = std::copysign(1.0, field.singular_factor(kinematics(GodunovState::from(y)).v));

    Vec2 k1;
    if (field.eval(y, k1) != FieldStatus::Ok) {
        throw Error(ErrorCode::SingularBsharp, "initial point lies on the singular locus");
    }
    double max_field = k1.norm();
    double t = 0.0;
    double h = std::min(1.0, 1e-2 * amp / std::max(max_field, std::numeric_limits<double>::min()));
    result.samples.push_back(make_sample(t, y));

    const double h_min_rel = 1e-14;
    FieldStatus last_failure = FieldStatus::Ok;
    for (;;) {
        if (t >= opts.max_pseudo_time || result.steps >= opts.max_steps) {
            result.verdict = Verdict::Stalled;
            break;
        }
        h = std::min(h, opts.max_pseudo_time - t);
        if (h <= h_min_rel * std::max(1.0, t)) {
            result.verdict = last_failure == FieldStatus::Singular ? Verdict::HitSingularLocus : Verdict::Escaped;
            break;
        }
        const StepOutcome step = dp_step(field, y, k1, h, opts.rel_tol, opts.abs_tol);
        if (step.status != FieldStatus::Ok) {
            last_failure = step.status;
            h *= 0.25;
            ++result.rejected;
            continue;
        }
        if (step.err_ratio > 1.0) {
            h *= std::max(0.2, 0.9 * std::pow(step.err_ratio, -0.2));
            ++result.rejected;
            continue;
        }
        last_failure = FieldStatus::Ok;
        ++result.steps;

        const double dist = (step.y_new - plus).norm();
        if (dist <= capture) {
            const double s = locate_capture(step.dense, plus, capture);
            const Vec2 y_cap = step.dense.at(s);
            Vec2 f_cap;
            const bool residual_ok = field.eval(y_cap, f_cap) == FieldStatus::Ok &&
                                     f_cap.norm() <= 1e-6 * max_field;
            if (residual_ok) {
                if (s > 0.0) result.samples.push_back(make_sample(t + s * h, y_cap));
                result.verdict = Verdict::ConvergedToPlus;
                break;
            }
        }

        t += h;
        y = step.y_new;
        k1 = step.k7;
        max_field = std::max(max_field, k1.norm());
        result.samples.push_back(make_sample(t, y));

        if (dist > escape) {
            result.verdict = Verdict::Escaped;
            break;
        }
        const double factor = step.err_ratio > 0.0 ? 0.9 * std::pow(step.err_ratio, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }

    if (result.samples.size() >= 3) {
        result.oscillation = oscillation_report(result.samples, result.rest.psi_plus);
    }
    return result;
}

ProfileResult shoot(double eps, double q_tilde, const ShootOptions& opts) {
    ProfileResult preferred = shoot_branch(eps, q_tilde, +1, opts);
    if (preferred.verdict != Verdict::Escaped || !opts.two_sided) return preferred;
    ProfileResult flipped = shoot_branch(eps, q_tilde, -1, opts);
    return flipped.verdict == Verdict::ConvergedToPlus ? flipped : preferred;
}

// ---------------------------------------------------------------------------

namespace {

ComponentStats component_stats(std::span<const double> xs, double limit) {
    ComponentStats st;
    const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    const double amplitude = std::max(*mx, limit) - std::min(*mn, limit);
    if (!(amplitude > 0.0)) return st;
    const double floor = 1e-10 * amplitude;

    // Turning points with hysteresis `floor`.
    int dir = 0;
    double ref = xs.front();
    for (double x : xs.subspan(1)) {
        if (dir == 0) {
            if (x - ref > floor) { dir = +1; ref = x; }
            else if (ref - x > floor) { dir = -1; ref = x; }
        } else if (dir > 0) {
            if (x > ref) ref = x;
            else if (ref - x > floor) { ++st.extrema; dir = -1; ref = x; }
        } else {
            if (x < ref) ref = x;
            else if (x - ref > floor) { ++st.extrema; dir = +1; ref = x; }
        }
    }

    int last_sign = 0;
    for (double x : xs) {
        const double d = x - limit;
        if (std::abs(d) <= floor) continue;
        const int s = d > 0.0 ? 1 : -1;
        if (last_sign != 0 && s != last_sign) ++st.sign_changes;
        last_sign = s;
    }
    return st;
}

} // namespace

bool OscillationReport::oscillatory_in_all() const {
    return std::all_of(systems.begin(), systems.end(), [](const auto& s) { return s.oscillatory; });
}

const CoordinateReport& OscillationReport::system(const std::string& name) const {
    for (const auto& s : systems) {
        if (s.system == name) return s;
    }
    throw std::out_of_range("no coordinate system " + name);
}

OscillationReport oscillation_report(std::span<const ProfileSample> samples, GodunovState psi_plus) {
    if (samples.size() < 3) {
        throw Error(ErrorCode::TooFewSamples, "need at least 3 samples, got " + std::to_string(samples.size()));
    }
    const Kinematics lim = kinematics(psi_plus);
    const std::size_t n = samples.size();
    std::vector<double> buf(n);

    auto fill = [&](auto&& get) {
        for (std::size_t i = 0; i < n; ++i) buf[i] = get(samples[i]);
        return std::span<const double>(buf);
    };

    OscillationReport rep;
    rep.systems[0] = {"psi", {"psi0", "psi1"}};
    rep.systems[1] = {"theta_v", {"theta", "v"}};
    rep.systems[2] = {"u_v", {"u", "v"}};

    rep.systems[0].stats[0] = component_stats(fill([](const ProfileSample& s) { return s.psi.psi0; }), psi_plus.psi0);
    rep.systems[0].stats[1] = component_stats(fill([](const ProfileSample& s) { return s.psi.psi1; }), psi_plus.psi1);
    rep.systems[1].stats[0] = component_stats(fill([](const ProfileSample& s) { return s.kin.theta; }), lim.theta);
    rep.systems[1].stats[1] = component_stats(fill([](const ProfileSample& s) { return s.kin.v; }), lim.v);
    rep.systems[2].stats[0] = component_stats(fill([](const ProfileSample& s) { return s.kin.u; }), lim.u);
    rep.systems[2].stats[1] = rep.systems[1].stats[1];

    for (auto& sys : rep.systems) {
        sys.oscillatory = std::any_of(sys.stats.begin(), sys.stats.end(),
                                      [](const ComponentStats& c) { return c.sign_changes >= 2; });
        rep.oscillatory = rep.oscillatory || sys.oscillatory;
    }
    return rep;
}

} // namespace shockprof
