#include "shockprof/sweep.hpp"

#include <exception>
#include <string>

#include "shockprof/equilibria.hpp"
#include "shockprof/errors.hpp"

namespace shockprof {

double Axis::at(std::size_t i) const {
    if (i + 1 == count) return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

Axis default_eps_axis(std::size_t count) { return {eps_floor, 1.0, count}; }

Axis default_q_axis(std::size_t count) { return {0.75 + omega_margin, 1.0 - omega_margin, count}; }

void ScanConfig::validate() const {
    auto bad = [](const std::string& msg) { throw Error(ErrorCode::ParamsOutOfOmega, msg); };
    if (eps.count < 2 || q.count < 2) bad("grid counts must be >= 2");
    if (!(eps.lo >= eps_floor && eps.hi <= 1.0 && eps.lo <= eps.hi)) bad("eps range must lie in [1e-6, 1]");
    if (!(q.lo >= 0.75 + omega_margin && q.hi <= 1.0 - omega_margin && q.lo <= q.hi)) {
        bad("q range must lie in [0.75 + 1e-6, 1 - 1e-6]");
    }
    if (shoot) shoot_options.validate();
}

ScanRecord scan_cell(double eps, double q_tilde, bool with_shoot, const ShootOptions& opts) {
    const double z = v_plus_squared(q_tilde);
    ScanRecord rec{eps, q_tilde, classify(eps, q_tilde), z, p_eval(z, eps), std::nullopt, std::nullopt};
    if (with_shoot) {
        const ProfileResult r = shoot(eps, q_tilde, opts);
        rec.verdict = r.verdict;
        rec.oscillatory = r.oscillation.oscillatory;
    }
    return rec;
}

std::vector<ScanRecord> scan_serial(const ScanConfig& cfg) {
    cfg.validate();
    std::vector<ScanRecord> out;
    out.reserve(cfg.eps.count * cfg.q.count);
    for (std::size_t i = 0; i < cfg.eps.count; ++i) {
        for (std::size_t j = 0; j < cfg.q.count; ++j) {
            out.push_back(scan_cell(cfg.eps.at(i), cfg.q.at(j), cfg.shoot, cfg.shoot_options));
        }
    }
    return out;
}

std::vector<ScanRecord> scan_parallel(const ScanConfig& cfg) {
    cfg.validate();
    const std::size_t n_eps = cfg.eps.count, n_q = cfg.q.count;
    const std::size_t n = n_eps * n_q;
    std::vector<ScanRecord> out(n);
    std::vector<std::exception_ptr> errors(n);

    const auto total = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long idx = 0; idx < total; ++idx) {
        const auto k = static_cast<std::size_t>(idx);
        try {
            out[k] = scan_cell(cfg.eps.at(k / n_q), cfg.q.at(k % n_q), cfg.shoot, cfg.shoot_options);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    // Rethrow the first failure in grid order so the error is deterministic.
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

Separatrices separatrix_polylines(std::size_t samples, double eps_min) {
    Separatrices s;
    if (samples < 2) samples = 2;
    const double eh = epsilon_hat();
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
        const double e1 = eps_min + (1.0 - eps_min) * t;
        s.q1.emplace_back(e1, separatrix_q1(e1));
        // Stop the q2 curve one sample short of epsilon_hat, where it reaches q = 1.
        const double e2 = eps_min + (eh - eps_min) * t;
        if (e2 < eh) s.q2.emplace_back(e2, separatrix_q2(e2));
    }
    return s;
}

} // namespace shockprof
