#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "shockprof/classification.hpp"
#include "shockprof/profile.hpp"

namespace shockprof {

/// Inclusive uniform grid lo, ..., hi with `count` >= 2 points.
struct Axis {
    double lo;
    double hi;
    std::size_t count;

    double at(std::size_t i) const;
};

inline constexpr double eps_floor = 1e-6;
inline constexpr double omega_margin = 1e-6;

/// Default axes covering the closure of the parameter square minus margins.
Axis default_eps_axis(std::size_t count);
Axis default_q_axis(std::size_t count);

struct ScanConfig {
    Axis eps;
    Axis q;
    bool shoot = false;
    ShootOptions shoot_options{};

    void validate() const;
};

struct ScanRecord {
    double eps;
    double q_tilde;
    RegionLabel region;
    double v_plus_sq;
    double p_value; // P(v+^2, eps); negative exactly on the focus region
    std::optional<Verdict> verdict;
    std::optional<bool> oscillatory;
};

/// One cell of the scan. Pure; safe to call concurrently.
ScanRecord scan_cell(double eps, double q_tilde, bool with_shoot, const ShootOptions& opts);

/// Row-major in (eps index, q index). The serial version is the reference the
/// OpenMP kernel is tested against; both produce identical records.
std::vector<ScanRecord> scan_serial(const ScanConfig& cfg);
std::vector<ScanRecord> scan_parallel(const ScanConfig& cfg);

using Polyline = std::vector<std::pair<double, double>>;

struct Separatrices {
    Polyline q1; // (eps, q1(eps)) on [eps_min, 1]
    Polyline q2; // (eps, q2(eps)) on [eps_min, epsilon_hat)
};

Separatrices separatrix_polylines(std::size_t samples, double eps_min = eps_floor);

} // namespace shockprof
