#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shockprof/profile.hpp"
#include "shockprof/sweep.hpp"

namespace shockprof::cli {

/// "%.17g": round-trip exact and byte-stable across runs.
std::string fmt17(double x);

void write_scan_csv(std::ostream& os, const ScanConfig& cfg, const std::vector<ScanRecord>& records,
                    const Separatrices& curves);
void write_scan_json(std::ostream& os, const ScanConfig& cfg, const std::vector<ScanRecord>& records,
                     const Separatrices& curves);
void write_scan_svg(std::ostream& os, const ScanConfig& cfg, const std::vector<ScanRecord>& records,
                    const Separatrices& curves);

void write_trajectory_csv(std::ostream& os, const ProfileResult& result);
void write_profile_summary(std::ostream& os, double eps, double q_tilde, const ProfileResult& result,
                           const std::string& prefix);

} // namespace shockprof::cli
