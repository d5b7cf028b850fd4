#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace shockprof::cli {

struct IdentityCheck {
    std::string name;
    double max_error = 0.0; // max relative error (or violation count for sign/positivity checks)
    double tolerance = 0.0;
    std::size_t samples = 0;

    bool passed() const { return max_error <= tolerance; }
};

/// Sampled identity suite behind `shockprof verify`. Deterministic for a seed.
std::vector<IdentityCheck> run_identity_suite(std::size_t samples = 10000, std::uint64_t seed = 20240521);

} // namespace shockprof::cli
