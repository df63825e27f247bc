#pragma once

#include <random>

#include "unruhmet/model.hpp"

namespace unruhmet {

/// 53-bit uniform in [0, 1) built from raw engine output; sidesteps the
/// implementation-defined std::uniform_real_distribution so seeded streams
/// reproduce across toolchains.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Uniform draw over the reference parameter box: theta in [0, pi/2],
/// nu in [0, 0.3], Omega in [0.1, 10], T in [0.01, 10].
ModelParams draw_box_params(std::mt19937_64& rng);

/// Rejection-sampled draw over the estimation validity region: the box
/// restricted to nu >= 0.01, Omega/T in [0.2, 8], and every analytically
/// nonzero mixing weight >= 1e-6. Outside this region the temperature
/// imprint on the state sits at or below double-precision noise, where
/// finite-difference comparisons stop being meaningful.
ModelParams draw_validity_params(std::mt19937_64& rng);

} // namespace unruhmet
