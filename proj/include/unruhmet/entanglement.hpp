#pragma once

#include "unruhmet/model.hpp"

namespace unruhmet {

/// The seven entries of an X-structured two-qubit state: diagonal plus the
/// two anti-diagonal coherences.
struct XStateView {
    double rho11;
    double rho22;
    double rho33;
    double rho44;
    Complex rho14;
    Complex rho23;
};

/// Extracts the X entries; throws NotXState if any entry outside the X
/// pattern has modulus >= 1e-10.
XStateView as_x_state(const DensityMatrix4& rho);

/// Concurrence of an X state,
/// 2 max{0, |rho14| - sqrt(rho22 rho33), |rho23| - sqrt(rho11 rho44)},
/// clamped to [0, 1].
double concurrence(const XStateView& x);

/// General Wootters concurrence from the spin-flipped spectrum; reference
/// route for the X-state shortcut.
double wootters_concurrence(const DensityMatrix4& rho);

} // namespace unruhmet
