#pragma once

#include <cmath>
#include <random>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "unruhmet/model.hpp"
#include "unruhmet/sampling.hpp"
#include "unruhmet/spectral.hpp"

namespace testsupport {

inline constexpr double kPi = 3.1415926535897932384626433832795;
inline constexpr double kQuarterPi = 0.78539816339744830961566084581988;

// Reference point used throughout: theta = pi/4, nu = 0.1, Omega = 1,
// T = 1/ln 2 (so exp(-Omega/T) = 1/2).
inline constexpr double kRefTemperature = 1.4426950408889634;

inline unruhmet::ModelParams reference_params() {
    return unruhmet::ModelParams{
        unruhmet::ProbeAngle(kQuarterPi), unruhmet::DetectorGap(1.0),
        unruhmet::DirectNu{0.1}, unruhmet::Temperature{kRefTemperature}};
}

// Values frozen from the closed-form expressions at the reference point.
inline constexpr double kRefAlpha = 0.98522167487684742;
inline constexpr double kRefBeta = 0.0098522167487684748;
inline constexpr double kRefGamma = 0.0049261083743842391;
inline constexpr double kRefDalpha = -0.009327147252652563;
inline constexpr double kRefDbeta = 0.0046402557581946714;
inline constexpr double kRefDgamma = 0.0046868914944579367;
inline constexpr double kRefQfi = 0.0067330871532157166;
inline constexpr double kRefConcurrence = 0.97128853633129952;

// Independent eigensolver for cross-checking the Jacobi implementation.
inline void eigen_reference(const unruhmet::Matrix4c& m,
                            Eigen::Vector4d& values,
                            unruhmet::Matrix4c& vectors) {
    const Eigen::SelfAdjointEigenSolver<unruhmet::Matrix4c> solver(m);
    values = solver.eigenvalues().reverse();
    for (int k = 0; k < 4; ++k)
        vectors.col(k) = solver.eigenvectors().col(3 - k);
}

// Central finite difference of the evolved state in T.
inline unruhmet::Matrix4c fd_state_derivative(const unruhmet::ModelParams& params,
                                              double step) {
    unruhmet::ModelParams lo = params;
    unruhmet::ModelParams hi = params;
    const double t = params.temperature();
    lo.kinematics = unruhmet::Temperature{t - step};
    hi.kinematics = unruhmet::Temperature{t + step};
    return (unruhmet::evolved_state(hi).m - unruhmet::evolved_state(lo).m) /
           (2.0 * step);
}

inline double max_abs(const unruhmet::Matrix4c& m) {
    return m.cwiseAbs().maxCoeff();
}

} // namespace testsupport
