#pragma once

#include <array>

#include "unruhmet/model.hpp"

namespace unruhmet {

/// Eigensystem of a DensityMatrix4. Eigenvalues are sorted descending and
/// paired with orthonormal eigenvectors; zero_mask marks eigenvalues that
/// are zero (analytically for model_spectrum, below 1e-12 for the numeric
/// solver).
struct SpectralData {
    std::array<double, 4> eigenvalues;
    std::array<Vector4c, 4> eigenvectors;
    std::array<bool, 4> zero_mask;

    Matrix4c reconstruct() const;
};

/// Hermitian solution L of (L rho + rho L)/2 = d rho/dT on the support.
struct SldMatrix {
    Matrix4c m;
};

// Eigenvalues below this are treated as zero when building the SLD and the
// numeric zero_mask.
inline constexpr double kSupportCutoff = 1e-12;

/// Closed-form eigensystem of the evolved state: values {alpha, beta,
/// gamma, 0} with eigenvectors {sin|01>+cos|10>, |00>, |11>,
/// cos|01>-sin|10>}, returned sorted descending (stable in that order on
/// ties). The mask marks the kernel vector always, beta when sin(theta)=0
/// or nu=0, and gamma when cos(theta)=0 or nu=0.
SpectralData model_spectrum(const ModelParams& params);

/// Full eigendecomposition by cyclic Jacobi rotations with a fixed rotation
/// order and sweep bound, so results are bit-reproducible. Eigenvalues
/// within 1e-12 outside [0,1] are clamped to the boundary. Throws
/// NotHermitian if the input exceeds a 1e-10 Hermiticity defect.
SpectralData numeric_eigensystem(const DensityMatrix4& rho);

/// Analytic d rho / dT of the evolved state; Hermitian and traceless.
Matrix4c state_derivative(const ModelParams& params);

/// Symmetric logarithmic derivative built in the eigenbasis:
/// L_mn = 2 <m|drho|n> / (p_m + p_n) where the denominator exceeds the
/// support cutoff, zero elsewhere (minimal-norm convention off the
/// support).
SldMatrix sld(const SpectralData& spectral, const Matrix4c& drho);

namespace detail {

/// Raw Jacobi eigensolver for a 4x4 Hermitian matrix; eigenvalues sorted
/// descending, no clamping. Exposed for tests and the fidelity routines.
template <typename Scalar>
void jacobi_hermitian(Eigen::Matrix<std::complex<Scalar>, 4, 4> a,
                      std::array<Scalar, 4>& eigenvalues,
                      Eigen::Matrix<std::complex<Scalar>, 4, 4>& eigenvectors);

/// Square root of a positive semidefinite matrix. Eigenvalues below
/// 64*eps*lambda_max are truncated to zero rather than square-rooted:
/// sqrt() would turn their rounding noise into sqrt(eps)-sized garbage.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4>
psd_sqrt(const Eigen::Matrix<std::complex<Scalar>, 4, 4>& m);

/// Singular values by one-sided Jacobi (fixed sweep order), sorted
/// descending. Unlike eigenvalues of B^H B, these carry only absolute
/// eps-level perturbations, which the fidelity routines rely on.
template <typename Scalar>
std::array<Scalar, 4>
singular_values(Eigen::Matrix<std::complex<Scalar>, 4, 4> b);

} // namespace detail

} // namespace unruhmet
