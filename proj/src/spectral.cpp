#include "unruhmet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace unruhmet {

namespace detail {

template <typename Scalar>
void jacobi_hermitian(Eigen::Matrix<std::complex<Scalar>, 4, 4> a,
                      std::array<Scalar, 4>& eigenvalues,
                      Eigen::Matrix<std::complex<Scalar>, 4, 4>& eigenvectors) {
    using Cplx = std::complex<Scalar>;
    using Mat = Eigen::Matrix<Cplx, 4, 4>;

    // Symmetrise once so rounding asymmetry in the input cannot drift.
    a = ((a + a.adjoint().eval()) / Scalar(2)).eval();

    Mat v = Mat::Identity();
    constexpr int kMaxSweeps = 30;
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar off_tol = Scalar(16) * eps * eps;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        Scalar off = Scalar(0);
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += std::norm(a(p, q));
        if (off <= off_tol) break;

        // Fixed cyclic order keeps runs bit-identical.
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                const Cplx g = a(p, q);
                const Scalar absg = std::abs(g);
                if (absg == Scalar(0)) continue;

                const Scalar app = a(p, p).real();
                const Scalar aqq = a(q, q).real();
                const Scalar tau = (aqq - app) / (Scalar(2) * absg);
                Scalar t;
                if (tau >= Scalar(0))
                    t = Scalar(1) / (tau + std::sqrt(Scalar(1) + tau * tau));
                else
                    t = Scalar(-1) / (-tau + std::sqrt(Scalar(1) + tau * tau));
                const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
                const Scalar s = t * c;
                const Cplx u = g / absg;
                const Cplx su = s * u;
                const Cplx su_conj = s * std::conj(u);

                // A <- R^H A R with R = I except
                // R(p,p) = c, R(p,q) = s u, R(q,p) = -s conj(u), R(q,q) = c;
                // chosen so the (p,q) entry is annihilated exactly.
                for (int k = 0; k < 4; ++k) {
                    if (k == p || k == q) continue;
                    const Cplx akp = a(k, p);
                    const Cplx akq = a(k, q);
                    a(k, p) = c * akp - su_conj * akq;
                    a(k, q) = su * akp + c * akq;
                    a(p, k) = std::conj(a(k, p));
                    a(q, k) = std::conj(a(k, q));
                }
                a(p, p) = c * c * app - Scalar(2) * c * s * absg + s * s * aqq;
                a(q, q) = s * s * app + Scalar(2) * c * s * absg + c * c * aqq;
                a(p, q) = Cplx(0);
                a(q, p) = Cplx(0);

                for (int k = 0; k < 4; ++k) {
                    const Cplx vkp = v(k, p);
                    const Cplx vkq = v(k, q);
                    v(k, p) = c * vkp - su_conj * vkq;
                    v(k, q) = su * vkp + c * vkq;
                }
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return a(i, i).real() > a(j, j).real();
    });

    for (int k = 0; k < 4; ++k) {
        eigenvalues[k] = a(order[k], order[k]).real();
        eigenvectors.col(k) = v.col(order[k]);
        // Canonical phase: largest-modulus component made real positive.
        int pivot = 0;
        Scalar best = Scalar(-1);
        for (int r = 0; r < 4; ++r) {
            const Scalar mag = std::abs(eigenvectors(r, k));
            if (mag > best) {
                best = mag;
                pivot = r;
            }
        }
        if (best > Scalar(0))
            eigenvectors.col(k) *= std::conj(eigenvectors(pivot, k)) / best;
    }
}

template void jacobi_hermitian<double>(
    Eigen::Matrix<std::complex<double>, 4, 4>, std::array<double, 4>&,
    Eigen::Matrix<std::complex<double>, 4, 4>&);
template void jacobi_hermitian<long double>(
    Eigen::Matrix<std::complex<long double>, 4, 4>,
    std::array<long double, 4>&,
    Eigen::Matrix<std::complex<long double>, 4, 4>&);

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, 4, 4>
psd_sqrt(const Eigen::Matrix<std::complex<Scalar>, 4, 4>& m) {
    std::array<Scalar, 4> values;
    Eigen::Matrix<std::complex<Scalar>, 4, 4> vectors;
    jacobi_hermitian<Scalar>(m, values, vectors);

    const Scalar floor =
        Scalar(64) * std::numeric_limits<Scalar>::epsilon() *
        std::max(values[0], Scalar(0));
    Eigen::Matrix<std::complex<Scalar>, 4, 4> out;
    out.setZero();
    for (int k = 0; k < 4; ++k)
        if (values[k] > floor)
            out += std::sqrt(values[k]) *
                   (vectors.col(k) * vectors.col(k).adjoint());
    return out;
}

template Eigen::Matrix<std::complex<double>, 4, 4>
psd_sqrt<double>(const Eigen::Matrix<std::complex<double>, 4, 4>&);
template Eigen::Matrix<std::complex<long double>, 4, 4>
psd_sqrt<long double>(const Eigen::Matrix<std::complex<long double>, 4, 4>&);

template <typename Scalar>
std::array<Scalar, 4>
singular_values(Eigen::Matrix<std::complex<Scalar>, 4, 4> b) {
    using Cplx = std::complex<Scalar>;
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    constexpr int kMaxSweeps = 40;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (int i = 0; i < 4; ++i) {
            for (int j = i + 1; j < 4; ++j) {
                const Scalar aii = b.col(i).squaredNorm();
                const Scalar ajj = b.col(j).squaredNorm();
                const Cplx aij = b.col(i).dot(b.col(j));
                const Scalar absaij = std::abs(aij);
                if (absaij == Scalar(0)) continue;
                if (absaij <= eps * std::sqrt(aii * ajj)) continue;
                rotated = true;

                const Scalar tau = (ajj - aii) / (Scalar(2) * absaij);
                Scalar t;
                if (tau >= Scalar(0))
                    t = Scalar(1) / (tau + std::sqrt(Scalar(1) + tau * tau));
                else
                    t = Scalar(-1) / (-tau + std::sqrt(Scalar(1) + tau * tau));
                const Scalar c = Scalar(1) / std::sqrt(Scalar(1) + t * t);
                const Scalar s = t * c;
                const Cplx u = aij / absaij;
                const Cplx su = s * u;
                const Cplx su_conj = s * std::conj(u);

                for (int k = 0; k < 4; ++k) {
                    const Cplx bi = b(k, i);
                    const Cplx bj = b(k, j);
                    b(k, i) = c * bi - su_conj * bj;
                    b(k, j) = su * bi + c * bj;
                }
            }
        }
        if (!rotated) break;
    }

    std::array<Scalar, 4> values;
    for (int k = 0; k < 4; ++k) values[k] = b.col(k).norm();
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

template std::array<double, 4>
singular_values<double>(Eigen::Matrix<std::complex<double>, 4, 4>);
template std::array<long double, 4>
singular_values<long double>(Eigen::Matrix<std::complex<long double>, 4, 4>);

} // namespace detail

Matrix4c SpectralData::reconstruct() const {
    Matrix4c out = Matrix4c::Zero();
    for (int k = 0; k < 4; ++k)
        out += eigenvalues[k] * (eigenvectors[k] * eigenvectors[k].adjoint());
    return out;
}

SpectralData model_spectrum(const ModelParams& params) {
    const double nu = params.nu();
    const double t = params.temperature();
    const StateCoefficients w =
        state_coefficients(params.theta, nu, params.omega, t);
    const double s = std::sin(params.theta.value());
    const double c = std::cos(params.theta.value());

    Vector4c kernel = Vector4c::Zero();
    kernel(k01) = c;
    kernel(k10) = -s;
    Vector4c e00 = Vector4c::Zero();
    e00(k00) = 1.0;
    Vector4c e11 = Vector4c::Zero();
    e11(k11) = 1.0;

    struct Entry {
        double value;
        Vector4c vector;
        bool zero;
    };
    const std::array<Entry, 4> canonical{
        Entry{w.alpha, probe_ket(params.theta), false},
        Entry{w.beta, e00, nu == 0.0 || s == 0.0},
        Entry{w.gamma, e11, nu == 0.0 || c == 0.0},
        Entry{0.0, kernel, true}};

    std::array<int, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
        return canonical[i].value > canonical[j].value;
    });

    SpectralData out;
    for (int k = 0; k < 4; ++k) {
        out.eigenvalues[k] = canonical[order[k]].value;
        out.eigenvectors[k] = canonical[order[k]].vector;
        out.zero_mask[k] = canonical[order[k]].zero;
    }
    return out;
}

SpectralData numeric_eigensystem(const DensityMatrix4& rho) {
    const double defect = rho.hermiticity_defect();
    if (defect > 1e-10)
        throw NotHermitian("hermiticity defect " + std::to_string(defect) +
                           " exceeds 1e-10");

    std::array<double, 4> values;
    Matrix4c vectors;
    detail::jacobi_hermitian<double>(rho.m, values, vectors);

    SpectralData out;
    for (int k = 0; k < 4; ++k) {
        double v = values[k];
        if (v < 0.0 && v >= -kSupportCutoff) v = 0.0;
        if (v > 1.0 && v <= 1.0 + kSupportCutoff) v = 1.0;
        out.eigenvalues[k] = v;
        out.eigenvectors[k] = vectors.col(k);
        out.zero_mask[k] = v < kSupportCutoff;
    }
    return out;
}

Matrix4c state_derivative(const ModelParams& params) {
    const double nu = params.nu();
    const double t = params.temperature();
    const StateCoefficientDerivatives d =
        state_coefficient_derivatives(params.theta, nu, params.omega, t);

    Matrix4c drho = d.dalpha * probe_state(params.theta).m;
    drho(k00, k00) += d.dbeta;
    drho(k11, k11) += d.dgamma;
    return drho;
}

SldMatrix sld(const SpectralData& spectral, const Matrix4c& drho) {
    Matrix4c basis;
    for (int k = 0; k < 4; ++k) basis.col(k) = spectral.eigenvectors[k];

    const Matrix4c w = basis.adjoint() * drho * basis;
    Matrix4c l_eig = Matrix4c::Zero();
    for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
            // Masked eigenvalues count as exact zeros, so analytic kernel
            // directions can never produce 0/0.
            const double pm = spectral.zero_mask[m] ? 0.0 : spectral.eigenvalues[m];
            const double pn = spectral.zero_mask[n] ? 0.0 : spectral.eigenvalues[n];
            const double denom = pm + pn;
            if (denom > kSupportCutoff) l_eig(m, n) = 2.0 * w(m, n) / denom;
        }
    }
    Matrix4c l = basis * l_eig * basis.adjoint();
    l = ((l + l.adjoint().eval()) / 2.0).eval();
    return SldMatrix{l};
}

} // namespace unruhmet
