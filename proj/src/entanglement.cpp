#include "unruhmet/entanglement.hpp"

#include <algorithm>
#include <cmath>

#include "unruhmet/spectral.hpp"

namespace unruhmet {

namespace {

double clamped_sqrt(double product) {
    // Rounding can push tiny products slightly negative.
    return product > 0.0 ? std::sqrt(product) : 0.0;
}

} // namespace

XStateView as_x_state(const DensityMatrix4& rho) {
    static constexpr std::pair<int, int> kOffPattern[] = {
        {0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (const auto& [i, j] : kOffPattern) {
        if (std::abs(rho.m(i, j)) >= 1e-10 || std::abs(rho.m(j, i)) >= 1e-10)
            throw NotXState("entry (" + std::to_string(i + 1) + "," +
                            std::to_string(j + 1) + ") breaks the X pattern");
    }
    return XStateView{rho.m(0, 0).real(), rho.m(1, 1).real(),
                      rho.m(2, 2).real(), rho.m(3, 3).real(),
                      rho.m(0, 3), rho.m(1, 2)};
}

double concurrence(const XStateView& x) {
    const double c1 = std::abs(x.rho14) - clamped_sqrt(x.rho22 * x.rho33);
    const double c2 = std::abs(x.rho23) - clamped_sqrt(x.rho11 * x.rho44);
    const double c = 2.0 * std::max({0.0, c1, c2});
    return std::clamp(c, 0.0, 1.0);
}

double wootters_concurrence(const DensityMatrix4& rho) {
    using Matrix4cl = Eigen::Matrix<std::complex<long double>, 4, 4>;

    // sigma_y (x) sigma_y in the (|00>,|01>,|10>,|11>) ordering.
    Matrix4cl flip = Matrix4cl::Zero();
    flip(0, 3) = -1.0L;
    flip(1, 2) = 1.0L;
    flip(2, 1) = 1.0L;
    flip(3, 0) = -1.0L;

    Matrix4cl input;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            input(i, j) = std::complex<long double>(rho.m(i, j).real(),
                                                    rho.m(i, j).imag());

    // rho_tilde is positive semidefinite, so the sorted square roots of the
    // rho*rho_tilde spectrum are the singular values of
    // sqrt(rho_tilde) sqrt(rho). Extended precision keeps weights near the
    // square-root truncation floor from biasing the comparison.
    const Matrix4cl rho_tilde = flip * input.conjugate() * flip;
    const Matrix4cl b = detail::psd_sqrt<long double>(rho_tilde) *
                        detail::psd_sqrt<long double>(input);
    const std::array<long double, 4> lambdas =
        detail::singular_values<long double>(b);

    const double c =
        static_cast<double>(lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
    return std::clamp(c, 0.0, 1.0);
}

} // namespace unruhmet
