#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "wqd/linalg.hpp"
#include "wqd/maps.hpp"
#include "wqd/states.hpp"

namespace wqd::test {

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

// Uniform point on the Bloch sphere.
inline BlochAngles random_angles(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double theta = std::acos(1.0 - 2.0 * u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    return BlochAngles::canonical(theta, phi);
}

inline Pvm random_qubit_pvm(std::mt19937_64& rng) { return pvm_from_bloch(random_angles(rng)); }

// Hermitian matrix with standard normal entries.
inline ComplexMatrix random_hermitian(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(n(rng), n(rng));
    return 0.5 * (g + g.adjoint());
}

// Unitary from the QR factorization of a complex Gaussian matrix.
ComplexMatrix random_unitary(int dim, std::mt19937_64& rng);

// Explicit double-sum partial trace, kept independent of the library routine.
inline ComplexMatrix brute_partial_trace(const ComplexMatrix& m, int da, int db, Side traced) {
    const int keep = traced == Side::B ? da : db;
    ComplexMatrix out = ComplexMatrix::Zero(keep, keep);
    for (int a1 = 0; a1 < da; ++a1)
        for (int b1 = 0; b1 < db; ++b1)
            for (int a2 = 0; a2 < da; ++a2)
                for (int b2 = 0; b2 < db; ++b2) {
                    const Complex v = m(a1 * db + b1, a2 * db + b2);
                    if (traced == Side::B && b1 == b2) out(a1, a2) += v;
                    if (traced == Side::A && a1 == a2) out(b1, b2) += v;
                }
    return out;
}

// 0.5|psi><psi| + 0.3|0+><0+| + 0.2 I/4 with |psi> = 0.8|00> + 0.6i|11>.
// Reference values for it were computed offline with an independent dense
// grid + Nelder-Mead polish in numpy/scipy.
inline DensityMatrix reference_state() {
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(0) = 0.8;
    psi(3) = Complex(0.0, 0.6);
    Eigen::VectorXcd zp = Eigen::VectorXcd::Zero(4);
    zp(0) = r;
    zp(1) = r;
    ComplexMatrix rho = 0.5 * psi * psi.adjoint() + 0.3 * zp * zp.adjoint();
    rho += 0.05 * identity(4);
    return DensityMatrix(rho, 2, 2);
}

} // namespace wqd::test
