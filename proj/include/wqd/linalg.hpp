#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace wqd {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Bipartite operators always use the A-then-B
// Kronecker ordering: basis index = i_a * dim_b + i_b.
using ComplexMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Side { A, B };

constexpr Side other(Side s) { return s == Side::A ? Side::B : Side::A; }

// Entrywise slack for the Hermiticity, trace and positivity contracts.
inline constexpr double kStateTolerance = 1e-10;
// Largest supported total Hilbert-space dimension (dim_a * dim_b).
inline constexpr int kMaxTotalDim = 64;

ComplexMatrix identity(int dim);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// kron(I, op) for Side::B, kron(op, I) for Side::A.
ComplexMatrix embed(const ComplexMatrix& op, Side side, int dim_a, int dim_b);

// Largest entrywise |M - M^dagger|.
double hermitian_deviation(const ComplexMatrix& m);

// Ascending real spectrum of a Hermitian matrix. Throws ValidationError when
// the input is not Hermitian within kStateTolerance.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Traces out `traced` from an operator on C^dim_a (x) C^dim_b.
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Side traced);

// Trace-one positive-semidefinite Hermitian operator with recorded subsystem
// dimensions. Immutable after construction.
class DensityMatrix {
public:
    // Validates shape, Hermiticity, unit trace and positivity.
    DensityMatrix(ComplexMatrix matrix, int dim_a, int dim_b);

    // Skips the spectral checks. Only for outputs of trace-preserving
    // completely positive maps applied to an already valid state.
    static DensityMatrix trusted(ComplexMatrix matrix, int dim_a, int dim_b);

    int dim_a() const noexcept { return dim_a_; }
    int dim_b() const noexcept { return dim_b_; }
    int dim() const noexcept { return dim_a_ * dim_b_; }
    int dim(Side side) const noexcept { return side == Side::A ? dim_a_ : dim_b_; }
    const ComplexMatrix& matrix() const noexcept { return matrix_; }

    // Reduced state on `kept`.
    ComplexMatrix marginal(Side kept) const;

private:
    struct Unchecked {};
    DensityMatrix(ComplexMatrix matrix, int dim_a, int dim_b, Unchecked);

    ComplexMatrix matrix_;
    int dim_a_;
    int dim_b_;
};

// Reduced matrix after tracing out `traced`; e.g. traced = B keeps A.
ComplexMatrix partial_trace(const DensityMatrix& rho, Side traced);

// Throws ValidationError unless `m` is a valid single-system state.
void validate_state_matrix(const ComplexMatrix& m);

// Ordered complete set of orthogonal projectors on one subsystem.
class Pvm {
public:
    explicit Pvm(std::vector<ComplexMatrix> projectors);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return projectors_.size(); }
    const ComplexMatrix& operator[](std::size_t i) const { return projectors_[i]; }
    const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }

    // Projectors onto the columns of a unitary, in column order.
    static Pvm from_basis(const ComplexMatrix& unitary);

private:
    std::vector<ComplexMatrix> projectors_;
    int dim_;
};

} // namespace wqd
