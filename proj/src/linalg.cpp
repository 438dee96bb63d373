#include "wqd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "wqd/error.hpp"

namespace wqd {

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix embed(const ComplexMatrix& op, Side side, int dim_a, int dim_b) {
    const int expected = side == Side::A ? dim_a : dim_b;
    if (op.rows() != expected || op.cols() != expected)
        throw DimensionError("embed: operator is " + std::to_string(op.rows()) + "x" +
                             std::to_string(op.cols()) + ", subsystem has dimension " +
                             std::to_string(expected));
    return side == Side::A ? kron(op, identity(dim_b)) : kron(identity(dim_a), op);
}

double hermitian_deviation(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) return INFINITY;
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionError("hermitian_eigenvalues: matrix must be square and non-empty");
    const double dev = hermitian_deviation(m);
    if (!(dev <= kStateTolerance))
        throw ValidationError("hermitian_eigenvalues: matrix is not Hermitian (deviation " +
                              std::to_string(dev) + ")");
    // Symmetrize so that sub-tolerance noise does not leak into the solver.
    const Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ValidationError("hermitian_eigenvalues: eigensolver did not converge");
    const auto& ev = solver.eigenvalues();
    std::vector<double> out(ev.data(), ev.data() + ev.size());
    std::sort(out.begin(), out.end());
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b, Side traced) {
    if (dim_a <= 0 || dim_b <= 0 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
        throw DimensionError("partial_trace: matrix size " + std::to_string(m.rows()) +
                             " does not match " + std::to_string(dim_a) + "x" +
                             std::to_string(dim_b));
    if (traced == Side::B) {
        ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j)
                for (int k = 0; k < dim_b; ++k)
                    out(i, j) += m(i * dim_b + k, j * dim_b + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_b; ++i)
        for (int j = 0; j < dim_b; ++j)
            for (int k = 0; k < dim_a; ++k)
                out(i, j) += m(k * dim_b + i, k * dim_b + j);
    return out;
}

void validate_state_matrix(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionError("state matrix must be square and non-empty");
    const double dev = hermitian_deviation(m);
    if (!(dev <= kStateTolerance))
        throw ValidationError("state is not Hermitian (deviation " + std::to_string(dev) + ")");
    const Complex tr = m.trace();
    if (!(std::abs(tr - Complex(1.0, 0.0)) <= kStateTolerance))
        throw ValidationError("state trace is " + std::to_string(tr.real()) + ", expected 1");
    const auto ev = hermitian_eigenvalues(m);
    if (ev.front() < -kStateTolerance)
        throw ValidationError("state has negative eigenvalue " + std::to_string(ev.front()));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, int dim_a, int dim_b, Unchecked)
    : matrix_(std::move(matrix)), dim_a_(dim_a), dim_b_(dim_b) {
    if (dim_a_ <= 0 || dim_b_ <= 0)
        throw DimensionError("DensityMatrix: subsystem dimensions must be positive");
    if (dim_a_ * dim_b_ > kMaxTotalDim)
        throw DimensionError("DensityMatrix: total dimension " + std::to_string(dim_a_ * dim_b_) +
                             " exceeds " + std::to_string(kMaxTotalDim));
    if (matrix_.rows() != dim_a_ * dim_b_ || matrix_.cols() != dim_a_ * dim_b_)
        throw DimensionError("DensityMatrix: matrix is " + std::to_string(matrix_.rows()) + "x" +
                             std::to_string(matrix_.cols()) + ", dimensions give " +
                             std::to_string(dim_a_ * dim_b_));
}

DensityMatrix::DensityMatrix(ComplexMatrix matrix, int dim_a, int dim_b)
    : DensityMatrix(std::move(matrix), dim_a, dim_b, Unchecked{}) {
    validate_state_matrix(matrix_);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix matrix, int dim_a, int dim_b) {
    return DensityMatrix(std::move(matrix), dim_a, dim_b, Unchecked{});
}

ComplexMatrix DensityMatrix::marginal(Side kept) const {
    return partial_trace(matrix_, dim_a_, dim_b_, other(kept));
}

ComplexMatrix partial_trace(const DensityMatrix& rho, Side traced) {
    return partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), traced);
}

Pvm::Pvm(std::vector<ComplexMatrix> projectors) : projectors_(std::move(projectors)), dim_(0) {
    if (projectors_.empty()) throw ValidationError("Pvm: no projectors");
    dim_ = static_cast<int>(projectors_.front().rows());
    ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
    for (const auto& p : projectors_) {
        if (p.rows() != dim_ || p.cols() != dim_)
            throw DimensionError("Pvm: projectors have inconsistent sizes");
        sum += p;
    }
    if ((sum - identity(dim_)).cwiseAbs().maxCoeff() > kStateTolerance)
        throw ValidationError("Pvm: projectors do not sum to the identity");
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        if (hermitian_deviation(projectors_[i]) > kStateTolerance)
            throw ValidationError("Pvm: projector " + std::to_string(i) + " is not Hermitian");
        for (std::size_t j = 0; j < projectors_.size(); ++j) {
            const ComplexMatrix prod = projectors_[i] * projectors_[j];
            const double err = i == j ? (prod - projectors_[i]).cwiseAbs().maxCoeff()
                                      : prod.cwiseAbs().maxCoeff();
            if (err > kStateTolerance)
                throw ValidationError("Pvm: projectors " + std::to_string(i) + "," +
                                      std::to_string(j) + " violate P_i P_j = delta_ij P_i");
        }
    }
}

Pvm Pvm::from_basis(const ComplexMatrix& unitary) {
    if (unitary.rows() != unitary.cols())
        throw DimensionError("Pvm::from_basis: basis matrix must be square");
    std::vector<ComplexMatrix> ps;
    ps.reserve(static_cast<std::size_t>(unitary.cols()));
    for (Eigen::Index k = 0; k < unitary.cols(); ++k)
        ps.emplace_back(unitary.col(k) * unitary.col(k).adjoint());
    return Pvm(std::move(ps));
}

} // namespace wqd
