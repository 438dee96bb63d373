#include "wqd/info.hpp"

#include <cmath>
#include <string>

#include "wqd/error.hpp"

namespace wqd {

namespace {

constexpr double kProbabilityTolerance = 1e-12;

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

} // namespace

JointDistribution::JointDistribution(Eigen::MatrixXd probs) : probs_(std::move(probs)) {
    if (probs_.size() == 0) throw ValidationError("JointDistribution: empty table");
    if (!probs_.allFinite()) throw ValidationError("JointDistribution: non-finite entry");
    if (probs_.minCoeff() < 0.0) throw ValidationError("JointDistribution: negative entry");
    if (std::abs(probs_.sum() - 1.0) > kProbabilityTolerance)
        throw ValidationError("JointDistribution: entries sum to " + std::to_string(probs_.sum()));
}

std::vector<double> JointDistribution::marginal_x() const {
    std::vector<double> out(static_cast<std::size_t>(probs_.rows()));
    for (Eigen::Index x = 0; x < probs_.rows(); ++x) out[static_cast<std::size_t>(x)] = probs_.row(x).sum();
    return out;
}

std::vector<double> JointDistribution::marginal_y() const {
    std::vector<double> out(static_cast<std::size_t>(probs_.cols()));
    for (Eigen::Index y = 0; y < probs_.cols(); ++y) out[static_cast<std::size_t>(y)] = probs_.col(y).sum();
    return out;
}

double shannon_entropy(std::span<const double> p) {
    double total = 0.0;
    double h = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("shannon_entropy: invalid probability " + std::to_string(v));
        total += v;
        h -= plogp(v);
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance)
        throw ValidationError("shannon_entropy: probabilities sum to " + std::to_string(total));
    return h > 0.0 ? h : 0.0;
}

double classical_mutual_info_i(const JointDistribution& j) {
    const auto px = j.marginal_x();
    const auto py = j.marginal_y();
    double hxy = 0.0;
    for (Eigen::Index x = 0; x < j.probs().rows(); ++x)
        for (Eigen::Index y = 0; y < j.probs().cols(); ++y) hxy -= plogp(j.probs()(x, y));
    return shannon_entropy(px) + shannon_entropy(py) - hxy;
}

double classical_mutual_info_j(const JointDistribution& j) {
    const auto px = j.marginal_x();
    const auto py = j.marginal_y();
    double conditional = 0.0;
    for (Eigen::Index y = 0; y < j.probs().cols(); ++y) {
        const double p_y = py[static_cast<std::size_t>(y)];
        if (p_y <= 0.0) continue;
        double h_given_y = 0.0;
        for (Eigen::Index x = 0; x < j.probs().rows(); ++x) h_given_y -= plogp(j.probs()(x, y) / p_y);
        conditional += p_y * h_given_y;
    }
    return shannon_entropy(px) - conditional;
}

double spectral_entropy(std::span<const double> eigenvalues) {
    double s = 0.0;
    for (double lambda : eigenvalues) {
        if (lambda < -kStateTolerance)
            throw ValidationError("von_neumann_entropy: negative eigenvalue " + std::to_string(lambda));
        s -= plogp(lambda);
    }
    return s > 0.0 ? s : 0.0;
}

double von_neumann_entropy(const ComplexMatrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw DimensionError("von_neumann_entropy: matrix must be square and non-empty");
    const Complex tr = m.trace();
    if (std::abs(tr - Complex(1.0, 0.0)) > 1e-9)
        throw ValidationError("von_neumann_entropy: trace is " + std::to_string(tr.real()));
    const auto ev = hermitian_eigenvalues(m);
    return spectral_entropy(ev);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double quantum_mutual_info(const DensityMatrix& rho) {
    return von_neumann_entropy(rho.marginal(Side::A)) + von_neumann_entropy(rho.marginal(Side::B)) -
           von_neumann_entropy(rho.matrix());
}

double mutual_info_gap(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.dim_a() != sigma.dim_a() || rho.dim_b() != sigma.dim_b())
        throw DimensionError("mutual_info_gap: states live on different spaces");
    return quantum_mutual_info(rho) - quantum_mutual_info(sigma);
}

} // namespace wqd
